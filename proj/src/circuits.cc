// Copyright 2026 The qkc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkc/circuits.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "qkc/error.h"

namespace qkc {

std::string_view variant_name(Variant variant) {
    return variant == Variant::Htc ? "htc" : "stc";
}

void ClassifierSpec::validate() const {
    if (copies < 1) {
        throw Error(ErrorCode::InvalidSpec, "copies must be at least 1");
    }
    if (variant == Variant::Htc && copies != 1) {
        throw Error(ErrorCode::InvalidSpec, "the Hadamard-test classifier uses exactly one copy");
    }
    if (label_width < 1) {
        throw Error(ErrorCode::InvalidSpec, "label width must be at least 1");
    }
    if (!std::isfinite(angles.theta0) || !std::isfinite(angles.theta1) || !std::isfinite(angles.phi)) {
        throw Error(ErrorCode::InvalidSpec, "angles must be finite");
    }
}

LabeledDataset LabeledDataset::uniform(std::vector<QuantumState> training, std::vector<int> labels,
                                       QuantumState test) {
    const std::size_t m = training.size();
    std::vector<double> weights(m, m == 0 ? 0.0 : 1.0 / static_cast<double>(m));
    return LabeledDataset{std::move(training), std::move(labels), std::move(weights), std::move(test)};
}

int LabeledDataset::data_qubits() const {
    return num_qubits(test);
}

bool LabeledDataset::all_pure() const {
    return is_pure(test) && std::all_of(training.begin(), training.end(), [](const QuantumState &s) {
               return is_pure(s);
           });
}

void LabeledDataset::validate() const {
    if (training.empty()) {
        throw Error(ErrorCode::EmptyDataset, "dataset has no training points");
    }
    if (labels.size() != training.size() || weights.size() != training.size()) {
        throw Error(ErrorCode::InvalidArgument, "labels and weights must have one entry per training point");
    }
    for (int y : labels) {
        if (y != 0 && y != 1) {
            throw Error(ErrorCode::InvalidArgument, "labels must be 0 or 1");
        }
    }
    double sum = 0;
    for (double a : weights) {
        if (!(a >= 0) || !std::isfinite(a)) {
            throw Error(ErrorCode::WeightSumInvalid, "weights must be finite and nonnegative");
        }
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw Error(ErrorCode::WeightSumInvalid, "weights must sum to 1 (got " + std::to_string(sum) + ")");
    }
    const int n = num_qubits(test);
    for (const auto &s : training) {
        if (num_qubits(s) != n) {
            throw Error(ErrorCode::DimensionMismatch, "training and test states differ in dimension");
        }
    }
}

LabeledDataset toy_dataset(double theta) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0, 1);
    std::vector<Complex> x1{i * r, r};
    std::vector<Complex> x2{i * r, -r};
    std::vector<Complex> xt{std::cos(theta / 2), -i * std::sin(theta / 2)};
    return LabeledDataset::uniform({amplitude_encode(x1), amplitude_encode(x2)}, {0, 1}, amplitude_encode(xt));
}

OutcomeDistribution OutcomeDistribution::from_probabilities(double p00, double p01, double p10, double p11) {
    OutcomeDistribution d{{p00, p01, p10, p11}};
    d.validate();
    return d;
}

void OutcomeDistribution::validate() const {
    double sum = 0;
    for (double v : p) {
        if (!(v >= 0) || !std::isfinite(v)) {
            throw Error(ErrorCode::InvalidDistribution, "probabilities must be finite and nonnegative");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidDistribution, "probabilities sum to " + std::to_string(sum));
    }
}

std::string test_register(int copy) {
    return "test" + std::to_string(copy);
}

std::string train_register(int copy) {
    return "train" + std::to_string(copy);
}

namespace {

StateVector label_state(int label, int width) {
    const std::uint64_t index = label == 0 ? 0 : (std::uint64_t{1} << width) - 1;
    return StateVector::basis(RegisterLayout::single(kLabelRegister, width), index);
}

StateVector ancilla_zero() {
    return StateVector::basis(RegisterLayout::single(kAncillaRegister, 1), 0);
}

QuantumState renamed(const QuantumState &state, const std::string &name) {
    auto layout = RegisterLayout::single(name, num_qubits(state));
    return std::visit([&](const auto &s) -> QuantumState { return s.relabel(layout); }, state);
}

void validate_inputs(const LabeledDataset &data, const ClassifierSpec &spec, Variant expected) {
    spec.validate();
    data.validate();
    if (spec.variant != expected) {
        throw Error(ErrorCode::InvalidSpec, "classifier variant does not match the requested construction");
    }
    if (expected == Variant::Htc && !data.all_pure()) {
        throw Error(ErrorCode::MixedStateUnsupported, "the Hadamard-test classifier needs pure states");
    }
}

int ceil_log2(std::size_t n) {
    int q = 0;
    while ((std::size_t{1} << q) < n) {
        ++q;
    }
    return q;
}

Complex ancilla_phase(const Angles &angles) {
    return std::polar(1.0, angles.phi);
}

// Maps |0> to cos(theta0/2)|0> + e^{i phi} sin(theta0/2)|1>.
Matrix2 preparation_gate(const Angles &angles) {
    const double c = std::cos(angles.theta0 / 2);
    const double s = std::sin(angles.theta0 / 2);
    const Complex e = ancilla_phase(angles);
    Matrix2 m;
    m << c, -s, e * s, e * c;
    return m;
}

int ancilla_qubit(const RegisterLayout &layout) {
    if (layout.width(kAncillaRegister) != 1) {
        throw Error(ErrorCode::LayoutMismatch, "ancilla register must be one qubit");
    }
    return layout.offset(kAncillaRegister);
}

struct SwapRegisters {
    std::vector<int> tests;
    std::vector<int> trains;
};

SwapRegisters swap_registers(const RegisterLayout &layout, int copies) {
    if (copies < 1) {
        throw Error(ErrorCode::LayoutMismatch, "swap test needs at least one copy");
    }
    if (layout.contains(test_register(copies + 1))) {
        throw Error(ErrorCode::LayoutMismatch, "state carries more test copies than requested");
    }
    SwapRegisters regs;
    for (int c = 1; c <= copies; ++c) {
        if (!layout.contains(test_register(c)) || !layout.contains(train_register(c))) {
            throw Error(ErrorCode::LayoutMismatch, "state is missing copy " + std::to_string(c));
        }
        auto t = layout.qubits_of(test_register(c));
        auto d = layout.qubits_of(train_register(c));
        if (t.size() != d.size()) {
            throw Error(ErrorCode::LayoutMismatch, "test and training registers differ in width");
        }
        regs.tests.insert(regs.tests.end(), t.begin(), t.end());
        regs.trains.insert(regs.trains.end(), d.begin(), d.end());
    }
    return regs;
}

template <typename State>
double ancilla_one_population(const State &state, int ancilla) {
    const auto bit = qubit_bit(state.num_qubits(), ancilla);
    double p = 0;
    for (std::size_t b = 0; b < state.dim(); ++b) {
        if (b & bit) {
            if constexpr (std::is_same_v<State, StateVector>) {
                p += std::norm(state[b]);
            } else {
                p += state.entries()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real();
            }
        }
    }
    return p;
}

template <typename State>
State swap_test_impl(const State &state, int copies, const Matrix2 &open, const Matrix2 &close) {
    const int a = ancilla_qubit(state.layout());
    auto regs = swap_registers(state.layout(), copies);
    if (ancilla_one_population(state, a) > 1e-12) {
        throw Error(ErrorCode::InvalidState, "swap test expects the ancilla in |0>");
    }
    State s = apply_1q(state, a, open);
    s = apply_controlled_swap(s, a, regs.tests, regs.trains);
    return apply_1q(s, a, close);
}

template <typename State>
State reduce_impl(const State &state) {
    const auto &layout = state.layout();
    if (layout.width(kLabelRegister) != 1) {
        throw Error(ErrorCode::LabelWidthUnsupported, "single-qubit reduction needs a one-qubit label register");
    }
    return apply_cnot(state, ancilla_qubit(layout), layout.offset(kLabelRegister));
}

template <typename Fn>
BranchMixture map_branches(const BranchMixture &mixture, Fn &&fn) {
    BranchMixture out;
    out.reserve(mixture.size());
    for (const auto &b : mixture) {
        out.push_back(Branch{b.weight, std::visit([&](const auto &s) -> QuantumState { return fn(s); }, b.state)});
    }
    return out;
}

// Accumulates p(i, jbar) from diagonal probabilities.
class DistributionAccumulator {
   public:
    DistributionAccumulator(const RegisterLayout &layout, int label_width) {
        if (layout.width(kLabelRegister) != label_width) {
            throw Error(ErrorCode::LayoutMismatch, "label register width does not match the requested width");
        }
        const int n = layout.num_qubits();
        ancilla_bit_ = qubit_bit(n, ancilla_qubit(layout));
        for (int q : layout.qubits_of(kLabelRegister)) {
            label_mask_ |= qubit_bit(n, q);
        }
    }

    void add(std::uint64_t basis, double probability) {
        const int i = (basis & ancilla_bit_) ? 1 : 0;
        const std::uint64_t l = basis & label_mask_;
        if (l == 0) {
            out_.p[static_cast<std::size_t>(2 * i)] += probability;
        } else if (l == label_mask_) {
            out_.p[static_cast<std::size_t>(2 * i + 1)] += probability;
        } else {
            leakage_ += probability;
        }
    }

    OutcomeDistribution finish() const {
        if (leakage_ > 1e-12) {
            throw Error(ErrorCode::NonLogicalLeakage,
                        "non-logical label patterns carry probability " + std::to_string(leakage_));
        }
        return out_;
    }

   private:
    std::uint64_t ancilla_bit_ = 0;
    std::uint64_t label_mask_ = 0;
    OutcomeDistribution out_;
    double leakage_ = 0;
};

template <typename State>
void for_each_probability(const State &state, auto &&fn) {
    for (std::size_t b = 0; b < state.dim(); ++b) {
        if constexpr (std::is_same_v<State, StateVector>) {
            fn(b, std::norm(state[b]));
        } else {
            fn(b, state.entries()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real());
        }
    }
}

template <typename State>
OutcomeDistribution distribution_impl(const State &state, int label_width) {
    DistributionAccumulator acc(state.layout(), label_width);
    for_each_probability(state, [&](std::uint64_t b, double p) { acc.add(b, p); });
    return acc.finish();
}

template <typename State>
OutcomeDistribution ancilla_impl(const State &state) {
    const auto bit = qubit_bit(state.num_qubits(), ancilla_qubit(state.layout()));
    OutcomeDistribution out;
    for_each_probability(state, [&](std::uint64_t b, double p) { out.p[(b & bit) ? 2 : 0] += p; });
    return out;
}

OutcomeDistribution weighted_sum(const BranchMixture &mixture, auto &&per_branch) {
    OutcomeDistribution out;
    for (const auto &b : mixture) {
        auto d = std::visit(per_branch, b.state);
        for (std::size_t k = 0; k < 4; ++k) {
            out.p[k] += b.weight * d.p[k];
        }
    }
    return out;
}

}  // namespace

StateVector build_htc_state(const LabeledDataset &data, const ClassifierSpec &spec) {
    validate_inputs(data, spec, Variant::Htc);
    const int n = data.data_qubits();
    const int lam = spec.label_width;
    const int m = ceil_log2(data.size());
    RegisterLayout layout({{kAncillaRegister, 1}, {kDataRegister, n}, {kLabelRegister, lam}, {kIndexRegister, m}});
    const double c = std::cos(spec.angles.theta0 / 2);
    const Complex s = std::sin(spec.angles.theta0 / 2) * ancilla_phase(spec.angles);
    const CVector &xt = std::get<StateVector>(data.test).amplitudes();
    const std::size_t data_dim = std::size_t{1} << n;

    CVector amps = CVector::Zero(static_cast<Eigen::Index>(layout.dim()));
    auto index_of = [&](std::size_t a, std::size_t d, std::size_t l, std::size_t j) {
        return static_cast<Eigen::Index>((((a << n) | d) << lam | l) << m | j);
    };
    for (std::size_t j = 0; j < data.size(); ++j) {
        const double root_a = std::sqrt(data.weights[j]);
        const CVector &xj = std::get<StateVector>(data.training[j]).amplitudes();
        const std::size_t l = data.labels[j] == 0 ? 0 : (std::size_t{1} << lam) - 1;
        for (std::size_t d = 0; d < data_dim; ++d) {
            amps[index_of(0, d, l, j)] += root_a * c * xj[static_cast<Eigen::Index>(d)];
            amps[index_of(1, d, l, j)] += root_a * s * xt[static_cast<Eigen::Index>(d)];
        }
    }
    return StateVector(std::move(amps), std::move(layout));
}

BranchMixture build_htc_branches(const LabeledDataset &data, const ClassifierSpec &spec) {
    validate_inputs(data, spec, Variant::Htc);
    const int n = data.data_qubits();
    RegisterLayout data_layout = RegisterLayout::single(kDataRegister, n);
    RegisterLayout layout = RegisterLayout::single(kAncillaRegister, 1).concat(data_layout);
    const double c = std::cos(spec.angles.theta0 / 2);
    const Complex s = std::sin(spec.angles.theta0 / 2) * ancilla_phase(spec.angles);
    const CVector &xt = std::get<StateVector>(data.test).amplitudes();
    const auto half = xt.size();

    BranchMixture out;
    out.reserve(data.size());
    for (std::size_t j = 0; j < data.size(); ++j) {
        CVector amps(2 * half);
        amps.head(half) = c * std::get<StateVector>(data.training[j]).amplitudes();
        amps.tail(half) = s * xt;
        StateVector core(kUnchecked, std::move(amps), layout);
        out.push_back(Branch{data.weights[j], tensor(core, label_state(data.labels[j], spec.label_width))});
    }
    return out;
}

namespace {

// Per-j branches with mixed inputs promoted to density matrices.
BranchMixture stc_density_branches(const LabeledDataset &data, const ClassifierSpec &spec) {
    BranchMixture out;
    out.reserve(data.size());
    for (std::size_t j = 0; j < data.size(); ++j) {
        const bool pure = is_pure(data.test) && is_pure(data.training[j]);
        auto lift = [&](const QuantumState &s) -> QuantumState {
            return pure ? s : QuantumState(to_density(s));
        };
        QuantumState state = lift(ancilla_zero());
        for (int c = 1; c <= spec.copies; ++c) {
            state = tensor(state, lift(renamed(data.test, test_register(c))));
            state = tensor(state, lift(renamed(data.training[j], train_register(c))));
        }
        state = tensor(state, lift(label_state(data.labels[j], spec.label_width)));
        out.push_back(Branch{data.weights[j], std::move(state)});
    }
    return out;
}

struct EnsembleMember {
    double weight;
    CVector amplitudes;
};

// rho = sum_i w_i |v_i><v_i| over the numerically nonzero spectrum.
std::vector<EnsembleMember> ensemble(const QuantumState &state) {
    if (const auto *sv = std::get_if<StateVector>(&state)) {
        return {{1.0, sv->amplitudes()}};
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(std::get<DensityMatrix>(state).entries());
    std::vector<EnsembleMember> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double w = solver.eigenvalues()[i];
        if (w > 1e-14) {
            out.push_back({w, solver.eigenvectors().col(i)});
        }
    }
    return out;
}

}  // namespace

BranchMixture build_stc_branches(const LabeledDataset &data, const ClassifierSpec &spec) {
    validate_inputs(data, spec, Variant::Stc);
    if (data.all_pure()) {
        return stc_density_branches(data, spec);
    }
    const int n = data.data_qubits();
    const int width = 1 + 2 * spec.copies * n + spec.label_width;
    const auto test = ensemble(data.test);
    BranchMixture out;
    for (std::size_t j = 0; j < data.size(); ++j) {
        const auto train = ensemble(data.training[j]);
        const double pairs = static_cast<double>(test.size() * train.size());
        if (std::pow(pairs, spec.copies) > std::ldexp(1.0, width)) {
            // More pure terms than a density matrix has rows.
            LabeledDataset single{{data.training[j]}, {data.labels[j]}, {1.0}, data.test};
            auto dense = stc_density_branches(single, spec);
            out.push_back(Branch{data.weights[j], std::move(dense.front().state)});
            continue;
        }
        // Every choice of (test member, train member) per copy is one pure branch.
        const std::size_t per_copy = test.size() * train.size();
        std::size_t total = 1;
        for (int c = 0; c < spec.copies; ++c) {
            total *= per_copy;
        }
        for (std::size_t pick = 0; pick < total; ++pick) {
            double w = data.weights[j];
            StateVector state = ancilla_zero();
            std::size_t rest = pick;
            for (int c = 1; c <= spec.copies; ++c) {
                const auto &t = test[rest % per_copy / train.size()];
                const auto &r = train[rest % per_copy % train.size()];
                rest /= per_copy;
                w *= t.weight * r.weight;
                state = tensor(state, StateVector(kUnchecked, t.amplitudes, RegisterLayout::single(test_register(c), n)));
                state = tensor(state, StateVector(kUnchecked, r.amplitudes, RegisterLayout::single(train_register(c), n)));
            }
            state = tensor(state, label_state(data.labels[j], spec.label_width));
            out.push_back(Branch{w, std::move(state)});
        }
    }
    return out;
}

DensityMatrix build_stc_state(const LabeledDataset &data, const ClassifierSpec &spec) {
    validate_inputs(data, spec, Variant::Stc);
    auto branches = stc_density_branches(data, spec);
    const RegisterLayout layout = layout_of(branches.front().state);
    const auto d = static_cast<Eigen::Index>(layout.dim());
    CMatrix rho = CMatrix::Zero(d, d);
    for (const auto &b : branches) {
        rho += b.weight * to_density(b.state).entries();
    }
    return DensityMatrix(kUnchecked, std::move(rho), layout);
}

StateVector apply_interference(const StateVector &state, double theta1) {
    return apply_1q(state, ancilla_qubit(state.layout()), ry_gate(theta1));
}

DensityMatrix apply_interference(const DensityMatrix &state, double theta1) {
    return apply_1q(state, ancilla_qubit(state.layout()), ry_gate(theta1));
}

BranchMixture apply_interference(const BranchMixture &state, double theta1) {
    return map_branches(state, [&](const auto &s) { return apply_interference(s, theta1); });
}

StateVector apply_swap_test(const StateVector &state, int copies) {
    return swap_test_impl(state, copies, hadamard_gate(), hadamard_gate());
}

DensityMatrix apply_swap_test(const DensityMatrix &state, int copies) {
    return swap_test_impl(state, copies, hadamard_gate(), hadamard_gate());
}

BranchMixture apply_swap_test(const BranchMixture &state, int copies) {
    return map_branches(state, [&](const auto &s) { return apply_swap_test(s, copies); });
}

StateVector apply_generalized_swap_test(const StateVector &state, int copies, const Angles &angles) {
    return swap_test_impl(state, copies, preparation_gate(angles), ry_gate(angles.theta1));
}

DensityMatrix apply_generalized_swap_test(const DensityMatrix &state, int copies, const Angles &angles) {
    return swap_test_impl(state, copies, preparation_gate(angles), ry_gate(angles.theta1));
}

BranchMixture apply_generalized_swap_test(const BranchMixture &state, int copies, const Angles &angles) {
    return map_branches(state, [&](const auto &s) { return apply_generalized_swap_test(s, copies, angles); });
}

StateVector reduce_to_single_qubit(const StateVector &state) {
    return reduce_impl(state);
}

DensityMatrix reduce_to_single_qubit(const DensityMatrix &state) {
    return reduce_impl(state);
}

BranchMixture reduce_to_single_qubit(const BranchMixture &state) {
    return map_branches(state, [](const auto &s) { return reduce_to_single_qubit(s); });
}

OutcomeDistribution outcome_distribution(const StateVector &state, int label_width) {
    return distribution_impl(state, label_width);
}

OutcomeDistribution outcome_distribution(const DensityMatrix &state, int label_width) {
    return distribution_impl(state, label_width);
}

OutcomeDistribution outcome_distribution(const BranchMixture &state, int label_width) {
    return weighted_sum(state, [&](const auto &s) { return outcome_distribution(s, label_width); });
}

OutcomeDistribution ancilla_distribution(const StateVector &state) {
    return ancilla_impl(state);
}

OutcomeDistribution ancilla_distribution(const DensityMatrix &state) {
    return ancilla_impl(state);
}

OutcomeDistribution ancilla_distribution(const BranchMixture &state) {
    return weighted_sum(state, [](const auto &s) { return ancilla_distribution(s); });
}

Observable classifier_observable(const RegisterLayout &layout) {
    const int n = layout.num_qubits();
    const int a = ancilla_qubit(layout);
    std::vector<PauliTerm> terms;
    for (int l : layout.qubits_of(kLabelRegister)) {
        std::string ops(static_cast<std::size_t>(n), 'I');
        ops[static_cast<std::size_t>(a)] = 'Z';
        ops[static_cast<std::size_t>(l)] = 'Z';
        terms.push_back(PauliTerm{1.0, PauliString(ops)});
    }
    if (terms.empty()) {
        throw Error(ErrorCode::LayoutMismatch, "layout has an empty label register");
    }
    return Observable::from_paulis(std::move(terms));
}

Observable ancilla_observable(const RegisterLayout &layout) {
    const int a = ancilla_qubit(layout);
    return z_product(layout.num_qubits(), std::span<const int>(&a, 1));
}

double mixture_expectation(const BranchMixture &state, const Observable &observable) {
    double total = 0;
    for (const auto &b : state) {
        total += b.weight * expectation(b.state, observable);
    }
    return total;
}

BranchMixture final_state(const LabeledDataset &data, const ClassifierSpec &spec) {
    if (spec.variant == Variant::Htc) {
        return apply_interference(build_htc_branches(data, spec), spec.angles.theta1);
    }
    return apply_generalized_swap_test(build_stc_branches(data, spec), spec.copies, spec.angles);
}

QuantumState final_state_materialized(const LabeledDataset &data, const ClassifierSpec &spec) {
    if (spec.variant == Variant::Htc) {
        return apply_interference(build_htc_state(data, spec), spec.angles.theta1);
    }
    return apply_generalized_swap_test(build_stc_state(data, spec), spec.copies, spec.angles);
}

double circuit_expectation(const LabeledDataset &data, const ClassifierSpec &spec) {
    auto state = final_state(data, spec);
    return mixture_expectation(state, classifier_observable(layout_of(state.front().state)));
}

}  // namespace qkc
