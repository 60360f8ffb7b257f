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

#include "qkc/noise.h"

#include <cmath>

#include "qkc/error.h"
#include "qkc/moments.h"

namespace qkc {

NoiseSpec NoiseSpec::depolarizing(double rate) {
    if (!(rate >= 0 && rate <= 1)) {
        throw Error(ErrorCode::RateOutOfRange, "depolarizing rate must lie in [0, 1]");
    }
    NoiseSpec spec;
    spec.kind_ = Kind::Depolarizing;
    spec.rate_ = rate;
    return spec;
}

NoiseSpec NoiseSpec::pauli(std::vector<PauliTerm> terms, int ancilla_qubit) {
    if (terms.empty()) {
        throw Error(ErrorCode::InvalidCoefficients, "Pauli channel has no terms");
    }
    const int n = terms.front().ops.num_qubits();
    double sum = 0;
    for (const auto &t : terms) {
        if (t.ops.num_qubits() != n) {
            throw Error(ErrorCode::DimensionMismatch, "Pauli channel strings differ in width");
        }
        if (!(t.coefficient >= 0) || !std::isfinite(t.coefficient)) {
            throw Error(ErrorCode::InvalidCoefficients, "Pauli channel coefficients must be nonnegative");
        }
        sum += t.coefficient;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidCoefficients, "Pauli channel coefficients sum to " + std::to_string(sum));
    }
    if (ancilla_qubit < 0 || ancilla_qubit >= n) {
        throw Error(ErrorCode::DimensionMismatch, "ancilla position outside the Pauli strings");
    }
    NoiseSpec spec;
    spec.kind_ = Kind::Pauli;
    spec.terms_ = std::move(terms);
    spec.ancilla_qubit_ = ancilla_qubit;
    return spec;
}

std::vector<PauliTerm> NoiseSpec::pauli_terms(int num_qubits, int ancilla) const {
    if (kind_ == Kind::Pauli) {
        if (terms_.front().ops.num_qubits() != num_qubits) {
            throw Error(ErrorCode::DimensionMismatch, "Pauli channel width " +
                                                          std::to_string(terms_.front().ops.num_qubits()) +
                                                          " does not match a " + std::to_string(num_qubits) +
                                                          "-qubit state");
        }
        if (ancilla != ancilla_qubit_) {
            throw Error(ErrorCode::LayoutMismatch, "Pauli channel ancilla position does not match the state");
        }
        return terms_;
    }
    std::vector<PauliTerm> out;
    const double side = rate_ / 4;
    for (char op : {'I', 'X', 'Y', 'Z'}) {
        std::string s(static_cast<std::size_t>(num_qubits), 'I');
        s[static_cast<std::size_t>(ancilla)] = op;
        out.push_back(PauliTerm{op == 'I' ? 1 - 3 * side : side, PauliString(s)});
    }
    return out;
}

namespace {

int ancilla_of(const RegisterLayout &layout) {
    return layout.contains(kAncillaRegister) ? layout.offset(kAncillaRegister) : 0;
}

}  // namespace

DensityMatrix depolarize_ancilla(const DensityMatrix &state, double rate) {
    if (!(rate >= 0 && rate <= 1)) {
        throw Error(ErrorCode::RateOutOfRange, "depolarizing rate must lie in [0, 1]");
    }
    const int a = ancilla_of(state.layout());
    const double weights[4] = {std::sqrt(1 - 3 * rate / 4), std::sqrt(rate / 4), std::sqrt(rate / 4),
                               std::sqrt(rate / 4)};
    const char ops[4] = {'I', 'X', 'Y', 'Z'};
    CMatrix out = CMatrix::Zero(state.entries().rows(), state.entries().cols());
    for (int k = 0; k < 4; ++k) {
        Matrix2 kraus = weights[k] * pauli_matrix(ops[k]);
        out += apply_1q(state, a, kraus).entries();
    }
    return DensityMatrix(kUnchecked, std::move(out), state.layout());
}

DensityMatrix apply_pauli_channel(const DensityMatrix &state, const NoiseSpec &spec) {
    const auto terms = spec.pauli_terms(state.num_qubits(), ancilla_of(state.layout()));
    CMatrix out = CMatrix::Zero(state.entries().rows(), state.entries().cols());
    for (const auto &t : terms) {
        if (t.coefficient == 0) {
            continue;
        }
        out += t.coefficient * conjugate_pauli(state, t.ops).entries();
    }
    return DensityMatrix(kUnchecked, std::move(out), state.layout());
}

ScaleReport effective_scale(const NoiseSpec &spec) {
    ScaleReport r;
    if (spec.kind() == NoiseSpec::Kind::Depolarizing) {
        const double side = spec.rate() / 4;
        r.c_i = 1 - 3 * side;
        r.c_x = r.c_y = r.c_z = side;
    } else {
        for (const auto &t : spec.terms()) {
            switch (t.ops.at(spec.ancilla_qubit())) {
                case 'I':
                    r.c_i += t.coefficient;
                    break;
                case 'X':
                    r.c_x += t.coefficient;
                    break;
                case 'Y':
                    r.c_y += t.coefficient;
                    break;
                default:
                    r.c_z += t.coefficient;
                    break;
            }
        }
    }
    r.scale = spec.kind() == NoiseSpec::Kind::Depolarizing ? 1 - spec.rate() : r.c_i + r.c_z - r.c_x - r.c_y;
    if (std::abs(r.scale) >= 1e-12) {
        r.multiplier = 1 / (r.scale * r.scale);
        r.sign_inverted = r.scale < 0;
    }
    return r;
}

OverheadReport noise_overhead(double scale) {
    if (!std::isfinite(scale) || std::abs(scale) > 1 + 1e-12) {
        throw Error(ErrorCode::InvalidArgument, "noise scale must lie in [-1, 1]");
    }
    if (std::abs(scale) < 1e-12) {
        throw Error(ErrorCode::SignDestroyed, "noise scale is zero; the classification sign is lost");
    }
    return OverheadReport{1 / (scale * scale), scale < 0};
}

std::uint64_t noisy_shots(std::uint64_t base_shots, double scale) {
    const auto overhead = noise_overhead(scale);
    return std::max<std::uint64_t>(1, ceil_count(static_cast<double>(base_shots) * overhead.multiplier));
}

namespace {

// Accumulates sum_t c_t diag(P_t rho P_t) for one branch into `probs`.
template <typename State>
void add_noisy_diagonal(const State &state, const std::vector<PauliTerm> &terms, double weight,
                        std::vector<double> &probs) {
    for (std::size_t b = 0; b < state.dim(); ++b) {
        double pb;
        if constexpr (std::is_same_v<State, StateVector>) {
            pb = std::norm(state[b]);
        } else {
            pb = state.entries()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real();
        }
        if (pb == 0) {
            continue;
        }
        for (const auto &t : terms) {
            probs[b ^ t.ops.x_mask()] += weight * t.coefficient * pb;
        }
    }
}

StateVector diagonal_as_state(const std::vector<double> &probs, const RegisterLayout &layout) {
    // Amplitudes sqrt(p_b) reproduce the same computational-basis statistics.
    CVector amps(static_cast<Eigen::Index>(probs.size()));
    for (std::size_t b = 0; b < probs.size(); ++b) {
        amps[static_cast<Eigen::Index>(b)] = std::sqrt(std::max(0.0, probs[b]));
    }
    return StateVector(kUnchecked, std::move(amps), layout);
}

StateVector noisy_diagonal(const BranchMixture &state, const NoiseSpec &spec) {
    if (state.empty()) {
        throw Error(ErrorCode::EmptyDataset, "empty branch mixture");
    }
    const RegisterLayout layout = layout_of(state.front().state);
    const auto terms = spec.pauli_terms(layout.num_qubits(), ancilla_of(layout));
    std::vector<double> probs(layout.dim(), 0.0);
    for (const auto &b : state) {
        if (layout_of(b.state).num_qubits() != layout.num_qubits()) {
            throw Error(ErrorCode::DimensionMismatch, "branches differ in width");
        }
        std::visit([&](const auto &s) { add_noisy_diagonal(s, terms, b.weight, probs); }, b.state);
    }
    return diagonal_as_state(probs, layout);
}

}  // namespace

OutcomeDistribution noisy_outcome_distribution(const BranchMixture &state, const NoiseSpec &spec, int label_width) {
    return outcome_distribution(noisy_diagonal(state, spec), label_width);
}

OutcomeDistribution noisy_ancilla_distribution(const BranchMixture &state, const NoiseSpec &spec) {
    return ancilla_distribution(noisy_diagonal(state, spec));
}

}  // namespace qkc
