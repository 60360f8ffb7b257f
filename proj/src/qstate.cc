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

#include "qkc/qstate.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qkc/error.h"

namespace qkc {

namespace {

int qubits_for_length(std::size_t n) {
    int q = 0;
    while ((std::size_t{1} << q) < n) {
        ++q;
    }
    return q;
}

void check_hermitian(const CMatrix &m, ErrorCode code, const char *what) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is not square");
    }
    double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (deviation > kHermitianTol) {
        throw Error(code, std::string(what) + " is not Hermitian (deviation " + std::to_string(deviation) + ")");
    }
}

// Kernels below act in place on one amplitude column of length 2^n.

void kernel_1q(Complex *amps, std::size_t dim, std::uint64_t bit, const Matrix2 &g) {
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) {
            continue;
        }
        Complex a0 = amps[i];
        Complex a1 = amps[i | bit];
        amps[i] = g(0, 0) * a0 + g(0, 1) * a1;
        amps[i | bit] = g(1, 0) * a0 + g(1, 1) * a1;
    }
}

void kernel_cnot(Complex *amps, std::size_t dim, std::uint64_t target_bit, std::uint64_t control_bit) {
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & control_bit) && !(i & target_bit)) {
            std::swap(amps[i], amps[i | target_bit]);
        }
    }
}

struct SwapPlan {
    std::uint64_t control_bit;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> bit_pairs;
};

void kernel_cswap(Complex *amps, std::size_t dim, const SwapPlan &plan) {
    for (std::size_t i = 0; i < dim; ++i) {
        if (!(i & plan.control_bit)) {
            continue;
        }
        std::size_t j = i;
        for (auto [ba, bb] : plan.bit_pairs) {
            bool va = (i & ba) != 0;
            bool vb = (i & bb) != 0;
            if (va != vb) {
                j ^= ba | bb;
            }
        }
        if (j > i) {
            std::swap(amps[i], amps[j]);
        }
    }
}

void kernel_pauli(Complex *amps, std::size_t dim, const PauliString &p, std::vector<Complex> &scratch) {
    scratch.assign(amps, amps + dim);
    for (std::size_t b = 0; b < dim; ++b) {
        amps[b ^ p.x_mask()] = p.phase(b) * scratch[b];
    }
}

// U rho U^dagger for Hermitian rho: apply U to each column, take the adjoint,
// then apply U to each column again.
template <typename Kernel>
CMatrix conjugate_by(const CMatrix &rho, Kernel &&kernel) {
    CMatrix a = rho;
    const auto dim = static_cast<std::size_t>(a.rows());
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        kernel(a.col(c).data(), dim);
    }
    CMatrix b = a.adjoint();
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
        kernel(b.col(c).data(), dim);
    }
    return b;
}

void check_qubit(int num_qubits, int qubit) {
    if (qubit < 0 || qubit >= num_qubits) {
        throw Error(ErrorCode::LayoutMismatch,
                    "qubit " + std::to_string(qubit) + " outside " + std::to_string(num_qubits) + "-qubit state");
    }
}

SwapPlan make_swap_plan(int n, int control, std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::LayoutMismatch, "controlled swap needs registers of equal width");
    }
    check_qubit(n, control);
    SwapPlan plan{qubit_bit(n, control), {}};
    for (std::size_t i = 0; i < a.size(); ++i) {
        check_qubit(n, a[i]);
        check_qubit(n, b[i]);
        if (a[i] == control || b[i] == control || a[i] == b[i]) {
            throw Error(ErrorCode::LayoutMismatch, "controlled swap qubits overlap");
        }
        plan.bit_pairs.emplace_back(qubit_bit(n, a[i]), qubit_bit(n, b[i]));
    }
    return plan;
}

}  // namespace

// --- RegisterLayout ---

RegisterLayout::RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
    for (const auto &r : registers_) {
        if (r.qubits < 0) {
            throw Error(ErrorCode::LayoutMismatch, "register '" + r.name + "' has negative width");
        }
        num_qubits_ += r.qubits;
    }
    if (num_qubits_ > 62) {
        throw Error(ErrorCode::LayoutMismatch, "layout too wide for dense simulation");
    }
}

RegisterLayout RegisterLayout::single(std::string name, int qubits) {
    return RegisterLayout({Register{std::move(name), qubits}});
}

const Register &RegisterLayout::find(std::string_view name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            return r;
        }
    }
    throw Error(ErrorCode::LayoutMismatch, "no register named '" + std::string(name) + "'");
}

bool RegisterLayout::contains(std::string_view name) const {
    return std::any_of(registers_.begin(), registers_.end(), [&](const Register &r) {
        return r.name == name;
    });
}

int RegisterLayout::offset(std::string_view name) const {
    int q = 0;
    for (const auto &r : registers_) {
        if (r.name == name) {
            return q;
        }
        q += r.qubits;
    }
    throw Error(ErrorCode::LayoutMismatch, "no register named '" + std::string(name) + "'");
}

int RegisterLayout::width(std::string_view name) const {
    return find(name).qubits;
}

std::vector<int> RegisterLayout::qubits_of(std::string_view name) const {
    std::vector<int> out(static_cast<std::size_t>(width(name)));
    std::iota(out.begin(), out.end(), offset(name));
    return out;
}

RegisterLayout RegisterLayout::concat(const RegisterLayout &other) const {
    auto regs = registers_;
    regs.insert(regs.end(), other.registers_.begin(), other.registers_.end());
    return RegisterLayout(std::move(regs));
}

// --- StateVector ---

StateVector::StateVector(CVector amplitudes, RegisterLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != layout_.dim()) {
        throw Error(ErrorCode::InvalidState, "amplitude count " + std::to_string(amplitudes_.size()) +
                                                 " does not match layout dimension " + std::to_string(layout_.dim()));
    }
    double norm2 = amplitudes_.squaredNorm();
    if (!(std::abs(norm2 - 1.0) <= kNormTol)) {
        throw Error(ErrorCode::InvalidState, "state is not normalized (norm^2 = " + std::to_string(norm2) + ")");
    }
}

StateVector::StateVector(Unchecked, CVector amplitudes, RegisterLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
}

StateVector StateVector::basis(RegisterLayout layout, std::uint64_t index) {
    if (index >= layout.dim()) {
        throw Error(ErrorCode::InvalidArgument, "basis index out of range");
    }
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(layout.dim()));
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(kUnchecked, std::move(amps), std::move(layout));
}

StateVector StateVector::relabel(RegisterLayout layout) const {
    if (layout.num_qubits() != num_qubits()) {
        throw Error(ErrorCode::LayoutMismatch, "relabel must preserve the qubit count");
    }
    return StateVector(kUnchecked, amplitudes_, std::move(layout));
}

// --- DensityMatrix ---

DensityMatrix::DensityMatrix(CMatrix entries, RegisterLayout layout)
    : entries_(std::move(entries)), layout_(std::move(layout)) {
    if (static_cast<std::size_t>(entries_.rows()) != layout_.dim() ||
        static_cast<std::size_t>(entries_.cols()) != layout_.dim()) {
        throw Error(ErrorCode::InvalidState, "density matrix shape does not match layout");
    }
    check_hermitian(entries_, ErrorCode::InvalidState, "density matrix");
    Complex tr = entries_.trace();
    if (std::abs(tr - Complex(1.0)) > kNormTol) {
        throw Error(ErrorCode::InvalidState, "density matrix trace is " + std::to_string(tr.real()));
    }
    if (min_eigenvalue() < kEigenvalueFloor) {
        throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
    }
}

DensityMatrix::DensityMatrix(Unchecked, CMatrix entries, RegisterLayout layout)
    : entries_(std::move(entries)), layout_(std::move(layout)) {
}

DensityMatrix DensityMatrix::from_pure(const StateVector &state) {
    const CVector &v = state.amplitudes();
    return DensityMatrix(kUnchecked, v * v.adjoint(), state.layout());
}

DensityMatrix DensityMatrix::maximally_mixed(RegisterLayout layout) {
    auto d = static_cast<Eigen::Index>(layout.dim());
    return DensityMatrix(kUnchecked, CMatrix::Identity(d, d) / static_cast<double>(d), std::move(layout));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::relabel(RegisterLayout layout) const {
    if (layout.num_qubits() != num_qubits()) {
        throw Error(ErrorCode::LayoutMismatch, "relabel must preserve the qubit count");
    }
    return DensityMatrix(kUnchecked, entries_, std::move(layout));
}

// --- QuantumState helpers ---

bool is_pure(const QuantumState &state) {
    return std::holds_alternative<StateVector>(state);
}

int num_qubits(const QuantumState &state) {
    return std::visit([](const auto &s) { return s.num_qubits(); }, state);
}

const RegisterLayout &layout_of(const QuantumState &state) {
    return std::visit([](const auto &s) -> const RegisterLayout & { return s.layout(); }, state);
}

DensityMatrix to_density(const QuantumState &state) {
    if (const auto *pure = std::get_if<StateVector>(&state)) {
        return DensityMatrix::from_pure(*pure);
    }
    return std::get<DensityMatrix>(state);
}

// --- PauliString ---

PauliString::PauliString(std::string_view ops) {
    if (ops.size() > 62) {
        throw Error(ErrorCode::InvalidArgument, "Pauli string too long");
    }
    ops_.reserve(ops.size());
    const int n = static_cast<int>(ops.size());
    for (int q = 0; q < n; ++q) {
        char c = ops[static_cast<std::size_t>(q)];
        if (c == '_') {
            c = 'I';
        }
        if (c >= 'a' && c <= 'z') {
            c = static_cast<char>(c - 'a' + 'A');
        }
        const std::uint64_t bit = qubit_bit(n, q);
        switch (c) {
            case 'I':
                break;
            case 'X':
                x_mask_ |= bit;
                break;
            case 'Y':
                x_mask_ |= bit;
                z_mask_ |= bit;
                ++y_count_;
                break;
            case 'Z':
                z_mask_ |= bit;
                break;
            default:
                throw Error(ErrorCode::InvalidArgument, "invalid Pauli character '" + std::string(1, c) + "'");
        }
        ops_.push_back(c);
    }
}

Complex PauliString::phase(std::uint64_t basis_index) const {
    // Y|0> = i|1>, Y|1> = -i|0>, Z|1> = -|1>.
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Complex ph = kIPow[y_count_ & 3];
    if (std::popcount(basis_index & z_mask_) & 1) {
        ph = -ph;
    }
    return ph;
}

CMatrix PauliString::to_matrix() const {
    auto d = static_cast<Eigen::Index>(std::size_t{1} << ops_.size());
    CMatrix m = CMatrix::Zero(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
        auto ub = static_cast<std::uint64_t>(b);
        m(static_cast<Eigen::Index>(ub ^ x_mask_), b) = phase(ub);
    }
    return m;
}

// --- Observable ---

Observable Observable::from_matrix(CMatrix matrix) {
    check_hermitian(matrix, ErrorCode::NonHermitian, "observable");
    int n = qubits_for_length(static_cast<std::size_t>(matrix.rows()));
    if ((std::size_t{1} << n) != static_cast<std::size_t>(matrix.rows())) {
        throw Error(ErrorCode::DimensionMismatch, "observable dimension is not a power of two");
    }
    Observable o;
    o.dense_ = std::move(matrix);
    o.num_qubits_ = n;
    return o;
}

Observable Observable::from_paulis(std::vector<PauliTerm> terms) {
    if (terms.empty()) {
        throw Error(ErrorCode::InvalidArgument, "empty Pauli sum");
    }
    const int n = terms.front().ops.num_qubits();
    for (const auto &t : terms) {
        if (t.ops.num_qubits() != n) {
            throw Error(ErrorCode::DimensionMismatch, "Pauli sum terms act on different qubit counts");
        }
        if (!std::isfinite(t.coefficient)) {
            throw Error(ErrorCode::NonHermitian, "Pauli coefficient is not a finite real");
        }
    }
    Observable o;
    o.terms_ = std::move(terms);
    o.num_qubits_ = n;
    return o;
}

CMatrix Observable::to_matrix() const {
    if (!is_pauli_sum()) {
        return dense_;
    }
    auto d = static_cast<Eigen::Index>(std::size_t{1} << num_qubits_);
    CMatrix m = CMatrix::Zero(d, d);
    for (const auto &t : terms_) {
        m += t.coefficient * t.ops.to_matrix();
    }
    return m;
}

Observable z_product(int num_qubits, std::span<const int> qubits) {
    std::string ops(static_cast<std::size_t>(num_qubits), 'I');
    for (int q : qubits) {
        check_qubit(num_qubits, q);
        ops[static_cast<std::size_t>(q)] = 'Z';
    }
    return Observable::from_paulis({PauliTerm{1.0, PauliString(ops)}});
}

// --- encoding ---

namespace {

// Componentwise, so that huge entries do not overflow a complex division.
void scale_down(CVector &v, double norm) {
    for (auto &c : v) {
        c = Complex(c.real() / norm, c.imag() / norm);
    }
}

}  // namespace

StateVector amplitude_encode(std::span<const Complex> x) {
    if (x.empty()) {
        throw Error(ErrorCode::ZeroVector, "cannot encode an empty vector");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << qubits_for_length(x.size())));
    for (std::size_t i = 0; i < x.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = x[i];
    }
    double norm = v.stableNorm();
    if (!(norm >= 1e-300) || !std::isfinite(norm)) {
        throw Error(ErrorCode::ZeroVector, "vector norm is zero or not finite");
    }
    scale_down(v, norm);
    return StateVector(std::move(v), RegisterLayout::single("data", qubits_for_length(x.size())));
}

StateVector encode_dataset(std::span<const std::vector<Complex>> points) {
    if (points.empty()) {
        throw Error(ErrorCode::ZeroVector, "cannot encode an empty dataset");
    }
    const std::size_t n = points.front().size();
    for (const auto &p : points) {
        if (p.size() != n) {
            throw Error(ErrorCode::DimensionMismatch, "dataset points have different lengths");
        }
    }
    const int data_qubits = qubits_for_length(n);
    const int index_qubits = qubits_for_length(points.size());
    RegisterLayout layout({{"data", data_qubits}, {"index", index_qubits}});
    CVector v = CVector::Zero(static_cast<Eigen::Index>(layout.dim()));
    for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            v[static_cast<Eigen::Index>((i << index_qubits) | j)] = points[j][i];
        }
    }
    double norm = v.stableNorm();
    if (!(norm >= 1e-300) || !std::isfinite(norm)) {
        throw Error(ErrorCode::ZeroVector, "dataset norm is zero or not finite");
    }
    scale_down(v, norm);
    return StateVector(std::move(v), std::move(layout));
}

// --- algebra ---

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "inner product of states with different dimensions");
    }
    return a.amplitudes().dot(b.amplitudes());  // Eigen conjugates the left operand
}

namespace {

double take_real(Complex value) {
    if (std::abs(value.imag()) > kImagResidueTol) {
        throw Error(ErrorCode::NonHermitian,
                    "expectation has imaginary residue " + std::to_string(value.imag()));
    }
    return value.real();
}

}  // namespace

double expectation(const StateVector &state, const Observable &observable) {
    if (observable.num_qubits() != state.num_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "observable and state act on different qubit counts");
    }
    const CVector &psi = state.amplitudes();
    if (!observable.is_pauli_sum()) {
        return take_real(psi.dot(observable.to_matrix() * psi));
    }
    Complex total = 0;
    for (const auto &t : observable.terms()) {
        Complex acc = 0;
        for (std::size_t b = 0; b < state.dim(); ++b) {
            auto src = static_cast<Eigen::Index>(b);
            auto dst = static_cast<Eigen::Index>(b ^ t.ops.x_mask());
            acc += std::conj(psi[dst]) * t.ops.phase(b) * psi[src];
        }
        total += t.coefficient * acc;
    }
    return take_real(total);
}

double expectation(const DensityMatrix &state, const Observable &observable) {
    if (observable.num_qubits() != state.num_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "observable and state act on different qubit counts");
    }
    const CMatrix &rho = state.entries();
    if (!observable.is_pauli_sum()) {
        return take_real((rho * observable.to_matrix()).trace());
    }
    Complex total = 0;
    for (const auto &t : observable.terms()) {
        // Tr(rho P) = sum_b <b|rho P|b> = sum_b phase(b) rho[b, b ^ x].
        Complex acc = 0;
        for (std::size_t b = 0; b < state.dim(); ++b) {
            acc += t.ops.phase(b) * rho(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ t.ops.x_mask()));
        }
        total += t.coefficient * acc;
    }
    return take_real(total);
}

double expectation(const QuantumState &state, const Observable &observable) {
    return std::visit([&](const auto &s) { return expectation(s, observable); }, state);
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    const CVector &va = a.amplitudes();
    const CVector &vb = b.amplitudes();
    CVector out(va.size() * vb.size());
    for (Eigen::Index i = 0; i < va.size(); ++i) {
        out.segment(i * vb.size(), vb.size()) = va[i] * vb;
    }
    return StateVector(kUnchecked, std::move(out), a.layout().concat(b.layout()));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    const CMatrix &ma = a.entries();
    const CMatrix &mb = b.entries();
    CMatrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
    for (Eigen::Index i = 0; i < ma.rows(); ++i) {
        for (Eigen::Index j = 0; j < ma.cols(); ++j) {
            out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
        }
    }
    return DensityMatrix(kUnchecked, std::move(out), a.layout().concat(b.layout()));
}

QuantumState tensor(const QuantumState &a, const QuantumState &b) {
    if (is_pure(a) != is_pure(b)) {
        throw Error(ErrorCode::MixedKind, "tensor of a pure and a mixed state; promote one explicitly");
    }
    if (is_pure(a)) {
        return tensor(std::get<StateVector>(a), std::get<StateVector>(b));
    }
    return tensor(std::get<DensityMatrix>(a), std::get<DensityMatrix>(b));
}

// --- gates ---

StateVector apply_1q(const StateVector &state, int qubit, const Matrix2 &gate) {
    check_qubit(state.num_qubits(), qubit);
    CVector amps = state.amplitudes();
    kernel_1q(amps.data(), state.dim(), qubit_bit(state.num_qubits(), qubit), gate);
    return StateVector(kUnchecked, std::move(amps), state.layout());
}

DensityMatrix apply_1q(const DensityMatrix &state, int qubit, const Matrix2 &gate) {
    check_qubit(state.num_qubits(), qubit);
    const auto bit = qubit_bit(state.num_qubits(), qubit);
    return DensityMatrix(kUnchecked, conjugate_by(state.entries(), [&](Complex *col, std::size_t dim) {
                             kernel_1q(col, dim, bit, gate);
                         }),
                         state.layout());
}

StateVector apply_cnot(const StateVector &state, int target, int control) {
    const int n = state.num_qubits();
    check_qubit(n, target);
    check_qubit(n, control);
    CVector amps = state.amplitudes();
    kernel_cnot(amps.data(), state.dim(), qubit_bit(n, target), qubit_bit(n, control));
    return StateVector(kUnchecked, std::move(amps), state.layout());
}

DensityMatrix apply_cnot(const DensityMatrix &state, int target, int control) {
    const int n = state.num_qubits();
    check_qubit(n, target);
    check_qubit(n, control);
    const auto tb = qubit_bit(n, target);
    const auto cb = qubit_bit(n, control);
    return DensityMatrix(kUnchecked, conjugate_by(state.entries(), [&](Complex *col, std::size_t dim) {
                             kernel_cnot(col, dim, tb, cb);
                         }),
                         state.layout());
}

StateVector apply_controlled_swap(const StateVector &state, int control, std::span<const int> a,
                                  std::span<const int> b) {
    auto plan = make_swap_plan(state.num_qubits(), control, a, b);
    CVector amps = state.amplitudes();
    kernel_cswap(amps.data(), state.dim(), plan);
    return StateVector(kUnchecked, std::move(amps), state.layout());
}

DensityMatrix apply_controlled_swap(const DensityMatrix &state, int control, std::span<const int> a,
                                    std::span<const int> b) {
    auto plan = make_swap_plan(state.num_qubits(), control, a, b);
    return DensityMatrix(kUnchecked, conjugate_by(state.entries(), [&](Complex *col, std::size_t dim) {
                             kernel_cswap(col, dim, plan);
                         }),
                         state.layout());
}

StateVector apply_pauli(const StateVector &state, const PauliString &pauli) {
    if (pauli.num_qubits() != state.num_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "Pauli string width does not match the state");
    }
    CVector amps = state.amplitudes();
    std::vector<Complex> scratch;
    kernel_pauli(amps.data(), state.dim(), pauli, scratch);
    return StateVector(kUnchecked, std::move(amps), state.layout());
}

DensityMatrix conjugate_pauli(const DensityMatrix &state, const PauliString &pauli) {
    if (pauli.num_qubits() != state.num_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "Pauli string width does not match the state");
    }
    // (P rho P^dagger)[b^x, c^x] = phase(b) rho[b, c] conj(phase(c)).
    const CMatrix &rho = state.entries();
    const auto d = rho.rows();
    const auto x = pauli.x_mask();
    std::vector<Complex> ph(static_cast<std::size_t>(d));
    for (Eigen::Index b = 0; b < d; ++b) {
        ph[static_cast<std::size_t>(b)] = pauli.phase(static_cast<std::uint64_t>(b));
    }
    CMatrix out(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        const auto cc = static_cast<Eigen::Index>(static_cast<std::uint64_t>(c) ^ x);
        const Complex pc = std::conj(ph[static_cast<std::size_t>(c)]);
        for (Eigen::Index b = 0; b < d; ++b) {
            const auto bb = static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^ x);
            out(bb, cc) = ph[static_cast<std::size_t>(b)] * rho(b, c) * pc;
        }
    }
    return DensityMatrix(kUnchecked, std::move(out), state.layout());
}

Matrix2 ry_gate(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    Matrix2 m;
    m << c, -s, s, c;
    return m;
}

Matrix2 hadamard_gate() {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix2 m;
    m << r, r, r, -r;
    return m;
}

Matrix2 pauli_matrix(char op) {
    Matrix2 m;
    switch (op) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw Error(ErrorCode::InvalidArgument, "invalid Pauli character '" + std::string(1, op) + "'");
    }
    return m;
}

}  // namespace qkc
