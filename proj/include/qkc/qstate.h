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

#ifndef QKC_QSTATE_H
#define QKC_QSTATE_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace qkc {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kImagResidueTol = 1e-10;

/// A named group of qubits. Zero-width registers are allowed (e.g. the index
/// register of a single-point dataset).
struct Register {
    std::string name;
    int qubits = 0;

    bool operator==(const Register &) const = default;
};

/// Ordered register list. Qubit 0 is the most significant bit of a basis
/// index; registers are laid out in order, each one big-endian internally.
class RegisterLayout {
   public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> registers);
    static RegisterLayout single(std::string name, int qubits);

    int num_qubits() const noexcept {
        return num_qubits_;
    }
    std::size_t dim() const noexcept {
        return std::size_t{1} << num_qubits_;
    }
    const std::vector<Register> &registers() const noexcept {
        return registers_;
    }

    bool contains(std::string_view name) const;
    /// Index of the first (most significant) qubit of the named register.
    int offset(std::string_view name) const;
    int width(std::string_view name) const;
    /// Qubit indices of the named register, most significant first.
    std::vector<int> qubits_of(std::string_view name) const;

    RegisterLayout concat(const RegisterLayout &other) const;

    bool operator==(const RegisterLayout &) const = default;

   private:
    const Register &find(std::string_view name) const;

    std::vector<Register> registers_;
    int num_qubits_ = 0;
};

/// Bit of a basis index that holds qubit `qubit` in an `num_qubits` system.
inline std::uint64_t qubit_bit(int num_qubits, int qubit) {
    return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

/// Tag for constructing a state from the output of a unitary or CPTP map
/// applied to an already validated state; skips the invariant checks.
struct Unchecked {};
inline constexpr Unchecked kUnchecked{};

class StateVector {
   public:
    /// Throws InvalidState unless the amplitudes are unit norm and the length
    /// matches the layout.
    StateVector(CVector amplitudes, RegisterLayout layout);
    StateVector(Unchecked, CVector amplitudes, RegisterLayout layout);

    static StateVector basis(RegisterLayout layout, std::uint64_t index);

    const CVector &amplitudes() const noexcept {
        return amplitudes_;
    }
    const RegisterLayout &layout() const noexcept {
        return layout_;
    }
    int num_qubits() const noexcept {
        return layout_.num_qubits();
    }
    std::size_t dim() const noexcept {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    Complex operator[](std::size_t index) const {
        return amplitudes_[static_cast<Eigen::Index>(index)];
    }

    /// Same amplitudes under a different register naming of equal width.
    StateVector relabel(RegisterLayout layout) const;

   private:
    CVector amplitudes_;
    RegisterLayout layout_;
};

class DensityMatrix {
   public:
    /// Throws InvalidState unless the matrix is Hermitian, unit trace and
    /// positive semidefinite (eigenvalue floor kEigenvalueFloor).
    DensityMatrix(CMatrix entries, RegisterLayout layout);
    DensityMatrix(Unchecked, CMatrix entries, RegisterLayout layout);

    static DensityMatrix from_pure(const StateVector &state);
    static DensityMatrix maximally_mixed(RegisterLayout layout);

    const CMatrix &entries() const noexcept {
        return entries_;
    }
    const RegisterLayout &layout() const noexcept {
        return layout_;
    }
    int num_qubits() const noexcept {
        return layout_.num_qubits();
    }
    std::size_t dim() const noexcept {
        return static_cast<std::size_t>(entries_.rows());
    }

    Complex trace() const {
        return entries_.trace();
    }
    double min_eigenvalue() const;
    DensityMatrix relabel(RegisterLayout layout) const;

   private:
    CMatrix entries_;
    RegisterLayout layout_;
};

using QuantumState = std::variant<StateVector, DensityMatrix>;

bool is_pure(const QuantumState &state);
int num_qubits(const QuantumState &state);
const RegisterLayout &layout_of(const QuantumState &state);
DensityMatrix to_density(const QuantumState &state);

/// Tensor product of Pauli operators, one character per qubit from {I,X,Y,Z}
/// ('_' is accepted as I).
class PauliString {
   public:
    explicit PauliString(std::string_view ops);

    int num_qubits() const noexcept {
        return static_cast<int>(ops_.size());
    }
    char at(int qubit) const {
        return ops_[static_cast<std::size_t>(qubit)];
    }
    const std::string &str() const noexcept {
        return ops_;
    }
    /// Bits flipped by the string (X or Y factors).
    std::uint64_t x_mask() const noexcept {
        return x_mask_;
    }
    /// Bits picking up a sign (Z or Y factors).
    std::uint64_t z_mask() const noexcept {
        return z_mask_;
    }
    /// P|b> = phase(b) |b ^ x_mask()>.
    Complex phase(std::uint64_t basis_index) const;
    CMatrix to_matrix() const;

    bool operator==(const PauliString &) const = default;

   private:
    std::string ops_;
    std::uint64_t x_mask_ = 0;
    std::uint64_t z_mask_ = 0;
    int y_count_ = 0;
};

struct PauliTerm {
    double coefficient;
    PauliString ops;
};

/// Hermitian observable, stored either as a real-weighted Pauli sum or as a
/// dense matrix.
class Observable {
   public:
    static Observable from_matrix(CMatrix matrix);
    static Observable from_paulis(std::vector<PauliTerm> terms);

    int num_qubits() const noexcept {
        return num_qubits_;
    }
    bool is_pauli_sum() const noexcept {
        return dense_.size() == 0;
    }
    const std::vector<PauliTerm> &terms() const noexcept {
        return terms_;
    }
    CMatrix to_matrix() const;

   private:
    Observable() = default;

    std::vector<PauliTerm> terms_;
    CMatrix dense_;
    int num_qubits_ = 0;
};

/// Product of sigma_z on the given qubits of an n-qubit system.
Observable z_product(int num_qubits, std::span<const int> qubits);

StateVector amplitude_encode(std::span<const Complex> x);
/// Columns x_j of length N stacked into one data|index state.
StateVector encode_dataset(std::span<const std::vector<Complex>> points);

Complex inner_product(const StateVector &a, const StateVector &b);

double expectation(const StateVector &state, const Observable &observable);
double expectation(const DensityMatrix &state, const Observable &observable);
double expectation(const QuantumState &state, const Observable &observable);

StateVector tensor(const StateVector &a, const StateVector &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);
/// Throws MixedKind when one operand is pure and the other mixed.
QuantumState tensor(const QuantumState &a, const QuantumState &b);

// Gate kernels. Qubit indices follow the layout convention above.

StateVector apply_1q(const StateVector &state, int qubit, const Matrix2 &gate);
DensityMatrix apply_1q(const DensityMatrix &state, int qubit, const Matrix2 &gate);

/// Bit flip on `target` when `control` is |1>.
StateVector apply_cnot(const StateVector &state, int target, int control);
DensityMatrix apply_cnot(const DensityMatrix &state, int target, int control);

/// Exchanges qubits a[i] <-> b[i] for all i when `control` is |1>.
StateVector apply_controlled_swap(const StateVector &state, int control, std::span<const int> a,
                                  std::span<const int> b);
DensityMatrix apply_controlled_swap(const DensityMatrix &state, int control, std::span<const int> a,
                                    std::span<const int> b);

StateVector apply_pauli(const StateVector &state, const PauliString &pauli);
/// P rho P^dagger.
DensityMatrix conjugate_pauli(const DensityMatrix &state, const PauliString &pauli);

Matrix2 ry_gate(double theta);
Matrix2 hadamard_gate();
Matrix2 pauli_matrix(char op);

}  // namespace qkc

#endif  // QKC_QSTATE_H
