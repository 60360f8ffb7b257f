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

#ifndef QKC_NOISE_H
#define QKC_NOISE_H

#include <cstdint>
#include <optional>
#include <vector>

#include "qkc/circuits.h"

namespace qkc {

/// Channel acting on the final, pre-measurement classifier state: either a
/// depolarizing channel of rate p on the ancilla or an explicit Pauli mixture
/// sum_j c_j P_j rho P_j over every qubit.
class NoiseSpec {
   public:
    enum class Kind { Depolarizing, Pauli };

    /// Throws RateOutOfRange unless 0 <= p <= 1.
    static NoiseSpec depolarizing(double rate);
    /// Throws InvalidCoefficients unless all c_j >= 0 and sum to 1 within 1e-12,
    /// DimensionMismatch if the strings differ in width. `ancilla_qubit` is the
    /// string position read as the ancilla factor.
    static NoiseSpec pauli(std::vector<PauliTerm> terms, int ancilla_qubit = 0);

    Kind kind() const noexcept {
        return kind_;
    }
    double rate() const noexcept {
        return rate_;
    }
    const std::vector<PauliTerm> &terms() const noexcept {
        return terms_;
    }
    int ancilla_qubit() const noexcept {
        return ancilla_qubit_;
    }

    /// The channel as Pauli terms on an n-qubit state whose ancilla is qubit
    /// `ancilla`. Throws DimensionMismatch if an explicit channel has a
    /// different width.
    std::vector<PauliTerm> pauli_terms(int num_qubits, int ancilla) const;

   private:
    NoiseSpec() = default;

    Kind kind_ = Kind::Depolarizing;
    double rate_ = 0;
    std::vector<PauliTerm> terms_;
    int ancilla_qubit_ = 0;
};

struct ScaleReport {
    double scale = 1;  // C_I + C_Z - C_X - C_Y
    double c_i = 0;
    double c_x = 0;
    double c_y = 0;
    double c_z = 0;
    /// 1 / s^2 whenever s != 0.
    std::optional<double> multiplier;
    /// s < 0: the decision rule must be negated. Reported, never applied.
    bool sign_inverted = false;
};

struct OverheadReport {
    double multiplier = 1;
    bool sign_inverted = false;
};

/// Kraus sum with {sqrt(1 - 3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z} on
/// the ancilla register (qubit 0 when the layout names no ancilla).
DensityMatrix depolarize_ancilla(const DensityMatrix &state, double rate);

DensityMatrix apply_pauli_channel(const DensityMatrix &state, const NoiseSpec &spec);

ScaleReport effective_scale(const NoiseSpec &spec);

/// Throws SignDestroyed when s = 0.
OverheadReport noise_overhead(double scale);

/// ceil(base / s^2).
std::uint64_t noisy_shots(std::uint64_t base_shots, double scale);

/// Outcome distribution of channel(rho) for a branch mixture, without
/// materializing density matrices: Pauli conjugation only permutes the
/// computational-basis diagonal.
OutcomeDistribution noisy_outcome_distribution(const BranchMixture &state, const NoiseSpec &spec, int label_width);
OutcomeDistribution noisy_ancilla_distribution(const BranchMixture &state, const NoiseSpec &spec);

}  // namespace qkc

#endif  // QKC_NOISE_H
