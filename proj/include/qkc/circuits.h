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

#ifndef QKC_CIRCUITS_H
#define QKC_CIRCUITS_H

#include <array>
#include <numbers>
#include <string>
#include <vector>

#include "qkc/qstate.h"

namespace qkc {

enum class Variant { Htc, Stc };

std::string_view variant_name(Variant variant);

/// Ancilla preparation angle theta0 with relative phase phi, and the final
/// R_y(theta1) interference angle.
struct Angles {
    double theta0 = std::numbers::pi / 2;
    double theta1 = std::numbers::pi / 2;
    double phi = std::numbers::pi;

    bool operator==(const Angles &) const = default;
};

/// The parameter point whose measurement statistics coincide with the
/// Hadamard-gate classifiers: cos(theta0) = cos(theta1) = sin(phi) = 0 with
/// sin(theta1) cos(phi) = -1.
inline constexpr Angles kHadamardAngles{};

struct ClassifierSpec {
    Variant variant = Variant::Stc;
    int copies = 1;
    int label_width = 1;
    Angles angles = kHadamardAngles;

    void validate() const;
};

struct LabeledDataset {
    std::vector<QuantumState> training;
    std::vector<int> labels;
    std::vector<double> weights;
    QuantumState test;

    /// Uniform weights a_j = 1/M.
    static LabeledDataset uniform(std::vector<QuantumState> training, std::vector<int> labels, QuantumState test);

    std::size_t size() const noexcept {
        return training.size();
    }
    int data_qubits() const;
    bool all_pure() const;

    /// EmptyDataset, WeightSumInvalid, DimensionMismatch or InvalidArgument.
    void validate() const;
};

/// Two complex training points and a test point parameterized by theta:
///   x1 = (i|0> + |1>)/sqrt2, y1 = 0
///   x2 = (i|0> - |1>)/sqrt2, y2 = 1
///   x~ = cos(theta/2)|0> - i sin(theta/2)|1>
LabeledDataset toy_dataset(double theta);

/// p(i, jbar) over ancilla outcome i and logical label jbar.
struct OutcomeDistribution {
    std::array<double, 4> p{};  // index 2 * i + jbar

    static OutcomeDistribution from_probabilities(double p00, double p01, double p10, double p11);

    double at(int ancilla, int label) const {
        return p[static_cast<std::size_t>(2 * ancilla + label)];
    }
    /// p(0,0) - p(0,1) - p(1,0) + p(1,1).
    double parity_difference() const {
        return p[0] - p[1] - p[2] + p[3];
    }
    /// Throws InvalidDistribution on negative entries or a sum off 1 by > 1e-12.
    void validate() const;
};

/// One term of the classical mixture over training index j.
struct Branch {
    double weight;
    QuantumState state;
};
using BranchMixture = std::vector<Branch>;

inline constexpr const char *kAncillaRegister = "ancilla";
inline constexpr const char *kDataRegister = "data";
inline constexpr const char *kLabelRegister = "label";
inline constexpr const char *kIndexRegister = "index";
std::string test_register(int copy);
std::string train_register(int copy);

/// Full pure state ancilla|data|label|index with the generalized ancilla
/// preparation (theta0, phi).
StateVector build_htc_state(const LabeledDataset &data, const ClassifierSpec &spec);
/// Per-j branches (cos|0>|x_j> + sin e^{i phi}|1>|x~>)|ybar_j>, index traced.
BranchMixture build_htc_branches(const LabeledDataset &data, const ClassifierSpec &spec);

/// |0><0| (x) sum_j a_j (rho~ (x) rho_j)^{(x)k} (x) |ybar_j><ybar_j|, with the
/// index register traced out. Materializes the whole matrix.
DensityMatrix build_stc_state(const LabeledDataset &data, const ClassifierSpec &spec);
/// Same mixture kept as branches. Mixed inputs are expanded over their
/// eigen-ensembles into pure branches, unless that would produce more terms
/// than a density matrix has rows.
BranchMixture build_stc_branches(const LabeledDataset &data, const ClassifierSpec &spec);

/// R_y(theta1) on the ancilla.
StateVector apply_interference(const StateVector &state, double theta1);
DensityMatrix apply_interference(const DensityMatrix &state, double theta1);
BranchMixture apply_interference(const BranchMixture &state, double theta1);

/// H . prod_i cswap(test_i, train_i | a = 1) . H on an ancilla in |0>.
StateVector apply_swap_test(const StateVector &state, int copies);
DensityMatrix apply_swap_test(const DensityMatrix &state, int copies);
BranchMixture apply_swap_test(const BranchMixture &state, int copies);

/// Swap test with the ancilla prepared as cos(theta0/2)|0> + e^{i phi}
/// sin(theta0/2)|1> and closed by R_y(theta1).
StateVector apply_generalized_swap_test(const StateVector &state, int copies, const Angles &angles);
DensityMatrix apply_generalized_swap_test(const DensityMatrix &state, int copies, const Angles &angles);
BranchMixture apply_generalized_swap_test(const BranchMixture &state, int copies, const Angles &angles);

/// cX(ancilla | label): moves the two-qubit parity onto the ancilla.
/// Throws LabelWidthUnsupported for label registers wider than one qubit.
StateVector reduce_to_single_qubit(const StateVector &state);
DensityMatrix reduce_to_single_qubit(const DensityMatrix &state);
BranchMixture reduce_to_single_qubit(const BranchMixture &state);

/// Throws NonLogicalLeakage when label patterns other than 0^l / 1^l carry
/// more than 1e-12 probability.
OutcomeDistribution outcome_distribution(const StateVector &state, int label_width);
OutcomeDistribution outcome_distribution(const DensityMatrix &state, int label_width);
OutcomeDistribution outcome_distribution(const BranchMixture &state, int label_width);

/// Single-qubit readout of the ancilla, recorded as p(i, 0) = P(ancilla = i).
OutcomeDistribution ancilla_distribution(const StateVector &state);
OutcomeDistribution ancilla_distribution(const DensityMatrix &state);
OutcomeDistribution ancilla_distribution(const BranchMixture &state);

/// sigma_z(ancilla) (x) sum_i sigma_z(label_i).
Observable classifier_observable(const RegisterLayout &layout);
/// sigma_z on the ancilla only.
Observable ancilla_observable(const RegisterLayout &layout);

double mixture_expectation(const BranchMixture &state, const Observable &observable);

/// Post-interference, pre-measurement state as per-j branches.
BranchMixture final_state(const LabeledDataset &data, const ClassifierSpec &spec);
/// Post-interference state from the fully materialized construction: the
/// full HTC pure state (index included) or the full STC density matrix.
QuantumState final_state_materialized(const LabeledDataset &data, const ClassifierSpec &spec);

/// Simulated <sigma_z^(a) (x) A_lambda> via the branch path.
double circuit_expectation(const LabeledDataset &data, const ClassifierSpec &spec);

}  // namespace qkc

#endif  // QKC_CIRCUITS_H
