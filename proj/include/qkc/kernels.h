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

#ifndef QKC_KERNELS_H
#define QKC_KERNELS_H

#include <vector>

#include "qkc/circuits.h"

namespace qkc {

inline constexpr double kAbstainTol = 1e-12;

enum class Label { Zero, One, Abstain };

std::string_view label_name(Label label);

/// Label (1 - sgn f) / 2, abstaining when |f| < kAbstainTol.
Label assign_label(double score);

/// Re<x_j|x~>.
double htc_kernel(const StateVector &training, const StateVector &test);
/// Tr(rho~ rho_j)^k; pure inputs are promoted, giving |<x~|x_j>|^{2k}.
double stc_kernel(const QuantumState &training, const QuantumState &test, int copies);

struct ScoreReport {
    double score = 0;              // f = sum_j a_j (-1)^{y_j} k(x_j, x~)
    std::vector<double> kernels;   // k(x_j, x~) per training point
    double expectation = 0;        // <M_lambda> = lambda f
    int label_width = 1;
    Label label = Label::Abstain;
};

ScoreReport classification_score(const LabeledDataset &data, const ClassifierSpec &spec);

/// Signed sums over the training set that fully determine the generalized
/// expectation:
///   weight_sum = sum_j a_j (-1)^{y_j}
///   real_sum   = sum_j a_j (-1)^{y_j} Re<x_j|x~>   (HTC) or Tr(rho~ rho_j)^k (STC)
///   imag_sum   = sum_j a_j (-1)^{y_j} Im<x_j|x~>   (HTC only, 0 for STC)
struct KernelSums {
    double weight_sum = 0;
    double real_sum = 0;
    double imag_sum = 0;

    /// W cos(t0) cos(t1) - sin(t0) sin(t1) (cos(phi) R - sin(phi) I).
    double expectation(const Angles &angles) const;
};

KernelSums kernel_sums(const LabeledDataset &data, Variant variant, int copies = 1);

/// Two-qubit <sigma_z^(a) sigma_z^(l)> for arbitrary interference angles.
double general_expectation(const LabeledDataset &data, const Angles &angles, Variant variant, int copies = 1);

/// <sigma_z^(a) (x) A_lambda> = lambda times the generalized two-qubit value.
double general_observable_expectation(const LabeledDataset &data, const ClassifierSpec &spec);

}  // namespace qkc

#endif  // QKC_KERNELS_H
