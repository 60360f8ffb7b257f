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

#ifndef QKC_OPTIM_H
#define QKC_OPTIM_H

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qkc/kernels.h"

namespace qkc {

/// Partial derivatives ordered (theta0, theta1, phi).
using AngleGradient = std::array<double, 3>;

/// <sigma_z^(a) sigma_z^(l)>^2 as a function of the interference angles.
/// Maximizing it minimizes the variance 1 - <.>^2.
double objective(const LabeledDataset &data, const Angles &angles, Variant variant, int copies = 1);

/// Closed-form gradient of the objective.
AngleGradient gradient(const LabeledDataset &data, const Angles &angles, Variant variant, int copies = 1);

/// Closed-form 3x3 Hessian of the objective over (theta0, theta1, phi).
Eigen::Matrix3d objective_hessian(const LabeledDataset &data, const Angles &angles, Variant variant,
                                  int copies = 1);

// Same quantities from precomputed kernel sums.
double objective(const KernelSums &sums, const Angles &angles);
AngleGradient gradient(const KernelSums &sums, const Angles &angles);
Eigen::Matrix3d objective_hessian(const KernelSums &sums, const Angles &angles);

struct CriticalPointReport {
    Angles angles;
    AngleGradient gradient{};
    /// 2x2 over (theta0, theta1) when sin(phi) = 0 and the full report was not
    /// requested; 3x3 otherwise.
    Eigen::MatrixXd hessian;
    double kernel_sum = 0;  // sum_j a_j (-1)^{y_j} k_j
    double weight_sum = 0;  // sum_j a_j (-1)^{y_j}
    bool critical = false;                 // |grad| < 1e-9
    bool curvature_condition = false;      // d2f/dt0^2 = d2f/dt1^2 <= 0
    bool determinant_condition = false;    // d2f/dt0^2 d2f/dt1^2 - (d2f/dt0 dt1)^2 > 0
    bool datum_condition = false;          // |kernel_sum| > |weight_sum|
    bool classification_possible = false;  // kernel_sum != 0
    bool classification_valid = false;     // excludes the sin(t0) = sin(t1) = 0 family
    bool certified_local_max = false;
};

CriticalPointReport hessian_test(const LabeledDataset &data, const Angles &angles, Variant variant, int copies = 1,
                                 bool full_hessian = false);

struct AngleGrid {
    std::vector<double> theta0;
    std::vector<double> theta1;
    std::vector<double> phi;

    /// n points per axis spanning [0, 2 pi] inclusive.
    static AngleGrid uniform(std::size_t n_theta0, std::size_t n_theta1, std::size_t n_phi);
    static AngleGrid single(const Angles &angles);

    std::size_t size() const noexcept {
        return theta0.size() * theta1.size() * phi.size();
    }
};

struct ScanRow {
    Angles angles;
    double objective = 0;
    double variance = 0;  // lambda^2 (1 - objective)
};

struct AngleScan {
    std::vector<ScanRow> rows;  // theta0-major, phi fastest
    std::size_t best_index = 0;
};

AngleScan angle_scan(const LabeledDataset &data, const AngleGrid &grid, Variant variant, int copies = 1,
                     int label_width = 1);

}  // namespace qkc

#endif  // QKC_OPTIM_H
