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

#include "qkc/optim.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qkc/error.h"

namespace qkc {

namespace {

// g(t0, t1, phi) = W c0 c1 - s0 s1 B(phi), B = R cos(phi) - I sin(phi), and
// its first and second partials. The objective is g^2.
struct Expansion {
    double value;
    Eigen::Vector3d grad;
    Eigen::Matrix3d hess;
};

Expansion expand(const KernelSums &k, const Angles &a) {
    const double c0 = std::cos(a.theta0), s0 = std::sin(a.theta0);
    const double c1 = std::cos(a.theta1), s1 = std::sin(a.theta1);
    const double b = k.real_sum * std::cos(a.phi) - k.imag_sum * std::sin(a.phi);
    const double db = -k.real_sum * std::sin(a.phi) - k.imag_sum * std::cos(a.phi);
    const double w = k.weight_sum;

    Expansion e;
    e.value = w * c0 * c1 - s0 * s1 * b;
    e.grad << -w * s0 * c1 - c0 * s1 * b, -w * c0 * s1 - s0 * c1 * b, -s0 * s1 * db;
    const double g01 = w * s0 * s1 - c0 * c1 * b;
    const double g0p = -c0 * s1 * db;
    const double g1p = -s0 * c1 * db;
    const double gpp = s0 * s1 * b;
    e.hess << -e.value, g01, g0p, g01, -e.value, g1p, g0p, g1p, gpp;
    return e;
}

}  // namespace

double objective(const KernelSums &sums, const Angles &angles) {
    const double g = sums.expectation(angles);
    return g * g;
}

AngleGradient gradient(const KernelSums &sums, const Angles &angles) {
    const auto e = expand(sums, angles);
    return {2 * e.value * e.grad[0], 2 * e.value * e.grad[1], 2 * e.value * e.grad[2]};
}

Eigen::Matrix3d objective_hessian(const KernelSums &sums, const Angles &angles) {
    const auto e = expand(sums, angles);
    return 2 * (e.grad * e.grad.transpose() + e.value * e.hess);
}

double objective(const LabeledDataset &data, const Angles &angles, Variant variant, int copies) {
    return objective(kernel_sums(data, variant, copies), angles);
}

AngleGradient gradient(const LabeledDataset &data, const Angles &angles, Variant variant, int copies) {
    return gradient(kernel_sums(data, variant, copies), angles);
}

Eigen::Matrix3d objective_hessian(const LabeledDataset &data, const Angles &angles, Variant variant, int copies) {
    return objective_hessian(kernel_sums(data, variant, copies), angles);
}

CriticalPointReport hessian_test(const LabeledDataset &data, const Angles &angles, Variant variant, int copies,
                                 bool full_hessian) {
    const auto sums = kernel_sums(data, variant, copies);
    CriticalPointReport r;
    r.angles = angles;
    r.gradient = gradient(sums, angles);
    r.kernel_sum = sums.real_sum;
    r.weight_sum = sums.weight_sum;

    const Eigen::Matrix3d h = objective_hessian(sums, angles);
    const bool restricted = !full_hessian && std::abs(std::sin(angles.phi)) < 1e-12;
    r.hessian = restricted ? Eigen::MatrixXd(h.topLeftCorner<2, 2>()) : Eigen::MatrixXd(h);

    const double grad_norm = std::sqrt(r.gradient[0] * r.gradient[0] + r.gradient[1] * r.gradient[1] +
                                       r.gradient[2] * r.gradient[2]);
    // Relative to the largest 2x2 entry, since the entries scale as R^2.
    const double scale = std::max({std::abs(h(0, 0)), std::abs(h(1, 1)), std::abs(h(0, 1)), 1e-300});
    constexpr double kRelTol = 1e-10;
    r.critical = grad_norm < 1e-9;
    r.curvature_condition = h(0, 0) <= kRelTol * scale && h(1, 1) <= kRelTol * scale &&
                            std::abs(h(0, 0) - h(1, 1)) <= kRelTol * scale;
    r.determinant_condition = h(0, 0) * h(1, 1) - h(0, 1) * h(0, 1) > kRelTol * scale * scale;
    r.datum_condition = std::abs(sums.real_sum) > std::abs(sums.weight_sum);
    r.classification_possible = std::abs(sums.real_sum) >= kAbstainTol;
    r.classification_valid =
        !(std::abs(std::sin(angles.theta0)) < 1e-12 && std::abs(std::sin(angles.theta1)) < 1e-12);
    r.certified_local_max = r.critical && r.curvature_condition && r.determinant_condition &&
                            r.classification_possible && r.classification_valid;
    return r;
}

AngleGrid AngleGrid::uniform(std::size_t n_theta0, std::size_t n_theta1, std::size_t n_phi) {
    auto axis = [](std::size_t n) {
        std::vector<double> v(n, 0.0);
        for (std::size_t i = 0; i < n && n > 1; ++i) {
            v[i] = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1);
        }
        return v;
    };
    return AngleGrid{axis(n_theta0), axis(n_theta1), axis(n_phi)};
}

AngleGrid AngleGrid::single(const Angles &angles) {
    return AngleGrid{{angles.theta0}, {angles.theta1}, {angles.phi}};
}

AngleScan angle_scan(const LabeledDataset &data, const AngleGrid &grid, Variant variant, int copies,
                     int label_width) {
    if (grid.size() == 0) {
        throw Error(ErrorCode::InvalidArgument, "angle grid is empty");
    }
    if (label_width < 1) {
        throw Error(ErrorCode::InvalidArgument, "label width must be at least 1");
    }
    const auto sums = kernel_sums(data, variant, copies);
    const double lam2 = static_cast<double>(label_width) * label_width;
    AngleScan scan;
    scan.rows.reserve(grid.size());
    for (double t0 : grid.theta0) {
        for (double t1 : grid.theta1) {
            for (double ph : grid.phi) {
                Angles a{t0, t1, ph};
                const double obj = objective(sums, a);
                scan.rows.push_back(ScanRow{a, obj, lam2 * (1 - obj)});
                if (obj > scan.rows[scan.best_index].objective) {
                    scan.best_index = scan.rows.size() - 1;
                }
            }
        }
    }
    return scan;
}

}  // namespace qkc
