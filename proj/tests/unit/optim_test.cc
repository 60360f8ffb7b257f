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

#include <numbers>

#include "gtest/gtest.h"
#include "unit/test_util.h"

namespace qkc {
namespace {

using testing::Gen;

constexpr double kPi = std::numbers::pi;

Angles shifted(Angles a, int axis, double h) {
    (axis == 0 ? a.theta0 : axis == 1 ? a.theta1 : a.phi) += h;
    return a;
}

// Central differences of the objective through the oracle score.
std::array<double, 3> fd_gradient(const LabeledDataset &d, const Angles &a, Variant v, int k, double h = 1e-5) {
    std::array<double, 3> g{};
    for (int i = 0; i < 3; ++i) {
        const double up = testing::oracle_score(d, shifted(a, i, h), v, k);
        const double dn = testing::oracle_score(d, shifted(a, i, -h), v, k);
        g[static_cast<std::size_t>(i)] = (up * up - dn * dn) / (2 * h);
    }
    return g;
}

// Dataset with only real overlaps: STC, or HTC over real amplitudes.
LabeledDataset real_dataset(Gen &gen, Variant v) {
    if (v == Variant::Stc) {
        return gen.dataset(gen.integer(1, 4), gen.integer(1, 2), true);
    }
    return gen.real_dataset(gen.integer(1, 4), 2);
}

TEST(Gradient, VanishesAtHadamardPointOnToy) {
    for (double theta : {0.0, 0.3, kPi / 2, 2.0, 4.0}) {
        const auto g = gradient(toy_dataset(theta), kHadamardAngles, Variant::Stc);
        EXPECT_LT(std::hypot(g[0], g[1], g[2]), 1e-9);
    }
}

TEST(Gradient, MatchesFiniteDifferences) {
    Gen gen(61);
    for (int trial = 0; trial < 100; ++trial) {
        const Variant v = trial % 2 ? Variant::Htc : Variant::Stc;
        const int k = v == Variant::Stc ? gen.integer(1, 2) : 1;
        auto data = gen.dataset(gen.integer(1, 4), gen.integer(0, 2), v == Variant::Stc);
        const auto a = gen.angles();
        const auto g = gradient(data, a, v, k);
        const auto fd = fd_gradient(data, a, v, k);
        for (int i = 0; i < 3; ++i) {
            EXPECT_NEAR(g[static_cast<std::size_t>(i)], fd[static_cast<std::size_t>(i)], 1e-6);
        }
        EXPECT_NEAR(objective(data, a, v, k), std::pow(testing::oracle_score(data, a, v, k), 2), 1e-12);
    }
}

TEST(Hessian, MatchesFiniteDifferencesOfGradient) {
    Gen gen(62);
    const double h = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        const Variant v = trial % 2 ? Variant::Htc : Variant::Stc;
        auto data = gen.dataset(gen.integer(1, 4), 1, v == Variant::Stc);
        const auto a = gen.angles();
        const auto hess = objective_hessian(data, a, v);
        for (int i = 0; i < 3; ++i) {
            const auto up = gradient(data, shifted(a, i, h), v);
            const auto dn = gradient(data, shifted(a, i, -h), v);
            for (int j = 0; j < 3; ++j) {
                const double fd = (up[static_cast<std::size_t>(j)] - dn[static_cast<std::size_t>(j)]) / (2 * h);
                EXPECT_NEAR(hess(j, i), fd, 1e-6);
            }
        }
        EXPECT_LT((hess - hess.transpose()).norm(), 1e-12);
    }
}

TEST(HessianTest, ClosedFormAtHadamardPoint) {
    // H = 2R [[-R, W], [W, -R]] at (pi/2, pi/2, pi).
    Gen gen(63);
    for (int trial = 0; trial < 50; ++trial) {
        auto data = gen.dataset(gen.integer(1, 4), 1, true);
        const auto r = hessian_test(data, kHadamardAngles, Variant::Stc);
        ASSERT_EQ(r.hessian.rows(), 2);
        const double R = r.kernel_sum;
        const double W = r.weight_sum;
        EXPECT_NEAR(r.hessian(0, 0), -2 * R * R, 1e-12);
        EXPECT_NEAR(r.hessian(1, 1), -2 * R * R, 1e-12);
        EXPECT_NEAR(r.hessian(0, 1), 2 * R * W, 1e-12);
        EXPECT_TRUE(r.critical);
        if (std::abs(std::abs(R) - std::abs(W)) > 1e-6 && std::abs(R) > 1e-6) {
            EXPECT_EQ(r.certified_local_max, r.datum_condition);
        }
    }
}

TEST(HessianTest, ToyDataset) {
    const auto r = hessian_test(toy_dataset(kPi / 2), kHadamardAngles, Variant::Stc);
    EXPECT_NEAR(r.weight_sum, 0, 1e-15);
    EXPECT_NEAR(r.kernel_sum, 0.5, 1e-15);
    EXPECT_TRUE(r.datum_condition);
    EXPECT_TRUE(r.curvature_condition);
    EXPECT_TRUE(r.determinant_condition);
    EXPECT_TRUE(r.certified_local_max);

    const auto flat = hessian_test(toy_dataset(0), kHadamardAngles, Variant::Stc);
    EXPECT_FALSE(flat.classification_possible);
    EXPECT_FALSE(flat.certified_local_max);

    const auto full = hessian_test(toy_dataset(kPi / 2), kHadamardAngles, Variant::Stc, 1, true);
    EXPECT_EQ(full.hessian.rows(), 3);
    const auto off = hessian_test(toy_dataset(kPi / 2), Angles{kPi / 2, kPi / 2, 1.0}, Variant::Stc);
    EXPECT_EQ(off.hessian.rows(), 3);
}

TEST(HessianTest, ComplexOverlapsMoveTheCriticalPoint) {
    // dg/dphi = -I at the Hadamard point, so a nonzero imaginary sum breaks stationarity.
    Gen gen(68);
    auto data = gen.dataset(3, 1, false);
    const auto sums = kernel_sums(data, Variant::Htc);
    ASSERT_GT(std::abs(sums.imag_sum), 1e-3);
    const auto r = hessian_test(data, kHadamardAngles, Variant::Htc);
    EXPECT_FALSE(r.critical);
    EXPECT_FALSE(r.certified_local_max);
    EXPECT_NEAR(r.gradient[2], -2 * sums.real_sum * sums.imag_sum, 1e-12);
}

TEST(HessianTest, UnanimousLabelsFailDatumCondition) {
    Gen gen(64);
    auto data = gen.dataset(3, 1, false);
    data.labels = {0, 0, 0};
    const auto r = hessian_test(data, kHadamardAngles, Variant::Stc);
    EXPECT_NEAR(r.weight_sum, 1, 1e-12);
    EXPECT_FALSE(r.datum_condition);
    EXPECT_FALSE(r.certified_local_max);
}

TEST(HessianTest, ZeroAnglesAreNotAValidClassifier) {
    // (0, 0) gives H = 2W [[-W, R], [R, -W]] but carries no kernel information.
    Gen gen(65);
    auto data = gen.dataset(3, 1, false);
    const auto r = hessian_test(data, Angles{0, 0, kPi}, Variant::Stc);
    EXPECT_FALSE(r.classification_valid);
    EXPECT_FALSE(r.certified_local_max);
    EXPECT_NEAR(r.hessian(0, 0), -2 * r.weight_sum * r.weight_sum, 1e-12);
    EXPECT_NEAR(r.hessian(0, 1), 2 * r.weight_sum * r.kernel_sum, 1e-12);
}

TEST(AngleScan, HadamardPointIsGridMaximumUnderDatumCondition) {
    Gen gen(66);
    const auto grid = AngleGrid::uniform(17, 17, 17);
    int checked = 0;
    for (int trial = 0; trial < 60 && checked < 20; ++trial) {
        const Variant v = trial % 2 ? Variant::Htc : Variant::Stc;
        auto data = real_dataset(gen, v);
        const auto sums = kernel_sums(data, v);
        if (std::abs(sums.real_sum) <= std::abs(sums.weight_sum)) {
            continue;
        }
        ++checked;
        const auto scan = angle_scan(data, grid, v);
        const double at_h = objective(data, kHadamardAngles, v);
        EXPECT_LE(scan.rows[scan.best_index].objective, at_h + 1e-9);
    }
    EXPECT_GE(checked, 5);
}

TEST(AngleScan, ZeroAnglesWinWhenWeightsDominate) {
    Gen gen(67);
    auto data = gen.dataset(3, 1, false);
    data.labels = {0, 0, 0};
    const auto scan = angle_scan(data, AngleGrid::uniform(9, 9, 9), Variant::Stc);
    EXPECT_NEAR(scan.rows[scan.best_index].objective, 1, 1e-12);
    EXPECT_GT(scan.rows[scan.best_index].objective, objective(data, kHadamardAngles, Variant::Stc) + 1e-3);
}

TEST(AngleScan, LayoutAndVariance) {
    const auto grid = AngleGrid::uniform(3, 4, 5);
    EXPECT_EQ(grid.size(), 60u);
    EXPECT_DOUBLE_EQ(grid.phi.back(), 2 * kPi);
    const auto scan = angle_scan(toy_dataset(1.0), grid, Variant::Stc, 1, 2);
    ASSERT_EQ(scan.rows.size(), 60u);
    EXPECT_EQ(scan.rows[1].angles.phi, grid.phi[1]);
    EXPECT_EQ(scan.rows[5].angles.theta1, grid.theta1[1]);
    for (const auto &row : scan.rows) {
        EXPECT_NEAR(row.variance, 4 * (1 - row.objective), 1e-12);
        EXPECT_LE(row.objective, scan.rows[scan.best_index].objective);
    }
    const auto one = angle_scan(toy_dataset(1.0), AngleGrid::single(kHadamardAngles), Variant::Stc);
    EXPECT_NEAR(one.rows[0].objective, std::pow(std::sin(1.0) / 2, 2), 1e-14);
    EXPECT_QKC_ERROR(angle_scan(toy_dataset(1.0), AngleGrid{}, Variant::Stc), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace qkc
