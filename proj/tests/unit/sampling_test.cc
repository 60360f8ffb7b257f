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

#include "qkc/sampling.h"

#include <set>

#include "gtest/gtest.h"
#include "unit/test_util.h"

namespace qkc {
namespace {

using testing::distribution_with_score;

TEST(Sample, DeterministicInSeed) {
    const auto p = distribution_with_score(0.3);
    const auto a = sample(p, 5000, 42);
    const auto b = sample(p, 5000, 42);
    const auto c = sample(p, 5000, 43);
    EXPECT_EQ(a, b);
    EXPECT_NE(a.counts, c.counts);
    EXPECT_EQ(a.shots, 5000u);
    EXPECT_EQ(a.seed, 42u);
    EXPECT_EQ(a.counts[0] + a.counts[1] + a.counts[2] + a.counts[3], 5000u);
}

TEST(Sample, PinnedStream) {
    // Guards the generator definition: a change here breaks reproducibility of stored reports.
    const auto r = sample(OutcomeDistribution::from_probabilities(0.25, 0.25, 0.25, 0.25), 1000, 7);
    EXPECT_EQ(r.counts, (std::array<std::uint64_t, 4>{247, 248, 240, 265}));
    EXPECT_EQ(stream_seed(9, 3), 10682531704454680323u);
    EXPECT_EQ(kRngName, "mt19937_64/splitmix64-v1");
}

TEST(Sample, FrequenciesConverge) {
    const auto p = OutcomeDistribution::from_probabilities(0.1, 0.2, 0.3, 0.4);
    const std::uint64_t n = 400000;
    const auto r = sample(p, n, 1);
    for (int o = 0; o < 4; ++o) {
        const double sd = std::sqrt(p.p[o] * (1 - p.p[o]) / n);
        EXPECT_NEAR(static_cast<double>(r.counts[o]) / n, p.p[o], 5 * sd);
    }
}

TEST(Sample, ZeroProbabilityCellsNeverFire) {
    const auto p = OutcomeDistribution::from_probabilities(0.5, 0, 0.5, 0);
    const auto r = sample(p, 10000, 3);
    EXPECT_EQ(r.counts[1], 0u);
    EXPECT_EQ(r.counts[3], 0u);
}

TEST(Sample, RequiresShots) {
    EXPECT_QKC_ERROR(sample(distribution_with_score(0.1), 0, 1), ErrorCode::InsufficientShots);
}

TEST(StreamSeed, DistinctStreams) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        seen.insert(stream_seed(9, s));
    }
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(stream_seed(9, 3), stream_seed(9, 3));
}

TEST(ShotRecord, EmpiricalMean) {
    const auto r = ShotRecord::from_counts({5, 1, 2, 2});
    EXPECT_DOUBLE_EQ(r.empirical_mean(1), 0.4);
    EXPECT_DOUBLE_EQ(r.empirical_mean(3), 1.2);
    EXPECT_EQ(r.shots, 10u);
}

TEST(Decide, MeanAndMajorityRules) {
    EXPECT_EQ(decide_mean(ShotRecord::from_counts({5, 1, 2, 2}), 1), Label::Zero);
    EXPECT_EQ(decide_mean(ShotRecord::from_counts({1, 5, 2, 2}), 2), Label::One);
    EXPECT_EQ(decide_mean(ShotRecord::from_counts({2, 2, 1, 1}), 1), Label::Abstain);
    EXPECT_EQ(decide_majority(ShotRecord::from_counts({5, 1, 2, 2})), Label::Zero);
    EXPECT_EQ(decide_majority(ShotRecord::from_counts({1, 5, 2, 1})), Label::One);
    EXPECT_EQ(decide_majority(ShotRecord::from_counts({3, 3, 0, 0})), Label::Abstain);
    EXPECT_QKC_ERROR(decide_majority(ShotRecord::from_counts({3, 3, 0, 0}), 2), ErrorCode::LabelWidthUnsupported);
    EXPECT_QKC_ERROR(decide_mean(ShotRecord::from_counts({0, 0, 0, 0}), 1), ErrorCode::InsufficientShots);
}

TEST(Decide, RulesAgreeForOneLabelQubit) {
    testing::Gen gen(41);
    for (int trial = 0; trial < 500; ++trial) {
        std::array<std::uint64_t, 4> c{};
        for (auto &x : c) {
            x = static_cast<std::uint64_t>(gen.integer(0, 20));
        }
        if (c[0] + c[1] + c[2] + c[3] == 0) {
            continue;
        }
        const auto r = ShotRecord::from_counts(c);
        EXPECT_EQ(decide_mean(r, 1), decide_majority(r));
    }
}

TEST(EmpiricalMoments, ConvergeToExact) {
    const auto p = distribution_with_score(0.4);
    const auto r = sample(p, 200000, 5);
    const auto m = empirical_moments(r, 2);
    EXPECT_NEAR(m.mean, 0.8, 0.02);
    EXPECT_NEAR(m.variance, 4 * (1 - 0.16), 0.03);
    EXPECT_EQ(m.second_moment, 4);
    EXPECT_QKC_ERROR(empirical_moments(ShotRecord::from_counts({1, 0, 0, 0}), 1), ErrorCode::InsufficientShots);
}

}  // namespace
}  // namespace qkc
