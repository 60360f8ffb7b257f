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

#include "qkc/moments.h"

#include <cmath>
#include <limits>

#include "qkc/error.h"

namespace qkc {

namespace {

void check_width(int label_width) {
    if (label_width < 1) {
        throw Error(ErrorCode::InvalidArgument, "label width must be at least 1");
    }
}

void check_score(double score) {
    if (!std::isfinite(score) || std::abs(score) > 1.0 + 1e-12) {
        throw Error(ErrorCode::ScoreOutOfRange, "classification score must lie in [-1, 1]");
    }
}

}  // namespace

MomentsReport moments_from_distribution(const OutcomeDistribution &p, int label_width) {
    check_width(label_width);
    p.validate();
    const double lam = label_width;
    const double parity = p.parity_difference();
    MomentsReport r;
    r.label_width = label_width;
    r.mean = lam * parity;
    // Every eigenvalue squares to lambda^2.
    r.second_moment = lam * lam;
    r.third_moment = lam * lam * lam * parity;
    r.variance = std::max(0.0, r.second_moment - r.mean * r.mean);
    if (r.variance > 1e-12 * r.second_moment) {
        r.skewness = (r.third_moment - 3 * r.mean * r.variance - r.mean * r.mean * r.mean) /
                     std::pow(r.variance, 1.5);
    }
    return r;
}

double variance_of_score(double score, int label_width) {
    check_score(score);
    check_width(label_width);
    const double lam = label_width;
    return std::max(0.0, lam * lam * (1 - score * score));
}

double skewness_of_score(double score) {
    check_score(score);
    if (std::abs(score) >= 1.0) {
        throw Error(ErrorCode::DegenerateDistribution, "skewness is undefined at |f| = 1");
    }
    return -2 * score / std::sqrt(1 - score * score);
}

std::uint64_t ceil_count(double x) {
    if (std::isnan(x) || x >= 1.8e19) {
        throw Error(ErrorCode::InvalidArgument, "repetition count overflows");
    }
    if (x <= 0) {
        return 0;
    }
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)) {
        return static_cast<std::uint64_t>(nearest);
    }
    return static_cast<std::uint64_t>(std::ceil(x));
}

ShotPlan plan_shots(double score, int label_width, double ratio, double delta) {
    check_score(score);
    check_width(label_width);
    if (!(ratio > 1) || !std::isfinite(ratio)) {
        throw Error(ErrorCode::InvalidArgument, "precision ratio c must exceed 1");
    }
    if (!(delta > 0 && delta < 1)) {
        throw Error(ErrorCode::InvalidArgument, "failure bound must lie in (0, 1)");
    }
    if (std::abs(score) < 1e-12) {
        throw Error(ErrorCode::UndecidableScore, "no repetition count can resolve the sign of f = 0");
    }
    const double mean = label_width * score;
    const double variance = variance_of_score(score, label_width);
    ShotPlan plan;
    plan.ratio = ratio;
    plan.delta = delta;
    plan.epsilon = std::abs(mean) / ratio;
    plan.shots = std::max<std::uint64_t>(1, ceil_count(variance * ratio * ratio / (delta * mean * mean)));
    return plan;
}

}  // namespace qkc
