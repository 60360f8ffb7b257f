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

#ifndef QKC_MOMENTS_H
#define QKC_MOMENTS_H

#include <cstdint>
#include <optional>

#include "qkc/circuits.h"

namespace qkc {

/// Failure probability used when none is given.
inline constexpr double kDefaultFailureBound = 0.05;

/// Moments of M_lambda = sigma_z^(a) (x) A_lambda, whose eigenvalues are
/// (-1)^{i + jbar} lambda.
struct MomentsReport {
    double mean = 0;
    double second_moment = 0;
    double variance = 0;
    double third_moment = 0;
    /// Empty when the variance vanishes (|f| = 1).
    std::optional<double> skewness;
    int label_width = 1;
};

MomentsReport moments_from_distribution(const OutcomeDistribution &p, int label_width);

/// lambda^2 (1 - f^2).
double variance_of_score(double score, int label_width);

/// -2 f / sqrt(1 - f^2). Throws DegenerateDistribution at |f| = 1.
double skewness_of_score(double score);

struct ShotPlan {
    double ratio = 0;      // c
    double delta = 0;      // failure bound
    double epsilon = 0;    // |<M_lambda>| / c
    std::uint64_t shots = 1;
};

/// Chebyshev repetition count ceil(sigma^2 c^2 / (delta <M>^2)), at least 1.
ShotPlan plan_shots(double score, int label_width, double ratio, double delta = kDefaultFailureBound);

/// ceil(x) that treats values within 1e-9 (relative) of an integer as that
/// integer, so that quotients like 3 / 0.025 land on 120 and not 121.
std::uint64_t ceil_count(double x);

}  // namespace qkc

#endif  // QKC_MOMENTS_H
