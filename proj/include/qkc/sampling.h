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

#ifndef QKC_SAMPLING_H
#define QKC_SAMPLING_H

#include <array>
#include <cstdint>
#include <string_view>

#include "qkc/kernels.h"
#include "qkc/moments.h"

namespace qkc {

/// Shot streams are std::mt19937_64 seeded through splitmix64; uniform draws
/// take the top 53 bits. Both are fully specified, so records reproduce
/// bit-for-bit across platforms.
inline constexpr std::string_view kRngName = "mt19937_64/splitmix64-v1";

inline constexpr std::uint64_t kDefaultShots = 8192;

struct ShotRecord {
    std::array<std::uint64_t, 4> counts{};  // index 2 * i + jbar
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    static ShotRecord from_counts(std::array<std::uint64_t, 4> counts, std::uint64_t seed = 0);

    /// lambda (n00 - n01 - n10 + n11) / shots.
    double empirical_mean(int label_width) const;

    bool operator==(const ShotRecord &) const = default;
};

/// Seed of the independent stream `stream` derived from `base`.
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream);

/// Multinomial draw of `shots` outcomes; deterministic in `seed`.
ShotRecord sample(const OutcomeDistribution &p, std::uint64_t shots, std::uint64_t seed);

/// Sign of the empirical mean; abstains on an exact zero.
Label decide_mean(const ShotRecord &record, int label_width);

/// Most frequent product outcome (-1)^{i + jbar}; abstains on a tie.
/// Throws LabelWidthUnsupported for label_width > 1.
Label decide_majority(const ShotRecord &record, int label_width = 1);

/// Plug-in moments from relative frequencies. Throws InsufficientShots below
/// two shots.
MomentsReport empirical_moments(const ShotRecord &record, int label_width);

}  // namespace qkc

#endif  // QKC_SAMPLING_H
