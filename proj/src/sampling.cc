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

#include <random>

#include "qkc/error.h"

namespace qkc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t parity_count(const ShotRecord &r) {
    return static_cast<std::int64_t>(r.counts[0] + r.counts[3]) - static_cast<std::int64_t>(r.counts[1] + r.counts[2]);
}

}  // namespace

ShotRecord ShotRecord::from_counts(std::array<std::uint64_t, 4> counts, std::uint64_t seed) {
    ShotRecord r;
    r.counts = counts;
    r.shots = counts[0] + counts[1] + counts[2] + counts[3];
    r.seed = seed;
    return r;
}

double ShotRecord::empirical_mean(int label_width) const {
    if (shots == 0) {
        throw Error(ErrorCode::InsufficientShots, "record holds no shots");
    }
    return label_width * static_cast<double>(parity_count(*this)) / static_cast<double>(shots);
}

std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(base + stream);
}

ShotRecord sample(const OutcomeDistribution &p, std::uint64_t shots, std::uint64_t seed) {
    p.validate();
    if (shots < 1) {
        throw Error(ErrorCode::InsufficientShots, "at least one shot is required");
    }
    std::array<double, 4> cumulative{};
    double acc = 0;
    int last_nonzero = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        acc += p.p[k];
        cumulative[k] = acc;
        if (p.p[k] > 0) {
            last_nonzero = static_cast<int>(k);
        }
    }
    std::mt19937_64 rng(splitmix64(seed));
    ShotRecord r;
    r.shots = shots;
    r.seed = seed;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng);
        int outcome = last_nonzero;
        for (int k = 0; k < last_nonzero; ++k) {
            if (u < cumulative[static_cast<std::size_t>(k)] && p.p[static_cast<std::size_t>(k)] > 0) {
                outcome = k;
                break;
            }
        }
        ++r.counts[static_cast<std::size_t>(outcome)];
    }
    return r;
}

Label decide_mean(const ShotRecord &record, int label_width) {
    if (record.shots == 0) {
        throw Error(ErrorCode::InsufficientShots, "record holds no shots");
    }
    if (label_width < 1) {
        throw Error(ErrorCode::InvalidArgument, "label width must be at least 1");
    }
    const auto diff = parity_count(record);
    if (diff == 0) {
        return Label::Abstain;
    }
    return diff > 0 ? Label::Zero : Label::One;
}

Label decide_majority(const ShotRecord &record, int label_width) {
    if (label_width != 1) {
        throw Error(ErrorCode::LabelWidthUnsupported, "majority vote is defined for a one-qubit label");
    }
    if (record.shots == 0) {
        throw Error(ErrorCode::InsufficientShots, "record holds no shots");
    }
    const std::uint64_t plus = record.counts[0] + record.counts[3];
    const std::uint64_t minus = record.shots - plus;
    if (plus > minus) {
        return Label::Zero;
    }
    if (plus < minus) {
        return Label::One;
    }
    return Label::Abstain;
}

MomentsReport empirical_moments(const ShotRecord &record, int label_width) {
    if (record.shots < 2) {
        throw Error(ErrorCode::InsufficientShots, "empirical moments need at least two shots");
    }
    OutcomeDistribution freq;
    for (std::size_t k = 0; k < 4; ++k) {
        freq.p[k] = static_cast<double>(record.counts[k]) / static_cast<double>(record.shots);
    }
    return moments_from_distribution(freq, label_width);
}

}  // namespace qkc
