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

#include "qkc/error.h"

namespace qkc {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroVector:
            return "ZeroVector";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::NonHermitian:
            return "NonHermitian";
        case ErrorCode::InvalidState:
            return "InvalidState";
        case ErrorCode::MixedKind:
            return "MixedKind";
        case ErrorCode::LayoutMismatch:
            return "LayoutMismatch";
        case ErrorCode::MixedStateUnsupported:
            return "MixedStateUnsupported";
        case ErrorCode::WeightSumInvalid:
            return "WeightSumInvalid";
        case ErrorCode::EmptyDataset:
            return "EmptyDataset";
        case ErrorCode::InvalidSpec:
            return "InvalidSpec";
        case ErrorCode::LabelWidthUnsupported:
            return "LabelWidthUnsupported";
        case ErrorCode::NonLogicalLeakage:
            return "NonLogicalLeakage";
        case ErrorCode::InvalidDistribution:
            return "InvalidDistribution";
        case ErrorCode::ScoreOutOfRange:
            return "ScoreOutOfRange";
        case ErrorCode::DegenerateDistribution:
            return "DegenerateDistribution";
        case ErrorCode::UndecidableScore:
            return "UndecidableScore";
        case ErrorCode::InsufficientShots:
            return "InsufficientShots";
        case ErrorCode::RateOutOfRange:
            return "RateOutOfRange";
        case ErrorCode::InvalidCoefficients:
            return "InvalidCoefficients";
        case ErrorCode::SignDestroyed:
            return "SignDestroyed";
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::ConfigInvalid:
            return "ConfigInvalid";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

}  // namespace qkc
