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

#include "qkc/kernels.h"

#include <cmath>

#include "qkc/error.h"

namespace qkc {

std::string_view label_name(Label label) {
    switch (label) {
        case Label::Zero:
            return "0";
        case Label::One:
            return "1";
        case Label::Abstain:
            return "abstain";
    }
    return "abstain";
}

Label assign_label(double score) {
    if (!(std::abs(score) >= kAbstainTol)) {
        return Label::Abstain;
    }
    return score > 0 ? Label::Zero : Label::One;
}

double htc_kernel(const StateVector &training, const StateVector &test) {
    return inner_product(training, test).real();
}

double stc_kernel(const QuantumState &training, const QuantumState &test, int copies) {
    if (copies < 1) {
        throw Error(ErrorCode::InvalidSpec, "copies must be at least 1");
    }
    if (num_qubits(training) != num_qubits(test)) {
        throw Error(ErrorCode::DimensionMismatch, "kernel arguments differ in dimension");
    }
    double overlap;
    if (is_pure(training) && is_pure(test)) {
        overlap = std::norm(inner_product(std::get<StateVector>(training), std::get<StateVector>(test)));
    } else {
        // Tr(A B) for Hermitian A, B is the elementwise sum of A .* conj(B).
        const CMatrix a = to_density(training).entries();
        const CMatrix b = to_density(test).entries();
        overlap = (a.cwiseProduct(b.conjugate())).sum().real();
    }
    return std::pow(overlap, copies);
}

namespace {

double sign_of(int label) {
    return label == 0 ? 1.0 : -1.0;
}

}  // namespace

KernelSums kernel_sums(const LabeledDataset &data, Variant variant, int copies) {
    data.validate();
    if (variant == Variant::Htc && !data.all_pure()) {
        throw Error(ErrorCode::MixedStateUnsupported, "the Hadamard-test kernel needs pure states");
    }
    KernelSums sums;
    for (std::size_t j = 0; j < data.size(); ++j) {
        const double w = data.weights[j] * sign_of(data.labels[j]);
        sums.weight_sum += w;
        if (variant == Variant::Htc) {
            Complex z = inner_product(std::get<StateVector>(data.training[j]), std::get<StateVector>(data.test));
            sums.real_sum += w * z.real();
            sums.imag_sum += w * z.imag();
        } else {
            sums.real_sum += w * stc_kernel(data.training[j], data.test, copies);
        }
    }
    return sums;
}

double KernelSums::expectation(const Angles &angles) const {
    const double bracket = std::cos(angles.phi) * real_sum - std::sin(angles.phi) * imag_sum;
    return weight_sum * std::cos(angles.theta0) * std::cos(angles.theta1) -
           std::sin(angles.theta0) * std::sin(angles.theta1) * bracket;
}

ScoreReport classification_score(const LabeledDataset &data, const ClassifierSpec &spec) {
    spec.validate();
    data.validate();
    if (spec.variant == Variant::Htc && !data.all_pure()) {
        throw Error(ErrorCode::MixedStateUnsupported, "the Hadamard-test kernel needs pure states");
    }
    ScoreReport report;
    report.label_width = spec.label_width;
    report.kernels.reserve(data.size());
    for (std::size_t j = 0; j < data.size(); ++j) {
        double k;
        if (spec.variant == Variant::Htc) {
            k = htc_kernel(std::get<StateVector>(data.training[j]), std::get<StateVector>(data.test));
        } else {
            k = stc_kernel(data.training[j], data.test, spec.copies);
        }
        report.kernels.push_back(k);
        report.score += data.weights[j] * sign_of(data.labels[j]) * k;
    }
    report.expectation = spec.label_width * report.score;
    report.label = assign_label(report.score);
    return report;
}

double general_expectation(const LabeledDataset &data, const Angles &angles, Variant variant, int copies) {
    return kernel_sums(data, variant, copies).expectation(angles);
}

double general_observable_expectation(const LabeledDataset &data, const ClassifierSpec &spec) {
    spec.validate();
    return spec.label_width * general_expectation(data, spec.angles, spec.variant, spec.copies);
}

}  // namespace qkc
