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

#ifndef QKC_EXPERIMENT_H
#define QKC_EXPERIMENT_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qkc/error.h"
#include "qkc/kernels.h"
#include "qkc/noise.h"
#include "qkc/optim.h"
#include "qkc/sampling.h"

namespace qkc {

inline constexpr int kSchemaVersion = 1;

/// Bit-exact CSV column order of experiment reports.
inline constexpr std::string_view kReportColumns[] = {
    "sweep_param",   "sweep_value",    "f_analytic", "expectation",    "variance",
    "skewness",      "shots_planned",  "shots_used", "empirical_mean", "label_mean",
    "label_majority", "noise_scale",   "seed",
};

enum class Readout {
    TwoQubit,     // sigma_z^(a) (x) A_lambda on ancilla and label
    SingleQubit,  // cX(a|l) followed by sigma_z on the ancilla alone
};

enum class OutputFormat { Csv, Json };

struct ShotSettings {
    std::uint64_t count = kDefaultShots;
    std::uint64_t seed = 0;
    std::uint64_t repetitions = 1;
    double precision_ratio = 2.0;
    double failure_bound = kDefaultFailureBound;
};

struct SweepSpec {
    std::string parameter;  // theta, p, theta0, theta1, phi, shots, k_copies, lambda
    double start = 0;
    double stop = 0;
    std::size_t steps = 1;

    std::vector<double> values() const;
};

struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    /// Built-in two-point example with test angle theta; exclusive with `dataset`.
    std::optional<double> toy_theta;
    std::optional<LabeledDataset> dataset;
    ClassifierSpec classifier;
    Readout readout = Readout::TwoQubit;
    std::optional<NoiseSpec> noise;
    ShotSettings shots;
    std::optional<SweepSpec> sweep;
    std::optional<std::filesystem::path> output_path;
    OutputFormat format = OutputFormat::Csv;
};

struct Diagnostic {
    std::string field;
    std::string message;
};

std::string format_diagnostics(const std::vector<Diagnostic> &diagnostics);

class ConfigError : public Error {
   public:
    explicit ConfigError(std::vector<Diagnostic> diagnostics);

    const std::vector<Diagnostic> &diagnostics() const noexcept {
        return diagnostics_;
    }

   private:
    std::vector<Diagnostic> diagnostics_;
};

/// Parses a JSON config document. Relative dataset files resolve against
/// `base_dir`. Problems are appended to `diagnostics`; the result is only
/// meaningful when none were added.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path &base_dir,
                              std::vector<Diagnostic> &diagnostics);

/// Semantic checks across every sweep point.
std::vector<Diagnostic> check_config(const ExperimentConfig &config);

/// Every violated invariant of the config file; empty means runnable.
std::vector<Diagnostic> validate_config_file(const std::filesystem::path &path);

/// Throws ConfigError listing every diagnostic.
ExperimentConfig load_config(const std::filesystem::path &path);

struct ReportRow {
    std::string sweep_param;
    std::optional<double> sweep_value;
    double f_analytic = 0;
    double expectation = 0;
    double variance = 0;
    std::optional<double> skewness;
    std::optional<std::uint64_t> shots_planned;
    std::uint64_t shots_used = 0;
    double empirical_mean = 0;
    Label label_mean = Label::Abstain;
    std::optional<Label> label_majority;
    std::optional<double> noise_scale;
    std::uint64_t seed = 0;
};

/// Rows in sweep-then-repetition order. Throws ConfigError when
/// check_config reports anything. `jobs` > 1 evaluates sweep points
/// concurrently without changing the output.
std::vector<ReportRow> run_experiment(const ExperimentConfig &config, unsigned jobs = 1);

/// Noiseless toy sweep over theta in [0, 2 pi] with single-qubit readout,
/// one row per (theta, seed stream).
ExperimentConfig toy_repro_config(std::uint64_t shots, std::uint64_t seed, std::uint64_t seeds,
                                  std::size_t steps = 41);

std::string format_double(double value);
std::string format_csv(const std::vector<ReportRow> &rows);
std::string format_json(const std::vector<ReportRow> &rows);

std::string format_angle_scan_csv(const AngleScan &scan);
std::string format_angle_scan_json(const AngleScan &scan);

}  // namespace qkc

#endif  // QKC_EXPERIMENT_H
