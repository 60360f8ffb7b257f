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

#include "qkc/experiment.h"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "unit/test_util.h"

namespace qkc {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Diagnostic> diagnose(const std::string &text, const std::filesystem::path &dir = ".") {
    std::vector<Diagnostic> diags;
    auto cfg = parse_config(text, dir, diags);
    if (diags.empty()) {
        diags = check_config(cfg);
    }
    return diags;
}

ExperimentConfig parse_ok(const std::string &text, const std::filesystem::path &dir = ".") {
    std::vector<Diagnostic> diags;
    auto cfg = parse_config(text, dir, diags);
    EXPECT_TRUE(diags.empty()) << format_diagnostics(diags);
    return cfg;
}

bool mentions(const std::vector<Diagnostic> &diags, const std::string &field, const std::string &needle) {
    for (const auto &d : diags) {
        if (d.field.find(field) != std::string::npos && d.message.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

std::vector<std::vector<std::string>> split_csv(const std::string &csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream in(line);
        while (std::getline(in, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        rows.push_back(cells);
    }
    return rows;
}

const std::string kToySweep = R"({
  "schema_version": 1,
  "dataset": {"toy": {}},
  "classifier": {"variant": "stc", "copies": 1},
  "shots": {"count": 512, "seed": 17},
  "sweep": {"parameter": "theta", "start": 0, "stop": 6.283185307179586, "steps": 41}
})";

TEST(Experiment, ToySweepAnalyticColumn) {
    const auto rows = run_experiment(parse_ok(kToySweep));
    ASSERT_EQ(rows.size(), 41u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double theta = 2 * kPi * static_cast<double>(i) / 40;
        EXPECT_EQ(rows[i].sweep_param, "theta");
        EXPECT_NEAR(*rows[i].sweep_value, theta, 1e-15);
        EXPECT_NEAR(rows[i].f_analytic, std::sin(theta) / 2, 1e-12);
        EXPECT_NEAR(rows[i].expectation, std::sin(theta) / 2, 1e-12);
        EXPECT_FALSE(rows[i].noise_scale.has_value());
        EXPECT_EQ(rows[i].shots_used, 512u);
    }
}

TEST(Experiment, DepolarizedToySweep) {
    auto cfg = parse_ok(kToySweep);
    cfg.noise = NoiseSpec::depolarizing(0.2);
    const auto rows = run_experiment(cfg);
    for (const auto &r : rows) {
        EXPECT_NEAR(r.expectation, 0.8 * std::sin(*r.sweep_value) / 2, 1e-12);
        EXPECT_NEAR(*r.noise_scale, 0.8, 1e-15);
        if (r.shots_planned) {
            EXPECT_EQ(*r.shots_planned,
                      noisy_shots(plan_shots(r.f_analytic, 1, 2, kDefaultFailureBound).shots, 0.8));
        }
    }
}

TEST(Experiment, SinglePointWithoutSweep) {
    const auto rows = run_experiment(parse_ok(R"({"schema_version": 1, "dataset": {"toy": {"theta": 1.0}}})"));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].sweep_param, "none");
    EXPECT_FALSE(rows[0].sweep_value.has_value());
    const auto csv = split_csv(format_csv(rows));
    ASSERT_EQ(csv.size(), 2u);
    EXPECT_EQ(csv[1].size(), std::size(kReportColumns));
    EXPECT_EQ(csv[1][1], "");
}

TEST(Experiment, CsvHeaderIsBitExact) {
    const auto csv = format_csv({});
    EXPECT_EQ(csv,
              "sweep_param,sweep_value,f_analytic,expectation,variance,skewness,shots_planned,shots_used,"
              "empirical_mean,label_mean,label_majority,noise_scale,seed\n");
}

TEST(Experiment, CsvRoundTripsThroughLibrary) {
    auto cfg = parse_ok(R"({
      "schema_version": 1,
      "dataset": {"training": [
          {"amplitudes": [[0.3, 0.1], 0.8, -0.2, [0, 1]], "label": 0, "weight": 0.25},
          {"amplitudes": [1, 0, 0, 0.5], "label": 1, "weight": 0.75}],
        "test": {"amplitudes": [0.5, 0.5, [0, 0.5], 0.5]}},
      "classifier": {"variant": "htc", "label_width": 2, "angles": {"theta0": 1.0, "phi": 2.0}},
      "shots": {"count": 100, "seed": 3, "repetitions": 2},
      "sweep": {"parameter": "theta1", "start": 0.5, "stop": 2.5, "steps": 3}
    })");
    const auto csv = split_csv(format_csv(run_experiment(cfg)));
    ASSERT_EQ(csv.size(), 7u);
    for (std::size_t i = 1; i < csv.size(); ++i) {
        const auto &row = csv[i];
        const double theta1 = std::stod(row[1]);
        const Angles a{1.0, theta1, 2.0};
        const double f = general_expectation(*cfg.dataset, a, Variant::Htc, 1);
        EXPECT_EQ(row[2], format_double(f));
        EXPECT_EQ(row[3], format_double(2 * f));
        EXPECT_EQ(row[4], format_double(variance_of_score(f, 2)));
        EXPECT_EQ(row[5], format_double(skewness_of_score(f)));
        EXPECT_EQ(row[6], std::to_string(plan_shots(f, 2, 2.0).shots));
        EXPECT_EQ(row[10], "");  // majority vote needs a one-qubit label
        EXPECT_EQ(row[12], std::to_string(stream_seed(3, i - 1)));
        EXPECT_EQ(std::stod(row[2]), f);  // 17 significant digits round-trip
    }
}

TEST(Experiment, DeterministicAcrossRunsAndJobs) {
    auto cfg = parse_ok(kToySweep);
    cfg.shots.repetitions = 3;
    const auto a = format_csv(run_experiment(cfg, 1));
    const auto b = format_csv(run_experiment(cfg, 1));
    const auto c = format_csv(run_experiment(cfg, 4));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    cfg.shots.seed += 1;
    EXPECT_NE(a, format_csv(run_experiment(cfg, 1)));
}

TEST(Experiment, JsonReport) {
    auto cfg = parse_ok(R"({"schema_version": 1, "dataset": {"toy": {"theta": 0}}, "shots": {"count": 10}})");
    const auto doc = nlohmann::json::parse(format_json(run_experiment(cfg)));
    ASSERT_TRUE(doc.is_array());
    ASSERT_EQ(doc.size(), 1u);
    EXPECT_TRUE(doc[0]["sweep_value"].is_null());
    EXPECT_TRUE(doc[0]["shots_planned"].is_null());  // f = 0 cannot be decided
    EXPECT_TRUE(doc[0]["noise_scale"].is_null());
    EXPECT_EQ(doc[0]["shots_used"], 10);
    EXPECT_EQ(doc[0].size(), std::size(kReportColumns));
}

TEST(Experiment, DatasetFileAndDensityInput) {
    const auto dir = std::filesystem::temp_directory_path() / "qkc_experiment_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "data.json");
        f << R"({"training": [{"density": [[0.5, 0.5], [0.5, 0.5]], "label": 0},
                              {"density": [[0.7, [0, 0.1]], [[0, -0.1], 0.3]], "label": 1}],
                 "test": {"amplitudes": [1, 0]}})";
    }
    auto cfg = parse_ok(R"({"schema_version": 1, "dataset": {"file": "data.json"},
                           "classifier": {"variant": "stc", "copies": 2}})",
                        dir);
    ASSERT_TRUE(cfg.dataset.has_value());
    EXPECT_FALSE(cfg.dataset->all_pure());
    const auto rows = run_experiment(cfg);
    EXPECT_NEAR(rows[0].f_analytic, 0.5 * 0.25 - 0.5 * 0.49, 1e-12);

    auto diags = diagnose(R"({"schema_version": 1, "dataset": {"file": "missing.json"}})", dir);
    EXPECT_TRUE(mentions(diags, "dataset.file", "cannot read"));
    auto htc = diagnose(R"({"schema_version": 1, "dataset": {"file": "data.json"}, "classifier": {"variant": "htc"}})",
                        dir);
    EXPECT_TRUE(mentions(htc, "config", "pure states"));
    std::filesystem::remove_all(dir);
}

TEST(Validate, ReferenceDiagnostics) {
    EXPECT_TRUE(diagnose(kToySweep).empty());
    auto weights = diagnose(R"({"schema_version": 1, "dataset": {
        "training": [{"amplitudes": [1, 0], "label": 0, "weight": 0.5},
                     {"amplitudes": [0, 1], "label": 1, "weight": 0.4}],
        "test": {"amplitudes": [1, 1]}}})");
    EXPECT_TRUE(mentions(weights, "dataset", "weights must sum to 1"));
    auto shots = diagnose(R"({"schema_version": 1, "dataset": {"toy": {}}, "shots": {"count": -5}})");
    EXPECT_TRUE(mentions(shots, "shots.count", "positive"));
}

TEST(Validate, ListsEveryProblem) {
    auto diags = diagnose(R"({"schema_version": 2, "dataset": {"toy": {}}, "colour": 1,
        "classifier": {"variant": "xyz", "copies": 0},
        "shots": {"seed": -1, "precision_ratio": 0.5},
        "noise": {"depolarizing": 1.5},
        "sweep": {"parameter": "temperature", "start": 0, "stop": 1}})");
    EXPECT_TRUE(mentions(diags, "schema_version", "unsupported"));
    EXPECT_TRUE(mentions(diags, "colour", "unknown key"));
    EXPECT_TRUE(mentions(diags, "classifier.variant", "htc"));
    EXPECT_TRUE(mentions(diags, "classifier.copies", "positive"));
    EXPECT_TRUE(mentions(diags, "shots.seed", "nonnegative"));
    EXPECT_TRUE(mentions(diags, "shots.precision_ratio", "exceed 1"));
    EXPECT_TRUE(mentions(diags, "noise", "rate"));
    EXPECT_TRUE(mentions(diags, "sweep.parameter", "theta"));
    EXPECT_GE(diags.size(), 8u);
}

TEST(Validate, SemanticChecks) {
    EXPECT_TRUE(mentions(diagnose(R"({"schema_version": 1, "dataset": {"training": [{"amplitudes": [1, 0], "label": 0}],
        "test": {"amplitudes": [1, 0]}}, "sweep": {"parameter": "theta", "start": 0, "stop": 1}})"),
                         "sweep", "toy dataset"));
    EXPECT_TRUE(mentions(diagnose(R"({"schema_version": 1, "dataset": {"toy": {}},
        "noise": {"pauli": [{"ops": "XIII", "coefficient": 1}]},
        "sweep": {"parameter": "p", "start": 0, "stop": 1, "steps": 3}})"),
                         "sweep", "Pauli"));
    EXPECT_TRUE(mentions(diagnose(R"({"schema_version": 1, "dataset": {"toy": {}},
        "sweep": {"parameter": "k_copies", "start": 1, "stop": 2, "steps": 3}})"),
                         "sweep", "positive integer"));
    EXPECT_TRUE(mentions(diagnose(R"({"schema_version": 1, "dataset": {"toy": {}},
        "noise": {"depolarizing": 0.1}, "classifier": {"label_width": 2}})"),
                         "config", "label_width must be 1"));
    EXPECT_TRUE(mentions(diagnose(R"({"schema_version": 1, "dataset": {"toy": {}},
        "noise": {"pauli": [{"ops": "XII", "coefficient": 1}]}})"),
                         "config", "width"));
    EXPECT_TRUE(mentions(diagnose(R"({"schema_version": 1, "dataset": {"toy": {}},
        "classifier": {"variant": "htc", "copies": 2}})"),
                         "config", "one copy"));
    EXPECT_TRUE(mentions(diagnose(R"({"schema_version": 1, "dataset": {"toy": {}},
        "classifier": {"readout": "single_qubit", "label_width": 3}})"),
                         "config", "single-qubit readout"));
    EXPECT_TRUE(mentions(diagnose(R"({"schema_version": 1, "dataset": {"toy": {}},
        "classifier": {"copies": 40}})"),
                         "config", "dense-simulation limit"));
    EXPECT_TRUE(mentions(diagnose("{not json"), "config", "invalid JSON"));
    EXPECT_TRUE(mentions(diagnose(R"({"dataset": {"toy": {}}})"), "schema_version", "required"));
    EXPECT_TRUE(mentions(diagnose(R"({"schema_version": 1})"), "dataset", "required"));
    EXPECT_TRUE(mentions(diagnose(R"({"schema_version": 1, "dataset": {"training": [{"amplitudes": [0, 0], "label": 0}],
        "test": {"amplitudes": [1, 0]}}})"),
                         "amplitudes", "ZeroVector"));
}

// Mutates a valid base config into a mix of valid and invalid documents.
std::string random_config(testing::Gen &gen) {
    nlohmann::json doc = {{"schema_version", 1}, {"dataset", {{"toy", {{"theta", gen.uniform(0, 6)}}}}}};
    const char *params[] = {"theta", "p", "theta0", "theta1", "phi", "shots", "k_copies", "lambda"};
    doc["classifier"] = {{"variant", gen.coin() ? "stc" : "htc"},
                         {"copies", gen.integer(0, 3)},
                         {"label_width", gen.integer(0, 3)},
                         {"readout", gen.coin() ? "two_qubit" : "single_qubit"}};
    doc["shots"] = {{"count", gen.integer(-2, 64)}, {"seed", gen.integer(0, 9)}};
    if (gen.coin()) {
        doc["noise"] = {{"depolarizing", gen.uniform(-0.2, 1.2)}};
    } else if (gen.coin()) {
        std::string ops = gen.coin() ? "ZIII" : "XII";
        doc["noise"] = {{"pauli", {{{"ops", ops}, {"coefficient", 1}}}}};
    }
    if (gen.coin()) {
        doc["sweep"] = {{"parameter", params[gen.integer(0, 7)]},
                        {"start", gen.coin() ? 1.0 : gen.uniform(0, 3)},
                        {"stop", gen.coin() ? 2.0 : gen.uniform(0, 3)},
                        {"steps", gen.integer(1, 3)}};
    }
    return doc.dump();
}

TEST(Validate, AgreesWithRun) {
    testing::Gen gen(71);
    int valid = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto text = random_config(gen);
        std::vector<Diagnostic> diags;
        auto cfg = parse_config(text, ".", diags);
        if (!diags.empty()) {
            continue;  // parse-level rejections never reach run
        }
        const bool ok = check_config(cfg).empty();
        bool ran = true;
        try {
            run_experiment(cfg);
        } catch (const ConfigError &) {
            ran = false;
        }
        EXPECT_EQ(ok, ran) << text;
        valid += ok;
    }
    EXPECT_GT(valid, 10);
}

TEST(ReproToy, LabelsConcentrate) {
    auto cfg = toy_repro_config(kDefaultShots, 2024, 100, 5);
    const auto rows = run_experiment(cfg);
    ASSERT_EQ(rows.size(), 500u);
    int zero_at_quarter = 0;
    int one_at_three_quarters = 0;
    const double bound = 3 / std::sqrt(8192.0);
    for (const auto &r : rows) {
        const double theta = *r.sweep_value;
        ASSERT_TRUE(r.label_majority.has_value());
        if (std::abs(theta - kPi / 2) < 1e-12) {
            zero_at_quarter += r.label_mean == Label::Zero && *r.label_majority == Label::Zero;
        } else if (std::abs(theta - 3 * kPi / 2) < 1e-12) {
            one_at_three_quarters += r.label_mean == Label::One && *r.label_majority == Label::One;
        }
        if (theta == 0) {
            EXPECT_LE(std::abs(r.empirical_mean), bound);
        }
    }
    EXPECT_GE(zero_at_quarter, 99);
    EXPECT_GE(one_at_three_quarters, 99);
}

TEST(Sweep, Values) {
    EXPECT_EQ((SweepSpec{"phi", 2, 3, 1}.values()), (std::vector<double>{2}));
    EXPECT_EQ((SweepSpec{"phi", 0, 1, 3}.values()), (std::vector<double>{0, 0.5, 1}));
}

TEST(FormatDouble, SeventeenDigits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(120), "120");
}

}  // namespace
}  // namespace qkc
