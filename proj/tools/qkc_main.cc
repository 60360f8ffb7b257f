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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "qkc/experiment.h"

namespace {

using namespace qkc;

struct Common {
    std::string config;
    std::string out;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> shots;
    unsigned jobs = 1;
};

void add_output_flags(CLI::App *cmd, Common &c) {
    cmd->add_option("--out", c.out, "Write the report here instead of stdout");
    cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

void add_run_flags(CLI::App *cmd, Common &c) {
    add_output_flags(cmd, c);
    cmd->add_option("--seed", c.seed, "Base seed (overrides the config)");
    cmd->add_option("--shots", c.shots, "Shots per repetition (overrides the config)");
    cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

void apply_overrides(ExperimentConfig &cfg, const Common &c) {
    if (c.seed) {
        cfg.shots.seed = *c.seed;
    }
    if (c.shots) {
        if (*c.shots < 1) {
            throw ConfigError({Diagnostic{"--shots", "must be a positive integer"}});
        }
        cfg.shots.count = static_cast<std::uint64_t>(*c.shots);
    }
    if (!c.format.empty()) {
        cfg.format = c.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    }
    if (!c.out.empty()) {
        cfg.output_path = c.out;
    }
}

void emit(const std::string &text, const std::optional<std::filesystem::path> &path) {
    if (!path) {
        std::cout << text;
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::InvalidArgument, "cannot write '" + path->string() + "'");
    }
    out << text;
}

void emit_report(const ExperimentConfig &cfg, unsigned jobs) {
    const auto rows = run_experiment(cfg, jobs);
    emit(cfg.format == OutputFormat::Json ? format_json(rows) : format_csv(rows), cfg.output_path);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Kernel-based quantum classifier simulator"};
    app.require_subcommand(1);

    Common run_opts;
    auto *run = app.add_subcommand("run", "Run an experiment config and write its report");
    run->add_option("--config", run_opts.config, "Config file")->required();
    add_run_flags(run, run_opts);

    std::string validate_path;
    auto *validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("--config", validate_path, "Config file")->required();

    Common toy_opts;
    std::uint64_t toy_seeds = 1;
    std::size_t toy_steps = 41;
    auto *toy = app.add_subcommand("repro-toy", "Noiseless toy-example theta sweep with single-qubit readout");
    add_run_flags(toy, toy_opts);
    toy->add_option("--seeds", toy_seeds, "Seed streams per theta")->check(CLI::PositiveNumber);
    toy->add_option("--steps", toy_steps, "Theta grid points over [0, 2 pi]")->check(CLI::PositiveNumber);

    Common scan_opts;
    std::size_t scan_steps = 33;
    auto *scan = app.add_subcommand("angle-scan", "Objective f^2 over a uniform angle grid");
    scan->add_option("--config", scan_opts.config, "Config file")->required();
    scan->add_option("--steps", scan_steps, "Grid points per angle over [0, 2 pi]")->check(CLI::PositiveNumber);
    add_output_flags(scan, scan_opts);

    Common noise_opts;
    double p_start = 0;
    double p_stop = 0.9;
    std::size_t p_steps = 10;
    auto *noise = app.add_subcommand("noise-sweep", "Sweep the depolarizing rate of a config");
    noise->add_option("--config", noise_opts.config, "Config file")->required();
    noise->add_option("--start", p_start, "First rate");
    noise->add_option("--stop", p_stop, "Last rate");
    noise->add_option("--steps", p_steps, "Number of rates")->check(CLI::PositiveNumber);
    add_run_flags(noise, noise_opts);

    double plan_score = 0;
    int plan_lambda = 1;
    double plan_ratio = 2;
    double plan_delta = kDefaultFailureBound;
    std::optional<double> plan_scale;
    auto *plan = app.add_subcommand("shots-plan", "Chebyshev repetition count for a score");
    plan->add_option("--score", plan_score, "Classification score f")->required();
    plan->add_option("--label-width", plan_lambda, "Label register width");
    plan->add_option("--ratio", plan_ratio, "Precision ratio c > 1");
    plan->add_option("--delta", plan_delta, "Failure bound in (0, 1)");
    plan->add_option("--noise-scale", plan_scale, "Effective noise scale s");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            auto cfg = load_config(run_opts.config);
            apply_overrides(cfg, run_opts);
            emit_report(cfg, run_opts.jobs);
        } else if (*validate) {
            auto diags = validate_config_file(validate_path);
            if (!diags.empty()) {
                std::cout << format_diagnostics(diags);
                return 2;
            }
            std::cout << "ok\n";
        } else if (*toy) {
            auto cfg = toy_repro_config(kDefaultShots, 0, toy_seeds, toy_steps);
            apply_overrides(cfg, toy_opts);
            emit_report(cfg, toy_opts.jobs);
        } else if (*scan) {
            auto cfg = load_config(scan_opts.config);
            apply_overrides(cfg, scan_opts);
            const auto data = cfg.toy_theta ? toy_dataset(*cfg.toy_theta) : *cfg.dataset;
            const auto &spec = cfg.classifier;
            const auto result = angle_scan(data, AngleGrid::uniform(scan_steps, scan_steps, scan_steps), spec.variant,
                                           spec.copies, spec.label_width);
            emit(cfg.format == OutputFormat::Json ? format_angle_scan_json(result) : format_angle_scan_csv(result),
                 cfg.output_path);
        } else if (*noise) {
            auto cfg = load_config(noise_opts.config);
            apply_overrides(cfg, noise_opts);
            if (cfg.sweep) {
                throw ConfigError({Diagnostic{"sweep", "noise-sweep defines its own sweep; remove it from the config"}});
            }
            cfg.sweep = SweepSpec{"p", p_start, p_stop, p_steps};
            emit_report(cfg, noise_opts.jobs);
        } else if (*plan) {
            const auto base = plan_shots(plan_score, plan_lambda, plan_ratio, plan_delta);
            std::cout << "score,label_width,ratio,delta,epsilon,shots";
            std::cout << (plan_scale ? ",noise_scale,noisy_shots\n" : "\n");
            std::cout << format_double(plan_score) << "," << plan_lambda << "," << format_double(base.ratio) << ","
                      << format_double(base.delta) << "," << format_double(base.epsilon) << "," << base.shots;
            if (plan_scale) {
                std::cout << "," << format_double(*plan_scale) << "," << noisy_shots(base.shots, *plan_scale);
            }
            std::cout << "\n";
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error:\n" << format_diagnostics(e.diagnostics());
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
