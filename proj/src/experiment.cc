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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace qkc {

using nlohmann::json;

std::vector<double> SweepSpec::values() const {
    std::vector<double> out;
    out.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        out.push_back(steps == 1 ? start
                                 : start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1));
    }
    return out;
}

std::string format_diagnostics(const std::vector<Diagnostic> &diagnostics) {
    std::string out;
    for (const auto &d : diagnostics) {
        out += d.field + ": " + d.message + "\n";
    }
    return out;
}

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorCode::ConfigInvalid, "\n" + format_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {
}

namespace {

constexpr std::size_t kMaxPureQubits = 24;
constexpr std::size_t kMaxMixedQubits = 12;

const std::set<std::string> kSweepParameters = {"theta", "p", "theta0", "theta1", "phi", "shots", "k_copies", "lambda"};

class Parser {
   public:
    explicit Parser(std::vector<Diagnostic> &diagnostics) : diags_(diagnostics) {
    }

    void error(const std::string &field, const std::string &message) {
        diags_.push_back(Diagnostic{field, message});
    }

    std::size_t error_count() const {
        return diags_.size();
    }

    void reject_unknown(const json &obj, const std::string &field, std::initializer_list<std::string_view> known) {
        for (const auto &[key, value] : obj.items()) {
            bool ok = false;
            for (auto k : known) {
                ok = ok || key == k;
            }
            if (!ok) {
                error(join(field, key), "unknown key");
            }
        }
    }

    static std::string join(const std::string &field, std::string_view key) {
        return field.empty() ? std::string(key) : field + "." + std::string(key);
    }

    std::optional<double> number(const json &v, const std::string &field) {
        if (!v.is_number()) {
            error(field, "must be a number");
            return std::nullopt;
        }
        double x = v.get<double>();
        if (!std::isfinite(x)) {
            error(field, "must be finite");
            return std::nullopt;
        }
        return x;
    }

    std::optional<std::int64_t> integer(const json &v, const std::string &field) {
        if (v.is_number_integer()) {
            if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
                error(field, "is too large");
                return std::nullopt;
            }
            return v.get<std::int64_t>();
        }
        error(field, "must be an integer");
        return std::nullopt;
    }

    std::optional<std::int64_t> positive(const json &v, const std::string &field) {
        auto x = integer(v, field);
        if (x && *x < 1) {
            error(field, "must be a positive integer");
            return std::nullopt;
        }
        return x;
    }

    std::optional<std::uint64_t> unsigned64(const json &v, const std::string &field) {
        if (v.is_number_unsigned()) {
            return v.get<std::uint64_t>();
        }
        if (v.is_number_integer()) {
            error(field, "must be nonnegative");
        } else {
            error(field, "must be an unsigned 64-bit integer");
        }
        return std::nullopt;
    }

    std::optional<Complex> complex(const json &v, const std::string &field) {
        if (v.is_number()) {
            auto re = number(v, field);
            return re ? std::optional<Complex>(Complex(*re, 0)) : std::nullopt;
        }
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            auto re = number(v[0], field);
            auto im = number(v[1], field);
            if (re && im) {
                return Complex(*re, *im);
            }
            return std::nullopt;
        }
        error(field, "must be a number or a [re, im] pair");
        return std::nullopt;
    }

    std::optional<QuantumState> state(const json &obj, const std::string &field) {
        if (!obj.is_object()) {
            error(field, "must be an object with 'amplitudes' or 'density'");
            return std::nullopt;
        }
        const bool has_amps = obj.contains("amplitudes");
        const bool has_rho = obj.contains("density");
        if (has_amps == has_rho) {
            error(field, "needs exactly one of 'amplitudes' or 'density'");
            return std::nullopt;
        }
        const std::size_t before = error_count();
        if (has_amps) {
            const auto &arr = obj["amplitudes"];
            if (!arr.is_array() || arr.empty()) {
                error(join(field, "amplitudes"), "must be a non-empty array");
                return std::nullopt;
            }
            std::vector<Complex> x;
            for (std::size_t i = 0; i < arr.size(); ++i) {
                auto c = complex(arr[i], join(field, "amplitudes") + "[" + std::to_string(i) + "]");
                x.push_back(c.value_or(Complex(0)));
            }
            if (error_count() != before) {
                return std::nullopt;
            }
            try {
                return QuantumState(amplitude_encode(x));
            } catch (const Error &e) {
                error(join(field, "amplitudes"), e.what());
                return std::nullopt;
            }
        }
        const auto &rows = obj["density"];
        if (!rows.is_array() || rows.empty()) {
            error(join(field, "density"), "must be a non-empty square array");
            return std::nullopt;
        }
        const auto d = rows.size();
        int qubits = 0;
        while ((std::size_t{1} << qubits) < d) {
            ++qubits;
        }
        if ((std::size_t{1} << qubits) != d) {
            error(join(field, "density"), "dimension must be a power of two");
            return std::nullopt;
        }
        CMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t r = 0; r < d; ++r) {
            if (!rows[r].is_array() || rows[r].size() != d) {
                error(join(field, "density"), "must be a square array");
                return std::nullopt;
            }
            for (std::size_t c = 0; c < d; ++c) {
                auto v = complex(rows[r][c], join(field, "density") + "[" + std::to_string(r) + "][" +
                                                 std::to_string(c) + "]");
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v.value_or(Complex(0));
            }
        }
        if (error_count() != before) {
            return std::nullopt;
        }
        try {
            return QuantumState(DensityMatrix(std::move(m), RegisterLayout::single(kDataRegister, qubits)));
        } catch (const Error &e) {
            error(join(field, "density"), e.what());
            return std::nullopt;
        }
    }

    std::optional<LabeledDataset> dataset(const json &obj, const std::string &field) {
        reject_unknown(obj, field, {"training", "test"});
        const std::size_t before = error_count();
        if (!obj.contains("training") || !obj["training"].is_array() || obj["training"].empty()) {
            error(join(field, "training"), "must be a non-empty array of training points");
            return std::nullopt;
        }
        if (!obj.contains("test")) {
            error(join(field, "test"), "is required");
            return std::nullopt;
        }
        std::vector<QuantumState> states;
        std::vector<int> labels;
        std::vector<double> weights;
        std::size_t weighted = 0;
        const auto &training = obj["training"];
        for (std::size_t j = 0; j < training.size(); ++j) {
            const std::string f = join(field, "training") + "[" + std::to_string(j) + "]";
            const auto &point = training[j];
            if (!point.is_object()) {
                error(f, "must be an object");
                continue;
            }
            reject_unknown(point, f, {"amplitudes", "density", "label", "weight"});
            auto s = state(point, f);
            if (!point.contains("label")) {
                error(join(f, "label"), "is required");
            } else {
                auto y = integer(point["label"], join(f, "label"));
                if (y && *y != 0 && *y != 1) {
                    error(join(f, "label"), "must be 0 or 1");
                }
                labels.push_back(y.value_or(0) == 1 ? 1 : 0);
            }
            if (point.contains("weight")) {
                ++weighted;
                weights.push_back(number(point["weight"], join(f, "weight")).value_or(0));
            }
            if (s) {
                states.push_back(std::move(*s));
            }
        }
        auto test = state(obj["test"], join(field, "test"));
        if (weighted != 0 && weighted != training.size()) {
            error(join(field, "training"), "give a weight for every training point or for none");
        }
        if (error_count() != before || !test) {
            return std::nullopt;
        }
        LabeledDataset data = weighted == 0 ? LabeledDataset::uniform(std::move(states), std::move(labels), *test)
                                            : LabeledDataset{std::move(states), std::move(labels), weights, *test};
        try {
            data.validate();
        } catch (const Error &e) {
            error(field, e.what());
            return std::nullopt;
        }
        return data;
    }

   private:
    std::vector<Diagnostic> &diags_;
};

std::optional<json> parse_json(std::string_view text, const std::string &what, Parser &p) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        p.error(what, std::string("invalid JSON: ") + e.what());
        return std::nullopt;
    }
}

std::optional<std::string> read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void parse_dataset_section(const json &v, const std::filesystem::path &base_dir, ExperimentConfig &cfg, Parser &p) {
    if (!v.is_object()) {
        p.error("dataset", "must be an object");
        return;
    }
    const int sources = static_cast<int>(v.contains("toy")) + static_cast<int>(v.contains("file")) +
                        static_cast<int>(v.contains("training") || v.contains("test"));
    if (sources != 1) {
        p.error("dataset", "needs exactly one of 'toy', 'file' or inline 'training'/'test'");
        return;
    }
    if (v.contains("toy")) {
        p.reject_unknown(v, "dataset", {"toy"});
        const auto &toy = v["toy"];
        if (!toy.is_object()) {
            p.error("dataset.toy", "must be an object");
            return;
        }
        p.reject_unknown(toy, "dataset.toy", {"theta"});
        double theta = std::numbers::pi / 2;
        if (toy.contains("theta")) {
            theta = p.number(toy["theta"], "dataset.toy.theta").value_or(theta);
        }
        cfg.toy_theta = theta;
        return;
    }
    if (v.contains("file")) {
        p.reject_unknown(v, "dataset", {"file"});
        if (!v["file"].is_string()) {
            p.error("dataset.file", "must be a path string");
            return;
        }
        std::filesystem::path path = v["file"].get<std::string>();
        if (path.is_relative()) {
            path = base_dir / path;
        }
        auto text = read_file(path);
        if (!text) {
            p.error("dataset.file", "cannot read '" + path.string() + "'");
            return;
        }
        auto doc = parse_json(*text, "dataset.file", p);
        if (!doc) {
            return;
        }
        if (!doc->is_object()) {
            p.error("dataset.file", "must contain a JSON object");
            return;
        }
        cfg.dataset = p.dataset(*doc, "dataset.file");
        return;
    }
    cfg.dataset = p.dataset(v, "dataset");
}

void parse_classifier_section(const json &v, ExperimentConfig &cfg, Parser &p) {
    if (!v.is_object()) {
        p.error("classifier", "must be an object");
        return;
    }
    p.reject_unknown(v, "classifier", {"variant", "copies", "label_width", "angles", "readout"});
    auto &spec = cfg.classifier;
    if (v.contains("variant")) {
        const auto &s = v["variant"];
        if (s == "stc") {
            spec.variant = Variant::Stc;
        } else if (s == "htc") {
            spec.variant = Variant::Htc;
        } else {
            p.error("classifier.variant", "must be \"htc\" or \"stc\"");
        }
    }
    if (v.contains("copies")) {
        spec.copies = static_cast<int>(p.positive(v["copies"], "classifier.copies").value_or(1));
    }
    if (v.contains("label_width")) {
        spec.label_width = static_cast<int>(p.positive(v["label_width"], "classifier.label_width").value_or(1));
    }
    if (v.contains("angles")) {
        const auto &a = v["angles"];
        if (!a.is_object()) {
            p.error("classifier.angles", "must be an object");
        } else {
            p.reject_unknown(a, "classifier.angles", {"theta0", "theta1", "phi"});
            if (a.contains("theta0")) {
                spec.angles.theta0 = p.number(a["theta0"], "classifier.angles.theta0").value_or(0);
            }
            if (a.contains("theta1")) {
                spec.angles.theta1 = p.number(a["theta1"], "classifier.angles.theta1").value_or(0);
            }
            if (a.contains("phi")) {
                spec.angles.phi = p.number(a["phi"], "classifier.angles.phi").value_or(0);
            }
        }
    }
    if (v.contains("readout")) {
        const auto &r = v["readout"];
        if (r == "two_qubit") {
            cfg.readout = Readout::TwoQubit;
        } else if (r == "single_qubit") {
            cfg.readout = Readout::SingleQubit;
        } else {
            p.error("classifier.readout", "must be \"two_qubit\" or \"single_qubit\"");
        }
    }
}

void parse_noise_section(const json &v, ExperimentConfig &cfg, Parser &p) {
    if (v.is_null()) {
        return;
    }
    if (!v.is_object() || v.contains("depolarizing") == v.contains("pauli")) {
        p.error("noise", "needs exactly one of 'depolarizing' or 'pauli'");
        return;
    }
    p.reject_unknown(v, "noise", {"depolarizing", "pauli", "ancilla_qubit"});
    try {
        if (v.contains("depolarizing")) {
            if (auto rate = p.number(v["depolarizing"], "noise.depolarizing")) {
                cfg.noise = NoiseSpec::depolarizing(*rate);
            }
            return;
        }
        const auto &terms = v["pauli"];
        if (!terms.is_array() || terms.empty()) {
            p.error("noise.pauli", "must be a non-empty array of {ops, coefficient}");
            return;
        }
        std::vector<PauliTerm> out;
        const std::size_t before = p.error_count();
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string f = "noise.pauli[" + std::to_string(i) + "]";
            const auto &t = terms[i];
            if (!t.is_object() || !t.contains("ops") || !t["ops"].is_string() || !t.contains("coefficient")) {
                p.error(f, "must be {\"ops\": string, \"coefficient\": number}");
                continue;
            }
            p.reject_unknown(t, f, {"ops", "coefficient"});
            auto c = p.number(t["coefficient"], f + ".coefficient");
            try {
                out.push_back(PauliTerm{c.value_or(0), PauliString(t["ops"].get<std::string>())});
            } catch (const Error &e) {
                p.error(f + ".ops", e.what());
            }
        }
        int ancilla = 0;
        if (v.contains("ancilla_qubit")) {
            ancilla = static_cast<int>(p.integer(v["ancilla_qubit"], "noise.ancilla_qubit").value_or(0));
        }
        if (p.error_count() == before) {
            cfg.noise = NoiseSpec::pauli(std::move(out), ancilla);
        }
    } catch (const Error &e) {
        p.error("noise", e.what());
    }
}

void parse_shots_section(const json &v, ExperimentConfig &cfg, Parser &p) {
    if (!v.is_object()) {
        p.error("shots", "must be an object");
        return;
    }
    p.reject_unknown(v, "shots", {"count", "seed", "repetitions", "precision_ratio", "failure_bound"});
    auto &s = cfg.shots;
    if (v.contains("count")) {
        if (auto n = p.positive(v["count"], "shots.count")) {
            s.count = static_cast<std::uint64_t>(*n);
        }
    }
    if (v.contains("seed")) {
        s.seed = p.unsigned64(v["seed"], "shots.seed").value_or(0);
    }
    if (v.contains("repetitions")) {
        if (auto n = p.positive(v["repetitions"], "shots.repetitions")) {
            s.repetitions = static_cast<std::uint64_t>(*n);
        }
    }
    if (v.contains("precision_ratio")) {
        if (auto c = p.number(v["precision_ratio"], "shots.precision_ratio")) {
            if (*c <= 1) {
                p.error("shots.precision_ratio", "must exceed 1");
            }
            s.precision_ratio = *c;
        }
    }
    if (v.contains("failure_bound")) {
        if (auto d = p.number(v["failure_bound"], "shots.failure_bound")) {
            if (!(*d > 0 && *d < 1)) {
                p.error("shots.failure_bound", "must lie in (0, 1)");
            }
            s.failure_bound = *d;
        }
    }
}

void parse_sweep_section(const json &v, ExperimentConfig &cfg, Parser &p) {
    if (v.is_null()) {
        return;
    }
    if (!v.is_object()) {
        p.error("sweep", "must be an object");
        return;
    }
    p.reject_unknown(v, "sweep", {"parameter", "start", "stop", "steps"});
    SweepSpec sweep;
    const std::size_t before = p.error_count();
    if (!v.contains("parameter") || !v["parameter"].is_string() ||
        !kSweepParameters.contains(v["parameter"].get<std::string>())) {
        p.error("sweep.parameter", "must be one of theta, p, theta0, theta1, phi, shots, k_copies, lambda");
    } else {
        sweep.parameter = v["parameter"].get<std::string>();
    }
    for (const char *key : {"start", "stop"}) {
        if (!v.contains(key)) {
            p.error(std::string("sweep.") + key, "is required");
        }
    }
    if (v.contains("start")) {
        sweep.start = p.number(v["start"], "sweep.start").value_or(0);
    }
    if (v.contains("stop")) {
        sweep.stop = p.number(v["stop"], "sweep.stop").value_or(0);
    }
    if (v.contains("steps")) {
        sweep.steps = static_cast<std::size_t>(p.positive(v["steps"], "sweep.steps").value_or(1));
    }
    if (p.error_count() == before) {
        cfg.sweep = sweep;
    }
}

void parse_output_section(const json &v, ExperimentConfig &cfg, Parser &p) {
    if (!v.is_object()) {
        p.error("output", "must be an object");
        return;
    }
    p.reject_unknown(v, "output", {"path", "format"});
    if (v.contains("path")) {
        if (v["path"].is_string()) {
            cfg.output_path = v["path"].get<std::string>();
        } else {
            p.error("output.path", "must be a string");
        }
    }
    if (v.contains("format")) {
        if (v["format"] == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (v["format"] == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            p.error("output.format", "must be \"csv\" or \"json\"");
        }
    }
}

// --- sweep points ---

struct Point {
    std::optional<double> value;
    LabeledDataset data;
    ClassifierSpec spec;
    std::optional<NoiseSpec> noise;
    std::uint64_t shots;
    Readout readout;
};

int integral_value(double value, const std::string &what) {
    const double r = std::round(value);
    if (std::abs(value - r) > 1e-9 || r < 1 || r > 1e9) {
        throw Error(ErrorCode::ConfigInvalid, what + " sweep value " + format_double(value) +
                                                  " is not a positive integer");
    }
    return static_cast<int>(r);
}

Point make_point(const ExperimentConfig &cfg, std::optional<double> value) {
    std::optional<double> theta = cfg.toy_theta;
    ClassifierSpec spec = cfg.classifier;
    std::optional<NoiseSpec> noise = cfg.noise;
    std::uint64_t shots = cfg.shots.count;
    if (value && cfg.sweep) {
        const auto &param = cfg.sweep->parameter;
        const double v = *value;
        if (param == "theta") {
            if (!theta) {
                throw Error(ErrorCode::ConfigInvalid, "a theta sweep needs the toy dataset");
            }
            theta = v;
        } else if (param == "p") {
            if (noise && noise->kind() == NoiseSpec::Kind::Pauli) {
                throw Error(ErrorCode::ConfigInvalid, "a p sweep replaces the noise with a depolarizing channel; "
                                                      "remove the Pauli channel");
            }
            noise = NoiseSpec::depolarizing(v);
        } else if (param == "theta0") {
            spec.angles.theta0 = v;
        } else if (param == "theta1") {
            spec.angles.theta1 = v;
        } else if (param == "phi") {
            spec.angles.phi = v;
        } else if (param == "shots") {
            shots = static_cast<std::uint64_t>(integral_value(v, "shots"));
        } else if (param == "k_copies") {
            spec.copies = integral_value(v, "k_copies");
        } else if (param == "lambda") {
            spec.label_width = integral_value(v, "lambda");
        }
    }
    if (!theta && !cfg.dataset) {
        throw Error(ErrorCode::ConfigInvalid, "no dataset given");
    }
    LabeledDataset data = theta ? toy_dataset(*theta) : *cfg.dataset;
    return Point{value, std::move(data), spec, std::move(noise), shots, cfg.readout};
}

int final_width(const Point &pt) {
    const int n = pt.data.data_qubits();
    const int data = pt.spec.variant == Variant::Htc ? n : 2 * pt.spec.copies * n;
    return 1 + data + pt.spec.label_width;
}

void check_point(const Point &pt) {
    pt.spec.validate();
    pt.data.validate();
    if (pt.spec.variant == Variant::Htc && !pt.data.all_pure()) {
        throw Error(ErrorCode::MixedStateUnsupported, "the Hadamard-test classifier needs pure states");
    }
    const auto width = static_cast<std::size_t>(final_width(pt));
    const std::size_t limit = pt.data.all_pure() ? kMaxPureQubits : kMaxMixedQubits;
    if (width > limit) {
        throw Error(ErrorCode::ConfigInvalid, "final state has " + std::to_string(width) +
                                                  " qubits, beyond the dense-simulation limit of " +
                                                  std::to_string(limit));
    }
    if (pt.readout == Readout::SingleQubit && pt.spec.label_width != 1) {
        throw Error(ErrorCode::LabelWidthUnsupported, "single-qubit readout needs label_width = 1");
    }
    if (pt.noise) {
        if (pt.spec.label_width != 1) {
            throw Error(ErrorCode::LabelWidthUnsupported, "noise is applied to the single-qubit readout state; "
                                                          "label_width must be 1");
        }
        if (pt.noise->kind() == NoiseSpec::Kind::Pauli) {
            pt.noise->pauli_terms(static_cast<int>(width), 0);
        }
    }
}

std::optional<std::uint64_t> planned_shots(double f, double scale, const ExperimentConfig &cfg, int label_width,
                                           bool noisy) {
    try {
        auto base = plan_shots(f, label_width, cfg.shots.precision_ratio, cfg.shots.failure_bound).shots;
        return noisy ? noisy_shots(base, scale) : base;
    } catch (const Error &e) {
        if (e.code() == ErrorCode::UndecidableScore || e.code() == ErrorCode::SignDestroyed ||
            e.code() == ErrorCode::InvalidArgument) {
            return std::nullopt;
        }
        throw;
    }
}

std::vector<ReportRow> evaluate_point(const ExperimentConfig &cfg, const Point &pt, std::size_t point_index) {
    const int lam = pt.spec.label_width;
    const double f = general_expectation(pt.data, pt.spec.angles, pt.spec.variant, pt.spec.copies);
    const double scale = pt.noise ? effective_scale(*pt.noise).scale : 1.0;
    const double measured = std::clamp(scale * f, -1.0, 1.0);

    OutcomeDistribution dist;
    int readout_width = lam;
    auto state = final_state(pt.data, pt.spec);
    if (pt.noise) {
        dist = noisy_ancilla_distribution(reduce_to_single_qubit(state), *pt.noise);
        readout_width = 1;
    } else if (pt.readout == Readout::SingleQubit) {
        dist = ancilla_distribution(reduce_to_single_qubit(state));
        readout_width = 1;
    } else {
        dist = outcome_distribution(state, lam);
    }

    ReportRow base;
    base.sweep_param = cfg.sweep ? cfg.sweep->parameter : "none";
    base.sweep_value = pt.value;
    base.f_analytic = f;
    base.expectation = lam * measured;
    base.variance = variance_of_score(measured, lam);
    if (std::abs(measured) < 1) {
        base.skewness = skewness_of_score(measured);
    }
    base.shots_planned = planned_shots(f, scale, cfg, lam, pt.noise.has_value());
    base.shots_used = pt.shots;
    if (pt.noise) {
        base.noise_scale = scale;
    }

    std::vector<ReportRow> rows;
    for (std::uint64_t r = 0; r < cfg.shots.repetitions; ++r) {
        ReportRow row = base;
        row.seed = stream_seed(cfg.shots.seed, point_index * cfg.shots.repetitions + r);
        const auto record = sample(dist, pt.shots, row.seed);
        // Single-qubit readout estimates <sigma_z^(a)>, i.e. f for lambda = 1.
        row.empirical_mean = record.empirical_mean(readout_width);
        row.label_mean = decide_mean(record, readout_width);
        if (readout_width == 1) {
            row.label_majority = decide_majority(record, 1);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::optional<double>> sweep_values(const ExperimentConfig &cfg) {
    if (!cfg.sweep) {
        return {std::nullopt};
    }
    std::vector<std::optional<double>> out;
    for (double v : cfg.sweep->values()) {
        out.emplace_back(v);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path &base_dir,
                              std::vector<Diagnostic> &diagnostics) {
    Parser p(diagnostics);
    ExperimentConfig cfg;
    auto doc = parse_json(text, "config", p);
    if (!doc) {
        return cfg;
    }
    if (!doc->is_object()) {
        p.error("config", "must be a JSON object");
        return cfg;
    }
    p.reject_unknown(*doc, "", {"schema_version", "dataset", "classifier", "noise", "shots", "sweep", "output"});
    if (!doc->contains("schema_version")) {
        p.error("schema_version", "is required");
    } else if (auto v = p.integer((*doc)["schema_version"], "schema_version")) {
        if (*v != kSchemaVersion) {
            p.error("schema_version", "unsupported version " + std::to_string(*v) + " (expected " +
                                          std::to_string(kSchemaVersion) + ")");
        }
    }
    if (!doc->contains("dataset")) {
        p.error("dataset", "is required");
    } else {
        parse_dataset_section((*doc)["dataset"], base_dir, cfg, p);
    }
    if (doc->contains("classifier")) {
        parse_classifier_section((*doc)["classifier"], cfg, p);
    }
    if (doc->contains("noise")) {
        parse_noise_section((*doc)["noise"], cfg, p);
    }
    if (doc->contains("shots")) {
        parse_shots_section((*doc)["shots"], cfg, p);
    }
    if (doc->contains("sweep")) {
        parse_sweep_section((*doc)["sweep"], cfg, p);
    }
    if (doc->contains("output")) {
        parse_output_section((*doc)["output"], cfg, p);
    }
    return cfg;
}

std::vector<Diagnostic> check_config(const ExperimentConfig &config) {
    std::vector<Diagnostic> out;
    auto add = [&](const std::string &field, const std::string &message) {
        for (const auto &d : out) {
            if (d.field == field && d.message == message) {
                return;
            }
        }
        out.push_back(Diagnostic{field, message});
    };
    if (config.schema_version != kSchemaVersion) {
        add("schema_version", "unsupported version");
    }
    if (config.toy_theta.has_value() == config.dataset.has_value()) {
        add("dataset", "needs exactly one dataset source");
        return out;
    }
    if (config.shots.count < 1) {
        add("shots.count", "must be a positive integer");
    }
    if (config.shots.repetitions < 1) {
        add("shots.repetitions", "must be a positive integer");
    }
    if (!(config.shots.precision_ratio > 1)) {
        add("shots.precision_ratio", "must exceed 1");
    }
    if (!(config.shots.failure_bound > 0 && config.shots.failure_bound < 1)) {
        add("shots.failure_bound", "must lie in (0, 1)");
    }
    if (config.sweep) {
        if (!kSweepParameters.contains(config.sweep->parameter)) {
            add("sweep.parameter", "unknown sweep parameter '" + config.sweep->parameter + "'");
            return out;
        }
        if (config.sweep->steps < 1) {
            add("sweep.steps", "must be a positive integer");
            return out;
        }
    }
    for (const auto &value : sweep_values(config)) {
        try {
            check_point(make_point(config, value));
        } catch (const Error &e) {
            add(config.sweep ? "sweep" : "config", e.what());
        }
    }
    return out;
}

std::vector<Diagnostic> validate_config_file(const std::filesystem::path &path) {
    auto text = read_file(path);
    if (!text) {
        return {Diagnostic{"config", "cannot read '" + path.string() + "'"}};
    }
    std::vector<Diagnostic> diags;
    auto cfg = parse_config(*text, path.parent_path(), diags);
    if (!diags.empty()) {
        return diags;
    }
    return check_config(cfg);
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    auto text = read_file(path);
    if (!text) {
        throw ConfigError({Diagnostic{"config", "cannot read '" + path.string() + "'"}});
    }
    std::vector<Diagnostic> diags;
    auto cfg = parse_config(*text, path.parent_path(), diags);
    if (diags.empty()) {
        diags = check_config(cfg);
    }
    if (!diags.empty()) {
        throw ConfigError(std::move(diags));
    }
    return cfg;
}

std::vector<ReportRow> run_experiment(const ExperimentConfig &config, unsigned jobs) {
    if (auto diags = check_config(config); !diags.empty()) {
        throw ConfigError(std::move(diags));
    }
    const auto values = sweep_values(config);
    std::vector<std::vector<ReportRow>> per_point(values.size());
    std::vector<std::exception_ptr> failures(values.size());
    auto work = [&](std::size_t i) {
        try {
            per_point[i] = evaluate_point(config, make_point(config, values[i]), i);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(values.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            work(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < values.size(); i = next++) {
                    work(i);
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    std::vector<ReportRow> rows;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (failures[i]) {
            std::rethrow_exception(failures[i]);
        }
        rows.insert(rows.end(), per_point[i].begin(), per_point[i].end());
    }
    return rows;
}

ExperimentConfig toy_repro_config(std::uint64_t shots, std::uint64_t seed, std::uint64_t seeds, std::size_t steps) {
    ExperimentConfig cfg;
    cfg.toy_theta = 0.0;
    cfg.classifier = ClassifierSpec{Variant::Stc, 1, 1, kHadamardAngles};
    cfg.readout = Readout::SingleQubit;
    cfg.shots.count = shots;
    cfg.shots.seed = seed;
    cfg.shots.repetitions = seeds;
    cfg.sweep = SweepSpec{"theta", 0.0, 2 * std::numbers::pi, steps};
    return cfg;
}

std::string format_double(double value) {
    if (value == 0) {
        value = 0;  // no "-0"
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

template <typename T, typename Fn>
std::string or_empty(const std::optional<T> &v, Fn &&fmt) {
    return v ? fmt(*v) : std::string();
}

}  // namespace

std::string format_csv(const std::vector<ReportRow> &rows) {
    std::string out;
    for (std::size_t c = 0; c < std::size(kReportColumns); ++c) {
        out += c ? "," : "";
        out += kReportColumns[c];
    }
    out += "\n";
    auto u64 = [](std::uint64_t v) { return std::to_string(v); };
    auto lbl = [](Label l) { return std::string(label_name(l)); };
    for (const auto &r : rows) {
        out += r.sweep_param;
        out += "," + or_empty(r.sweep_value, format_double);
        out += "," + format_double(r.f_analytic);
        out += "," + format_double(r.expectation);
        out += "," + format_double(r.variance);
        out += "," + or_empty(r.skewness, format_double);
        out += "," + or_empty(r.shots_planned, u64);
        out += "," + u64(r.shots_used);
        out += "," + format_double(r.empirical_mean);
        out += "," + lbl(r.label_mean);
        out += "," + or_empty(r.label_majority, lbl);
        out += "," + or_empty(r.noise_scale, format_double);
        out += "," + u64(r.seed);
        out += "\n";
    }
    return out;
}

std::string format_json(const std::vector<ReportRow> &rows) {
    json arr = json::array();
    auto opt = [](const auto &v) -> json { return v ? json(*v) : json(nullptr); };
    for (const auto &r : rows) {
        json o = json::object();
        o["sweep_param"] = r.sweep_param;
        o["sweep_value"] = opt(r.sweep_value);
        o["f_analytic"] = r.f_analytic;
        o["expectation"] = r.expectation;
        o["variance"] = r.variance;
        o["skewness"] = opt(r.skewness);
        o["shots_planned"] = opt(r.shots_planned);
        o["shots_used"] = r.shots_used;
        o["empirical_mean"] = r.empirical_mean;
        o["label_mean"] = std::string(label_name(r.label_mean));
        o["label_majority"] = r.label_majority ? json(std::string(label_name(*r.label_majority))) : json(nullptr);
        o["noise_scale"] = opt(r.noise_scale);
        o["seed"] = r.seed;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string format_angle_scan_csv(const AngleScan &scan) {
    std::string out = "theta0,theta1,phi,objective,variance\n";
    for (const auto &r : scan.rows) {
        out += format_double(r.angles.theta0) + "," + format_double(r.angles.theta1) + "," +
               format_double(r.angles.phi) + "," + format_double(r.objective) + "," + format_double(r.variance) +
               "\n";
    }
    return out;
}

std::string format_angle_scan_json(const AngleScan &scan) {
    json rows = json::array();
    for (const auto &r : scan.rows) {
        rows.push_back({{"theta0", r.angles.theta0},
                        {"theta1", r.angles.theta1},
                        {"phi", r.angles.phi},
                        {"objective", r.objective},
                        {"variance", r.variance}});
    }
    json doc = {{"best_index", scan.best_index}, {"rows", std::move(rows)}};
    return doc.dump(2) + "\n";
}

}  // namespace qkc
