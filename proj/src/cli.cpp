// Copyright 2026 The qptree Authors
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

#include "qptree/cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qptree/bell_test.hpp"
#include "qptree/dump.hpp"
#include "qptree/info_channel.hpp"
#include "qptree/probability_tree.hpp"
#include "qptree/sampling.hpp"
#include "qptree/version.hpp"

namespace qptree::cli {

namespace {

using dump::Json;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::array<const char *, 3> kDirectionNames = {"a", "b", "c"};

double parse_number(const std::string &text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception &) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("not a finite number: '" + text + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);
    return parts;
}

UnitVector to_unit_vector(const std::vector<double> &spec, bool cartesian) {
    if (cartesian) {
        return UnitVector::normalized(spec[0], spec[1], spec[2]);
    }
    return UnitVector::from_spherical_deg(spec[0], spec[1]);
}

std::vector<UnitVector> directions(const RunConfig &config, std::size_t min_count, std::size_t max_count) {
    if (config.directions.size() < min_count || config.directions.size() > max_count) {
        throw ConfigError("command '" + config.command + "' needs " +
                          (min_count == max_count ? std::to_string(min_count)
                                                  : std::to_string(min_count) + " to " + std::to_string(max_count)) +
                          " --dir values, got " + std::to_string(config.directions.size()));
    }
    std::vector<UnitVector> out;
    for (const auto &spec : config.directions) {
        try {
            out.push_back(to_unit_vector(spec, config.cartesian));
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
    }
    return out;
}

bell::Scenario scenario_of(const RunConfig &config) {
    const auto dirs = directions(config, 3, 3);
    return bell::Scenario{dirs[0], dirs[1], dirs[2]};
}

Json config_echo(const RunConfig &config) {
    Json dirs = Json::array();
    for (const auto &d : config.directions) {
        Json entry = Json::array();
        for (double v : d) {
            entry.push_back(dump::angle_digits(v));
        }
        dirs.push_back(std::move(entry));
    }
    Json echo{{"command", config.command}, {"directions", std::move(dirs)}, {"cartesian", config.cartesian},
              {"n", config.n_samples},     {"seed", config.seed}};
    if (config.grid) {
        echo["grid"] = Json{{"start", dump::angle_digits(config.grid->start)},
                            {"stop", dump::angle_digits(config.grid->stop)},
                            {"step", dump::angle_digits(config.grid->step)}};
    } else {
        echo["grid"] = nullptr;
    }
    echo["weights"] = config.weights_path;
    echo["subsystem"] = config.subsystem;
    return echo;
}

Json record_header(const RunConfig &config) {
    return Json{{"tool", "qptree"},
                {"version", std::string(kVersion)},
                {"rng", std::string(sampling::kRngAlgorithm)},
                {"config", config_echo(config)}};
}

std::string cmd_tree(const RunConfig &config) {
    const auto dirs = directions(config, 1, 3);
    const auto prep = PreparationOp::singlet();
    std::vector<MeasurementClass> classes;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const std::string name = kDirectionNames[i];
        if (config.subsystem == 0) {
            classes.push_back(MeasurementClass::joint_spin("M12_" + name, dirs[i], dirs[i]));
        } else {
            classes.push_back(
                MeasurementClass::single_spin("M" + std::to_string(config.subsystem) + "_" + name, dirs[i]));
        }
    }
    const auto tree = build_tree(prep, classes);
    Json doc = record_header(config);
    const Json body = dump::tree(tree);
    for (const auto &[key, value] : body.items()) {
        doc[key] = value;
    }
    return doc.dump(2) + "\n";
}

std::string cmd_bell(const RunConfig &config) {
    const auto scenario = scenario_of(config);
    Json doc = record_header(config);
    doc["results"] = dump::probabilities(bell::quantum_bell(scenario));
    return doc.dump(2) + "\n";
}

std::string format_csv_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", dump::probability_digits(value));
    return buf;
}

std::string cmd_scan(const RunConfig &config) {
    if (!config.grid) {
        throw ConfigError("scan needs --grid start:stop:step");
    }
    const auto thetas = config.grid->points();
    for (double t : thetas) {
        if (!(t > 0.0 && t < 180.0)) {
            throw ConfigError("scan grid values must lie in (0, 180) degrees");
        }
    }
    const auto rows = bell::violation_scan(thetas);
    std::string out = "theta_deg,p_ab,p_ac,p_cb,margin,verdict\n";
    for (const auto &row : rows) {
        char theta[64];
        std::snprintf(theta, sizeof(theta), "%.6f", row.theta_deg);
        out += std::string(theta) + "," + format_csv_number(row.p.p_ab) + "," + format_csv_number(row.p.p_ac) +
               "," + format_csv_number(row.p.p_cb) + "," + format_csv_number(row.p.margin) + "," +
               std::string(bell::to_string(row.verdict)) + "\n";
    }
    return out;
}

std::string cmd_sample(const RunConfig &config) {
    const auto scenario = scenario_of(config);
    if (config.n_samples == 0) {
        throw ConfigError("--n must be at least 1");
    }
    const auto mc = bell::monte_carlo_bell(scenario, config.n_samples, config.seed);
    Json results = dump::probabilities(mc.estimate);
    results["se_ab"] = dump::probability_digits(mc.se_ab);
    results["se_ac"] = dump::probability_digits(mc.se_ac);
    results["se_cb"] = dump::probability_digits(mc.se_cb);
    results["margin_se"] = dump::probability_digits(mc.margin_se());
    // The verdict is not resolved when the margin sits within 4 standard errors of 0.
    results["low_confidence"] = std::abs(mc.estimate.margin) <= 4.0 * mc.margin_se();
    results["analytic"] = dump::probabilities(bell::quantum_bell(scenario));
    Json doc = record_header(config);
    doc["results"] = std::move(results);
    return doc.dump(2) + "\n";
}

bell::HiddenVariableModel read_weights(const std::string &path, std::ostream &err) {
    if (path.empty()) {
        throw ConfigError("classical needs --weights <path>");
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open weights file '" + path + "'");
    }
    std::array<double, 8> weights{};
    std::array<bool, 8> seen{};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string label;
        std::string value_text;
        std::string extra;
        if (!(fields >> label) || label.front() == '#') {
            continue;
        }
        if (!(fields >> value_text) || (fields >> extra)) {
            throw ConfigError("weights line " + std::to_string(line_no) + ": expected 'label value'");
        }
        std::size_t index = 0;
        double value = 0.0;
        try {
            index = bell::HiddenVariableModel::index_of(label);
            value = parse_number(value_text);
        } catch (const std::invalid_argument &e) {
            throw ConfigError("weights line " + std::to_string(line_no) + ": " + e.what());
        }
        if (seen[index]) {
            throw ConfigError("weights file repeats label " + label);
        }
        if (value < 0.0) {
            throw ConfigError("weights line " + std::to_string(line_no) + ": negative weight");
        }
        seen[index] = true;
        weights[index] = value;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) {
        throw ConfigError("weights file must list all 8 labels +++ ... ---");
    }
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    const double drift = std::abs(total - 1.0);
    if (drift > 1e-6) {
        throw DataError("weights total " + std::to_string(total) + " is more than 1e-6 from 1");
    }
    if (drift > 1e-9) {
        err << "warning: weights total " << total << " renormalized to 1\n";
    }
    for (double &w : weights) {
        w /= total;
    }
    return bell::HiddenVariableModel(weights);
}

std::string cmd_classical(const RunConfig &config, std::ostream &err) {
    const auto model = read_weights(config.weights_path, err);
    Json doc = record_header(config);
    Json weights = Json::object();
    for (std::size_t i = 0; i < 8; ++i) {
        weights[std::string(bell::HiddenVariableModel::kLabels[i])] = dump::probability_digits(model.weights()[i]);
    }
    doc["weights"] = std::move(weights);
    doc["results"] = dump::probabilities(bell::classical_bell(model));
    return doc.dump(2) + "\n";
}

std::string dispatch(const RunConfig &config, std::ostream &err) {
    if (config.command == "tree") {
        return cmd_tree(config);
    }
    if (config.command == "bell") {
        return cmd_bell(config);
    }
    if (config.command == "scan") {
        return cmd_scan(config);
    }
    if (config.command == "sample") {
        return cmd_sample(config);
    }
    return cmd_classical(config, err);
}

}  // namespace

std::vector<double> Grid::points() const {
    if (!(step > 0.0)) {
        throw std::invalid_argument("grid step must be positive");
    }
    if (stop < start) {
        throw std::invalid_argument("grid stop must not be below start");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
}

Grid parse_grid(const std::string &spec) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) {
        throw std::invalid_argument("grid must be start:stop:step, got '" + spec + "'");
    }
    Grid g{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
    if (!(g.step > 0.0)) {
        throw std::invalid_argument("grid step must be positive");
    }
    if (g.stop < g.start) {
        throw std::invalid_argument("grid stop must not be below start");
    }
    return g;
}

std::vector<double> parse_direction(const std::string &spec, bool cartesian) {
    const auto parts = split(spec, ',');
    const std::size_t expected = cartesian ? 3 : 2;
    if (parts.size() != expected) {
        throw std::invalid_argument("direction '" + spec + "' needs " + std::to_string(expected) +
                                    " comma-separated numbers");
    }
    std::vector<double> out;
    for (const auto &p : parts) {
        out.push_back(parse_number(p));
    }
    return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum probability trees and Bell's inequality for the spin singlet", "qptree"};
    RunConfig config;
    std::vector<std::string> dir_specs;
    std::string grid_spec;
    app.add_option("command", config.command, "tree | bell | scan | sample | classical")
        ->required()
        ->check(CLI::IsMember({"tree", "bell", "scan", "sample", "classical"}));
    app.add_option("--dir", dir_specs, "direction theta,phi in degrees (repeatable, order a, b, c)");
    app.add_flag("--cartesian", config.cartesian, "read --dir as x,y,z and normalize");
    app.add_option("--grid", grid_spec, "theta grid start:stop:step in degrees");
    app.add_option("--n", config.n_samples, "samples per direction pair")->capture_default_str();
    app.add_option("--seed", config.seed, "RNG seed")->capture_default_str();
    app.add_option("--out", config.output_path, "output file (default: standard output)");
    app.add_option("--weights", config.weights_path, "hidden-variable weights file");
    app.add_option("--subsystem", config.subsystem, "build single-particle classes for particle 1 or 2")
        ->check(CLI::Range(0, 2));
    app.add_flag("--timing", config.timing, "append wall-clock duration to JSON records");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    const auto started = std::chrono::steady_clock::now();
    std::string payload;
    try {
        for (const auto &spec : dir_specs) {
            config.directions.push_back(parse_direction(spec, config.cartesian));
        }
        if (!grid_spec.empty()) {
            config.grid = parse_grid(grid_spec);
        }
        payload = dispatch(config, err);
    } catch (const JointSourceRuleError &e) {
        err << "error: " << e.what() << "\n";
        return kDimensionRule;
    } catch (const DataError &e) {
        err << "error: " << e.what() << "\n";
        return kDataValidation;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    if (config.timing && config.command != "scan") {
        auto doc = Json::parse(payload);
        doc["wall_clock_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        payload = doc.dump(2) + "\n";
    }

    if (config.output_path.empty()) {
        out << payload;
    } else {
        std::ofstream file(config.output_path, std::ios::binary);
        if (!file || !(file << payload)) {
            err << "error: cannot write '" << config.output_path << "'\n";
            return kConfigError;
        }
    }
    return kOk;
}

}  // namespace qptree::cli
