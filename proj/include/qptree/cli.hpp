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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qptree::cli {

/// Stable exit codes.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kDimensionRule = 3,
    kDataValidation = 4,
};

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    /// Inclusive grid points start, start + step, ... up to stop.
    std::vector<double> points() const;
};

struct RunConfig {
    std::string command;
    /// Raw direction specs as given: (theta, phi) in degrees, or (x, y, z) with `cartesian`.
    std::vector<std::vector<double>> directions;
    bool cartesian = false;
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 0;
    std::optional<Grid> grid;
    std::string output_path;
    std::string weights_path;
    /// 0 for joint classes, 1 or 2 to measure a single particle's subsystem.
    int subsystem = 0;
    bool timing = false;
};

/// Parses "start:stop:step"; throws std::invalid_argument when malformed or step <= 0.
Grid parse_grid(const std::string &spec);
/// Parses "a,b" (or "x,y,z" when cartesian); throws std::invalid_argument when malformed.
std::vector<double> parse_direction(const std::string &spec, bool cartesian);

/// Runs one command. `args` excludes the program name. Documents and CSV go
/// to `out` (or to --out), diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qptree::cli
