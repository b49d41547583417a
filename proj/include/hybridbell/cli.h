// Copyright 2026 The hybridbell Authors
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

#ifndef HYBRIDBELL_CLI_H
#define HYBRIDBELL_CLI_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hybridbell/dynamics.h"
#include "hybridbell/error_budget.h"
#include "hybridbell/resource_count.h"

namespace hybridbell {

/// Malformed or unknown configuration entry.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitPhysics = 2,
    kExitValidation = 3,
};

struct ConfigEntry {
    std::string key;
    std::string value;
    size_t line;
};

/// `key = value` lines with `#` comments. Syntax errors throw ConfigError naming the line.
std::vector<ConfigEntry> parse_config(std::istream &in);
std::vector<ConfigEntry> read_config_file(const std::filesystem::path &path);

enum class ValueKind { Rate, Frequency, Time, Number, Integer, Text };

/// Parses "10MHz", "20ns", "0.8". Rate: Hz-family suffix -> 2 pi f in rad/ns, bare = rad/ns.
/// Frequency: Hz-family suffix -> GHz, bare = GHz. Time: s-family suffix -> ns, bare = ns.
double parse_quantity(const std::string &text, ValueKind kind);

struct Settings {
    TransducerParams transducer;
    HardwareParams hardware = HardwareParams::nominal();
    CountingScenario counting;

    Frame frame = Frame::Lab;
    std::optional<double> dt;
    double sample_dt = 0.5;
    double tail = 20;
    std::optional<double> t_hold;  // empty: optimize
    std::optional<double> t_lo;
    std::optional<double> t_hi;
    double grid_step = 0.25;
    double p10_fraction = 0.9;
    double swap_dt = 0.02;

    size_t n_cycles = 1000;
    double relative_phase = 0;
    std::optional<double> false_odd;
    std::optional<double> false_even;

    std::string graph = "ring:6";
    std::string graph_file;
    size_t trials = 100000;
    std::vector<int> sizes{3, 6, 9, 12, 15, 18, 21, 24};
};

struct KeyInfo {
    std::string name;
    ValueKind kind;
    std::string help;
};

const std::vector<KeyInfo> &config_keys();

/// Applies entries over the defaults. Unknown keys and bad values throw ConfigError with the line.
Settings resolve_settings(const std::vector<ConfigEntry> &entries);

struct RunConfig {
    std::string scenario;
    std::vector<ConfigEntry> entries;
    std::filesystem::path output_dir;
    uint64_t seed = 0;
};

const std::vector<std::string> &scenario_names();

/// Runs one scenario, writes its CSV artifacts into output_dir and a short report to `log`.
/// Returns an ExitCode; errors are reported on `err`.
int run(const RunConfig &config, std::ostream &log, std::ostream &err);

struct ValidationCheck {
    std::string name;
    double value;
    double reference;
    double tolerance;
    bool pass;
};

/// Analytic-versus-numeric oracle checks used by the `validate` scenario.
std::vector<ValidationCheck> run_validation(const Settings &s, uint64_t seed);

}  // namespace hybridbell

#endif
