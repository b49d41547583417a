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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "hybridbell/cli.h"
#include "hybridbell/units.h"

namespace hybridbell {

namespace {

std::string trim(const std::string &s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace((unsigned char)s[a])) {
        a++;
    }
    while (b > a && std::isspace((unsigned char)s[b - 1])) {
        b--;
    }
    return s.substr(a, b - a);
}

bool valid_key(const std::string &k) {
    if (k.empty()) {
        return false;
    }
    for (char c : k) {
        if (!std::isalnum((unsigned char)c) && c != '_') {
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<ConfigEntry> parse_config(std::istream &in) {
    std::vector<ConfigEntry> out;
    std::set<std::string> seen;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) {
            throw ConfigError("line " + std::to_string(line_no) + ": bad key '" + key + "'");
        }
        if (value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": missing value for '" + key + "'");
        }
        if (!seen.insert(key).second) {
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        out.push_back({key, value, line_no});
    }
    return out;
}

std::vector<ConfigEntry> read_config_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    return parse_config(in);
}

double parse_quantity(const std::string &text, ValueKind kind) {
    std::string s = trim(text);
    const char *begin = s.c_str();
    char *end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) {
        throw ConfigError("not a number: '" + text + "'");
    }
    std::string rest = trim(std::string(end));
    if (!rest.empty() && rest[0] == '/' && (kind == ValueKind::Number)) {
        std::string denom = trim(rest.substr(1));
        char *end2 = nullptr;
        double d = std::strtod(denom.c_str(), &end2);
        if (end2 == denom.c_str() || !trim(std::string(end2)).empty() || d == 0) {
            throw ConfigError("bad fraction: '" + text + "'");
        }
        v /= d;
        rest.clear();
    }
    if (!std::isfinite(v)) {
        throw ConfigError("value is not finite: '" + text + "'");
    }
    static const std::map<std::string, double> freq_ghz{
        {"Hz", 1e-9}, {"kHz", 1e-6}, {"MHz", 1e-3}, {"GHz", 1.0}, {"THz", 1e3}};
    static const std::map<std::string, double> time_ns{{"s", 1e9}, {"ms", 1e6}, {"us", 1e3}, {"ns", 1.0}, {"ps", 1e-3}};
    switch (kind) {
        case ValueKind::Rate:
        case ValueKind::Frequency: {
            if (rest.empty()) {
                return v;
            }
            auto it = freq_ghz.find(rest);
            if (it == freq_ghz.end()) {
                throw ConfigError("expected a frequency unit (Hz, kHz, MHz, GHz, THz) in '" + text + "'");
            }
            double f = v * it->second;
            return kind == ValueKind::Rate ? units::kTwoPi * f : f;
        }
        case ValueKind::Time: {
            if (rest.empty()) {
                return v;
            }
            auto it = time_ns.find(rest);
            if (it == time_ns.end()) {
                throw ConfigError("expected a time unit (s, ms, us, ns, ps) in '" + text + "'");
            }
            return v * it->second;
        }
        case ValueKind::Number:
            if (!rest.empty()) {
                throw ConfigError("unexpected unit in dimensionless value '" + text + "'");
            }
            return v;
        case ValueKind::Integer:
            if (!rest.empty() || v != std::floor(v) || v < 0 || v > 1e15) {
                throw ConfigError("expected a non-negative integer, got '" + text + "'");
            }
            return v;
        case ValueKind::Text:
            break;
    }
    throw ConfigError("not a numeric key");
}

namespace {

using Setter = std::function<void(Settings &, const std::string &raw, double value)>;

struct KeyEntry {
    KeyInfo info;
    Setter set;
};

std::vector<int> parse_sizes(const std::string &raw) {
    std::vector<int> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = parse_quantity(item, ValueKind::Integer);
        if (v < 1) {
            throw ConfigError("ring sizes must be >= 1");
        }
        out.push_back((int)v);
    }
    if (out.empty()) {
        throw ConfigError("empty size list");
    }
    return out;
}

const std::vector<KeyEntry> &key_table() {
    using K = ValueKind;
    static const std::vector<KeyEntry> table{
        {{"omega_m", K::Rate, "mechanical frequency"}, [](Settings &s, auto &, double v) { s.transducer.omega_m = v; }},
        {{"gamma_0", K::Rate, "coupling to the fridge bath"}, [](Settings &s, auto &, double v) { s.transducer.gamma_0 = v; }},
        {{"gamma_b", K::Rate, "coupling to the absorption-induced bath"},
         [](Settings &s, auto &, double v) { s.transducer.gamma_b = v; }},
        {{"gamma_s", K::Rate, "hot-bath turn-on rate"}, [](Settings &s, auto &, double v) { s.transducer.gamma_s = v; }},
        {{"delta", K::Number, "slow-growing fraction of the hot bath"},
         [](Settings &s, auto &, double v) { s.transducer.delta_frac = v; }},
        {{"n_b", K::Number, "steady-state hot-bath occupancy"}, [](Settings &s, auto &, double v) { s.transducer.n_b = v; }},
        {{"G_peak", K::Rate, "peak optomechanical coupling"}, [](Settings &s, auto &, double v) { s.transducer.G_peak = v; }},
        {{"tau_pulse_ns", K::Time, "Gaussian pump standard deviation"},
         [](Settings &s, auto &, double v) { s.transducer.tau_pulse = v; }},
        {{"kappa", K::Rate, "optical linewidth"}, [](Settings &s, auto &, double v) { s.transducer.kappa = v; }},
        {{"omega_q", K::Rate, "detuned qubit frequency"},
         [](Settings &s, auto &, double v) { s.transducer.omega_q_detuned = v; }},
        {{"T_ramp_ns", K::Time, "qubit rise/fall time"}, [](Settings &s, auto &, double v) { s.transducer.T_ramp = v; }},
        {{"E_C", K::Frequency, "qubit charging energy over h"},
         [](Settings &s, auto &, double v) { s.transducer.E_C_over_h = v; }},
        {{"g_qm", K::Rate, "qubit-mechanics coupling"}, [](Settings &s, auto &, double v) { s.transducer.g_qm = v; }},
        {{"transmon_levels", K::Integer, "transmon truncation"},
         [](Settings &s, auto &, double v) { s.transducer.dims.transmon = (size_t)v; }},
        {{"mechanics_levels", K::Integer, "mechanical truncation"},
         [](Settings &s, auto &, double v) { s.transducer.dims.mechanics = (size_t)v; }},
        {{"optics_levels", K::Integer, "optical truncation (0 = eliminated)"},
         [](Settings &s, auto &, double v) { s.transducer.dims.optics = (size_t)v; }},

        {{"frame", K::Text, "lab or rotating"},
         [](Settings &s, const std::string &raw, double) {
             if (raw == "lab") {
                 s.frame = Frame::Lab;
             } else if (raw == "rotating") {
                 s.frame = Frame::Rotating;
             } else {
                 throw ConfigError("frame must be 'lab' or 'rotating'");
             }
         }},
        {{"dt_ns", K::Time, "integrator step"}, [](Settings &s, auto &, double v) { s.dt = v; }},
        {{"sample_dt_ns", K::Time, "output sample interval"}, [](Settings &s, auto &, double v) { s.sample_dt = v; }},
        {{"tail_ns", K::Time, "time simulated after release"}, [](Settings &s, auto &, double v) { s.tail = v; }},
        {{"t_hold_ns", K::Time, "resonant hold time, or auto"},
         [](Settings &s, const std::string &raw, double) {
             if (raw == "auto") {
                 s.t_hold.reset();
             } else {
                 s.t_hold = parse_quantity(raw, K::Time);
             }
         }},
        {{"t_lo_ns", K::Time, "swap search window start"}, [](Settings &s, auto &, double v) { s.t_lo = v; }},
        {{"t_hi_ns", K::Time, "swap search window end"}, [](Settings &s, auto &, double v) { s.t_hi = v; }},
        {{"grid_step_ns", K::Time, "swap search grid"}, [](Settings &s, auto &, double v) { s.grid_step = v; }},
        {{"p10_fraction", K::Number, "required fraction of the best P10"},
         [](Settings &s, auto &, double v) { s.p10_fraction = v; }},
        {{"swap_dt_ns", K::Time, "integrator step for swap search and Bell cycles"},
         [](Settings &s, auto &, double v) { s.swap_dt = v; }},

        {{"n_cycles", K::Integer, "Bell cycles to sample"}, [](Settings &s, auto &, double v) { s.n_cycles = (size_t)v; }},
        {{"relative_phase", K::Number, "rail 2 drive phase, rad"},
         [](Settings &s, auto &, double v) { s.relative_phase = v; }},
        {{"false_odd", K::Number, "P(report odd | even)"}, [](Settings &s, auto &, double v) { s.false_odd = v; }},
        {{"false_even", K::Number, "P(report even | odd)"}, [](Settings &s, auto &, double v) { s.false_even = v; }},

        {{"kappa_e", K::Rate, "extrinsic optical decay"}, [](Settings &s, auto &, double v) { s.hardware.kappa_e = v; }},
        {{"kappa_i", K::Rate, "intrinsic optical decay"}, [](Settings &s, auto &, double v) { s.hardware.kappa_i = v; }},
        {{"extra_loss", K::Number, "additional photon loss"}, [](Settings &s, auto &, double v) { s.hardware.extra_loss = v; }},
        {{"tau_ns", K::Time, "pump duration"}, [](Settings &s, auto &, double v) { s.hardware.tau = v; }},
        {{"t_swap_ns", K::Time, "swap duration"}, [](Settings &s, auto &, double v) { s.hardware.t_swap = v; }},
        {{"t_cycle_ns", K::Time, "clock cycle"}, [](Settings &s, auto &, double v) { s.hardware.t_cycle = v; }},
        {{"gamma", K::Rate, "total mechanical decay"}, [](Settings &s, auto &, double v) { s.hardware.gamma = v; }},
        {{"n_b_gamma_b", K::Rate, "thermal injection rate"}, [](Settings &s, auto &, double v) { s.hardware.n_b_gamma_b = v; }},
        {{"Gamma_OM_tau", K::Number, "integrated scattering"}, [](Settings &s, auto &, double v) { s.hardware.Gamma_OM_tau = v; }},
        {{"eta_PC", K::Number, "parity-check fidelity"}, [](Settings &s, auto &, double v) { s.hardware.eta_PC = v; }},
        {{"eta_RO", K::Number, "single-qubit readout fidelity"}, [](Settings &s, auto &, double v) { s.hardware.eta_RO = v; }},
        {{"T_phi_m_ns", K::Time, "mechanical dephasing time"}, [](Settings &s, auto &, double v) { s.hardware.T_phi_m = v; }},
        {{"T_phi_DR_ns", K::Time, "dual-rail dephasing time"}, [](Settings &s, auto &, double v) { s.hardware.T_phi_DR = v; }},
        {{"T_1_DR_ns", K::Time, "dual-rail T1"}, [](Settings &s, auto &, double v) { s.hardware.T_1_DR = v; }},

        {{"graph", K::Text, "ring:N, path:N, complete:N or star:N"},
         [](Settings &s, const std::string &raw, double) { s.graph = raw; }},
        {{"graph_file", K::Text, "edge-list file (overrides graph)"},
         [](Settings &s, const std::string &raw, double) { s.graph_file = raw; }},
        {{"trials", K::Integer, "Monte Carlo trials for the budget scenario"},
         [](Settings &s, auto &, double v) { s.trials = (size_t)v; }},

        {{"ghz_photons", K::Integer, "photons per GHZ attempt"},
         [](Settings &s, auto &, double v) { s.counting.ghz_photons = (int)v; }},
        {{"ghz_success", K::Number, "GHZ success probability"},
         [](Settings &s, auto &, double v) { s.counting.ghz_success = v; }},
        {{"n_ghz_per_ring", K::Integer, "GHZ states per ring"},
         [](Settings &s, auto &, double v) { s.counting.n_ghz_per_ring = (int)v; }},
        {{"n_fusions", K::Integer, "fusion attempts per ring"},
         [](Settings &s, auto &, double v) { s.counting.n_fusions = (int)v; }},
        {{"fusion_success", K::Number, "type-I fusion success"},
         [](Settings &s, auto &, double v) { s.counting.fusion_success = v; }},
        {{"ring_size", K::Integer, "ring size"}, [](Settings &s, auto &, double v) { s.counting.ring_size = (int)v; }},
        {{"p_block", K::Number, "heralding probability per block"},
         [](Settings &s, auto &, double v) { s.counting.p_block = v; }},
        {{"margin", K::Number, "block safety factor"}, [](Settings &s, auto &, double v) { s.counting.margin = v; }},
        {{"sizes", K::Text, "comma-separated ring sizes"},
         [](Settings &s, const std::string &raw, double) { s.sizes = parse_sizes(raw); }},
    };
    return table;
}

}  // namespace

const std::vector<KeyInfo> &config_keys() {
    static const std::vector<KeyInfo> keys = [] {
        std::vector<KeyInfo> out;
        for (const auto &e : key_table()) {
            out.push_back(e.info);
        }
        return out;
    }();
    return keys;
}

Settings resolve_settings(const std::vector<ConfigEntry> &entries) {
    Settings s;
    const auto &table = key_table();
    for (const auto &e : entries) {
        auto it = std::find_if(table.begin(), table.end(), [&](const KeyEntry &k) { return k.info.name == e.key; });
        if (it == table.end()) {
            throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + e.key + "'");
        }
        try {
            double v = it->info.kind == ValueKind::Text ? 0.0 : (e.key == "t_hold_ns" ? 0.0 : parse_quantity(e.value, it->info.kind));
            it->set(s, e.value, v);
        } catch (const ConfigError &err) {
            throw ConfigError("line " + std::to_string(e.line) + " (" + e.key + "): " + err.what());
        }
    }
    try {
        s.transducer.validate();
        s.hardware.validate();
        s.counting.validate();
    } catch (const std::invalid_argument &err) {
        throw ConfigError(err.what());
    }
    if (!(s.sample_dt > 0) || !(s.grid_step > 0) || !(s.swap_dt > 0) || (s.dt && !(*s.dt > 0))) {
        throw ConfigError("step sizes must be positive");
    }
    return s;
}

}  // namespace hybridbell
