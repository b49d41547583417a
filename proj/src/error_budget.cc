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

#include "hybridbell/error_budget.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "hybridbell/units.h"

namespace hybridbell {

std::string error_type_name(ErrorType t) {
    switch (t) {
        case ErrorType::Erasure:
            return "Erasure";
        case ErrorType::Leakage:
            return "Leakage";
        case ErrorType::Pauli:
            return "Pauli";
    }
    return "?";
}

void HardwareParams::validate() const {
    for (double v : {kappa_e, kappa_i, tau, t_swap, t_cycle, gamma, n_b_gamma_b, Gamma_OM_tau, T_phi_m, T_phi_DR, T_1_DR}) {
        if (!(v > 0) || !std::isfinite(v)) {
            throw std::invalid_argument("hardware rates and times must be positive and finite");
        }
    }
    for (double f : {eta_PC, eta_RO}) {
        if (!(f > 0 && f <= 1)) {
            throw std::invalid_argument("fidelities must lie in (0, 1]");
        }
    }
    if (!(extra_loss >= 0 && extra_loss < 1)) {
        throw std::invalid_argument("extra loss must lie in [0, 1)");
    }
}

HardwareParams HardwareParams::nominal() {
    HardwareParams h{};
    h.kappa_e = units::ghz(1.0);
    h.kappa_i = units::ghz(193e3 / 2e6);  // omega_o / Q_i at 193 THz, Q_i = 2e6
    h.extra_loss = 0;
    h.tau = 40;
    h.t_swap = 100;
    h.t_cycle = 1000;
    h.gamma = units::khz(10);
    h.n_b_gamma_b = units::khz(100);
    h.Gamma_OM_tau = 0.1;
    h.eta_PC = 0.99;
    h.eta_RO = 0.99;
    h.T_phi_m = units::us(10);
    h.T_phi_DR = units::ms(1);
    h.T_1_DR = units::ms(1);
    return h;
}

namespace {

double clamp01(double x) {
    return std::min(1.0, std::max(0.0, x));
}

}  // namespace

std::vector<ErrorChannel> compute_budget(const HardwareParams &h) {
    h.validate();
    double window = h.tau + h.t_swap;
    double extraction = 1 - (1 - h.kappa_i / (h.kappa_e + h.kappa_i)) * (1 - h.extra_loss);
    double ro = 1 - h.eta_RO;
    std::vector<ErrorChannel> out{
        {"Photon extraction", "Photon loss", "kappa_i/(kappa_e+kappa_i)", ErrorType::Erasure, extraction},
        {"Thermal noise", "False heralding", "n_b*gamma_b*(tau+t_swap)", ErrorType::Erasure, h.n_b_gamma_b * window},
        {"Hard squeezing", "Multiphoton noise", "(Gamma_OM*tau)^2", ErrorType::Leakage, h.Gamma_OM_tau * h.Gamma_OM_tau},
        {"Phonon loss", "Multiphoton noise", "gamma*(tau+t_swap)", ErrorType::Leakage, h.gamma * window},
        {"Imperfect parity check", "False heralding", "1-eta_PC", ErrorType::Erasure, 1 - h.eta_PC},
        {"Measurement infidelity", "Inconsistent measurement", "1-eta_RO", ErrorType::Erasure, ro},
        {"Mechanical dephasing", "Phase flip", "(tau+t_swap)/T_phi_m", ErrorType::Pauli, window / h.T_phi_m},
        {"Qubit dephasing", "Phase flip", "t/T_phi_DR", ErrorType::Pauli, h.t_cycle / h.T_phi_DR},
        {"Qubit swap", "Bit flip", "t/T_1_DR", ErrorType::Pauli, h.t_cycle / h.T_1_DR},
        {"Measurement infidelity", "Phase/bit flip", "(1-eta_RO)^2", ErrorType::Pauli, ro * ro},
    };
    for (auto &c : out) {
        c.rate = clamp01(c.rate);
    }
    return out;
}

ThresholdReport check_thresholds(
    const std::vector<ErrorChannel> &channels, double located_threshold, double pauli_threshold) {
    ThresholdReport r;
    r.located_threshold = located_threshold;
    r.pauli_threshold = pauli_threshold;
    for (const auto &c : channels) {
        switch (c.etype) {
            case ErrorType::Erasure:
                r.erasure_total += c.rate;
                break;
            case ErrorType::Leakage:
                r.leakage_total += c.rate;
                break;
            case ErrorType::Pauli:
                r.pauli_total += c.rate;
                break;
        }
    }
    r.located_total = r.erasure_total + r.leakage_total;
    r.located_pass = r.located_total <= located_threshold;
    r.pauli_pass = r.pauli_total <= pauli_threshold;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    r.located_margin = r.located_total > 0 ? located_threshold / r.located_total : kInf;
    r.pauli_margin = r.pauli_total > 0 ? pauli_threshold / r.pauli_total : kInf;
    return r;
}

namespace {

struct BatchCounts {
    std::vector<uint64_t> intact_histogram;
    std::vector<uint64_t> channel_events;
    uint64_t located = 0;
    uint64_t pauli = 0;
};

BatchCounts run_batch(size_t n, const std::vector<ErrorChannel> &channels, size_t trials, uint64_t seed) {
    BatchCounts c;
    c.intact_histogram.assign(n + 1, 0);
    c.channel_events.assign(channels.size(), 0);
    std::mt19937_64 rng(seed);
    for (size_t t = 0; t < trials; t++) {
        size_t intact = 0;
        for (size_t q = 0; q < n; q++) {
            bool located = false;
            bool pauli = false;
            for (size_t k = 0; k < channels.size(); k++) {
                double u = (double)(rng() >> 11) * 0x1.0p-53;
                if (u < channels[k].rate) {
                    c.channel_events[k]++;
                    (channels[k].etype == ErrorType::Pauli ? pauli : located) = true;
                }
            }
            if (located) {
                c.located++;
            } else if (pauli) {
                c.pauli++;
            } else {
                intact++;
            }
        }
        c.intact_histogram[intact]++;
    }
    return c;
}

}  // namespace

ResourceSampleStats sample_resource_state(const Graph &g, const std::vector<ErrorChannel> &channels, size_t trials,
                                          uint64_t seed, const SampleOptions &opt) {
    if (trials == 0) {
        throw std::invalid_argument("need at least one trial");
    }
    if (opt.batch_size == 0) {
        throw std::invalid_argument("batch size must be positive");
    }
    for (const auto &c : channels) {
        if (!(c.rate >= 0 && c.rate <= 1)) {
            throw std::invalid_argument("channel rate outside [0, 1]: " + c.source);
        }
    }
    size_t n = g.size();
    size_t n_batches = (trials + opt.batch_size - 1) / opt.batch_size;
    std::vector<BatchCounts> results(n_batches);
    auto work = [&](size_t first, size_t stride) {
        for (size_t b = first; b < n_batches; b += stride) {
            size_t count = std::min(opt.batch_size, trials - b * opt.batch_size);
            results[b] = run_batch(n, channels, count, split_seed(seed, b));
        }
    };
    size_t threads = std::max<size_t>(1, std::min(opt.threads, n_batches));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < threads; w++) {
            pool.emplace_back(work, w, threads);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    ResourceSampleStats s;
    s.trials = trials;
    s.n_qubits = n;
    s.intact_histogram.assign(n + 1, 0);
    std::vector<uint64_t> events(channels.size(), 0);
    uint64_t located = 0;
    uint64_t pauli = 0;
    for (const auto &r : results) {
        for (size_t k = 0; k <= n; k++) {
            s.intact_histogram[k] += r.intact_histogram[k];
        }
        for (size_t k = 0; k < channels.size(); k++) {
            events[k] += r.channel_events[k];
        }
        located += r.located;
        pauli += r.pauli;
    }
    double qubit_trials = (double)trials * (double)n;
    s.fully_intact_fraction = (double)s.intact_histogram[n] / (double)trials;
    for (uint64_t e : events) {
        s.channel_rates.push_back(n > 0 ? (double)e / qubit_trials : 0.0);
    }
    s.located_rate = n > 0 ? (double)located / qubit_trials : 0.0;
    s.pauli_rate = n > 0 ? (double)pauli / qubit_trials : 0.0;
    return s;
}

void write_budget_csv(const std::vector<ErrorChannel> &channels, std::ostream &out) {
    out << "source,effect,scaling_expr,rate,error_type\n";
    char buf[32];
    for (const auto &c : channels) {
        std::snprintf(buf, sizeof(buf), "%.6e", c.rate);
        out << c.source << ',' << c.effect << ',' << c.scaling_expr << ',' << buf << ',' << error_type_name(c.etype)
            << '\n';
    }
}

void write_thresholds_csv(const ThresholdReport &r, std::ostream &out) {
    out << "category,total,threshold,pass,margin\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "erasure,%.6e,,,\n", r.erasure_total);
    out << buf;
    std::snprintf(buf, sizeof(buf), "leakage,%.6e,,,\n", r.leakage_total);
    out << buf;
    std::snprintf(buf, sizeof(buf), "located,%.6e,%.6e,%d,%.6e\n", r.located_total, r.located_threshold,
                  (int)r.located_pass, r.located_margin);
    out << buf;
    std::snprintf(buf, sizeof(buf), "pauli,%.6e,%.6e,%d,%.6e\n", r.pauli_total, r.pauli_threshold, (int)r.pauli_pass,
                  r.pauli_margin);
    out << buf;
}

}  // namespace hybridbell
