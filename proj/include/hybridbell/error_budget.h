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

#ifndef HYBRIDBELL_ERROR_BUDGET_H
#define HYBRIDBELL_ERROR_BUDGET_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hybridbell/graph_state.h"

namespace hybridbell {

enum class ErrorType { Erasure, Leakage, Pauli };

std::string error_type_name(ErrorType t);

/// Rates in rad/ns, durations in ns.
struct HardwareParams {
    double kappa_e;
    double kappa_i;
    double extra_loss = 0;  // filtering and coupling losses on top of kappa_i / (kappa_e + kappa_i)
    double tau;
    double t_swap;
    double t_cycle;
    double gamma;
    double n_b_gamma_b;
    double Gamma_OM_tau;
    double eta_PC;
    double eta_RO;
    double T_phi_m;
    double T_phi_DR;
    double T_1_DR;

    /// Throws std::invalid_argument unless rates and times are positive and fidelities lie in (0, 1].
    void validate() const;
    /// Order-of-magnitude operating point of the error table.
    static HardwareParams nominal();
};

struct ErrorChannel {
    std::string source;
    std::string effect;
    std::string scaling_expr;
    ErrorType etype;
    double rate;  // probability per optical qubit per clock cycle
};

std::vector<ErrorChannel> compute_budget(const HardwareParams &h);

struct ThresholdReport {
    double erasure_total = 0;
    double leakage_total = 0;
    double located_total = 0;  // erasure + leakage
    double pauli_total = 0;
    double located_threshold = 0.10;
    double pauli_threshold = 0.01;
    bool located_pass = true;
    bool pauli_pass = true;
    double located_margin = 0;  // threshold / total; infinite when the total is zero
    double pauli_margin = 0;
};

/// Per-qubit totals against the erasure (10%) and Pauli (1%) thresholds.
ThresholdReport check_thresholds(
    const std::vector<ErrorChannel> &channels, double located_threshold = 0.10, double pauli_threshold = 0.01);

struct SampleOptions {
    size_t batch_size = 4096;
    size_t threads = 1;
};

struct ResourceSampleStats {
    size_t trials = 0;
    size_t n_qubits = 0;
    std::vector<uint64_t> intact_histogram;  // index k = trials with exactly k untouched qubits
    double fully_intact_fraction = 0;
    std::vector<double> channel_rates;  // observed events / (trials * n_qubits), per channel
    double located_rate = 0;            // qubits with an erasure or leakage event
    double pauli_rate = 0;              // qubits with a Pauli event and nothing located
};

/// Independent per-qubit, per-channel events on the graph's optical qubits. Trials are split into
/// batches; batch b draws from a generator seeded with split_seed(seed, b), so results do not
/// depend on the thread count.
ResourceSampleStats sample_resource_state(const Graph &g, const std::vector<ErrorChannel> &channels, size_t trials,
                                          uint64_t seed, const SampleOptions &opt = {});

/// Columns source, effect, scaling_expr, rate, error_type.
void write_budget_csv(const std::vector<ErrorChannel> &channels, std::ostream &out);
void write_thresholds_csv(const ThresholdReport &report, std::ostream &out);

}  // namespace hybridbell

#endif
