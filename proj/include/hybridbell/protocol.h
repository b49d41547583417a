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

#ifndef HYBRIDBELL_PROTOCOL_H
#define HYBRIDBELL_PROTOCOL_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hybridbell/dynamics.h"
#include "hybridbell/fock.h"

namespace hybridbell {

struct SwapPlan {
    double t_start = 0;  // beginning of the rise ramp
    double t_hold = 0;   // time spent on resonance
    int n_half_swaps = 0;
    double P11_residual = 0;
    double P10_peak = 0;     // largest P10 at release over the scanned window
    double P10_release = 0;  // P10 at release for this plan
};

struct SwapSample {
    double t_hold;
    double P10;
    double P11;
    double P01;
    double objective;
};

struct SwapSearchOptions {
    double grid_step = 0.25;  // ns
    double dt = 0.02;         // ns, rotating frame
    double p10_fraction = 0.9;
    double refine_tol = 1e-3;  // ns
};

struct SwapLandscape {
    std::vector<SwapSample> samples;
    SwapPlan plan;
};

/// [grid_step, 2 pi / g_qm]: a bit more than four single-excitation half-swap periods.
std::pair<double, double> default_swap_window(const TransducerParams &p, const SwapSearchOptions &opt = {});

/// Grid scan of the hold time followed by golden-section refinement. Minimizes P11 at release
/// subject to P10 >= p10_fraction * max P10 over the grid. The window must span at least two
/// half-swap periods (pi / g_qm). Throws std::invalid_argument on a bad window and NoFeasibleSwap
/// when nothing is ever transferred.
SwapLandscape scan_swap(const TransducerParams &p, const PulseSchedule &s, std::pair<double, double> window,
                        const SwapSearchOptions &opt = {});
SwapPlan optimize_swap(const TransducerParams &p, const PulseSchedule &s, std::pair<double, double> window,
                       const SwapSearchOptions &opt = {});

/// Hold time of the first P10 maximum (one half-swap), for comparison with the multi-swap plan.
SwapPlan single_swap_plan(const TransducerParams &p, const PulseSchedule &s, const SwapSearchOptions &opt = {});

/// Standard schedule carrying out `plan`.
PulseSchedule schedule_for(const TransducerParams &p, const SwapPlan &plan, double tail = 20);

/// Columns t_hold_ns, P10, P11, P01, objective.
void write_swap_landscape_csv(const SwapLandscape &landscape, std::ostream &out);

/// One rail after release, written in the photon-identified picture: `coherent` holds amplitudes
/// psi_n for records where the qubit holds n excitations, the mechanics is empty and n photons were
/// emitted; `incoherent` holds qubit-level populations of every other record.
struct RailState {
    CVector coherent;
    Eigen::VectorXd incoherent;
    std::vector<double> photon_counts;  // P(n photons emitted)

    size_t levels() const {
        return (size_t)coherent.size();
    }
    double norm() const;
};

/// sqrt(p0)|0> + sqrt(p1) e^{i theta}|1>, padded to `levels`.
RailState ideal_rail(double p0, double p1, double theta, size_t levels = 2);

/// Reset, pump and swap one rail; the emitted photon number is tracked by a counter register.
RailState simulate_rail(
    const TransducerParams &p, const PulseSchedule &s, double theta, double dt = 0.02, size_t counter_dim = 4);

/// Both rails as a density matrix over (q1, f1, q2, f2), where f = 0 marks the photon-matched record.
DensityMatrix rail_pair_state(const RailState &r1, const RailState &r2);

enum class Parity { Even, Odd };

/// Classical confusion of the parity readout. false_odd = P(report odd | even), false_even = P(report even | odd).
struct ParityErrorModel {
    double false_odd = 0;
    double false_even = 0;

    static ParityErrorModel symmetric(double eta_pc);
};

struct ParityBranch {
    double p_reported = 0;
    double p_true = 0;
    std::optional<DensityMatrix> rho;  // state conditioned on the reported label; empty if p_reported == 0
};

struct ParityCheckResult {
    ParityBranch even;
    ParityBranch odd;

    const ParityBranch &branch(Parity parity) const {
        return parity == Parity::Odd ? odd : even;
    }
};

/// Parity of the total excitation in `modes` (every mode if empty), followed by the classical
/// confusion channel. Both reported branches are returned.
ParityCheckResult parity_check_channel(
    const DensityMatrix &rho, const ParityErrorModel &errors, const std::vector<std::string> &modes = {});
ParityCheckResult parity_check_channel(const DensityMatrix &rho, double eta_pc, const std::vector<std::string> &modes = {});

/// 50:50 rail beam splitter: |01> -> (|01> + |10>)/sqrt 2, |10> -> (|01> - |10>)/sqrt 2, identity elsewhere.
/// The state must have exactly two modes.
DensityMatrix hadamard_dual_rail(const DensityMatrix &rho2);

struct BellOptions {
    double relative_phase = 0;  // phase of rail 2's drive relative to rail 1
    double dt = 0.02;
    size_t counter_dim = 4;
    std::optional<ParityErrorModel> parity_errors;  // overrides the symmetric eta_pc model
    uint64_t seed = 0;
};

struct BellOutcome {
    bool herald = false;
    double p_herald = 0;
    double p_odd_true = 0;
    std::optional<DensityMatrix> rho_post;  // (q1, f1, q2, f2) after a reported odd outcome
    std::optional<DensityMatrix> rho_rails;  // qubit computational block {00, 01, 10, 11}, renormalized
    double leakage_weight = 0;
    std::vector<std::vector<double>> optical_pair_model;  // per rail P(n photons)
};

/// True with probability p, using the first 53 bits drawn from mt19937_64(seed).
bool sample_herald(double p, uint64_t seed);

/// Parity-check heralding of two prepared rails; the herald itself is sampled from `seed`.
BellOutcome herald_rails(const RailState &r1, const RailState &r2, const ParityErrorModel &errors, uint64_t seed);

BellOutcome run_bell_cycle(const TransducerParams &p, const SwapPlan &plan, double eta_pc, const BellOptions &opt = {});

struct BellScore {
    double fidelity;
    double leakage_weight;
    double optical_match;  // probability that both rails carry the photon-matched record
};

/// <Psi+|rho_post|Psi+> with Psi+ = (|01> + |10>)/sqrt 2 on photon-matched records.
/// Throws std::invalid_argument if the outcome did not herald.
BellScore bell_fidelity(const BellOutcome &out);

}  // namespace hybridbell

#endif
