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

#ifndef HYBRIDBELL_DYNAMICS_H
#define HYBRIDBELL_DYNAMICS_H

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hybridbell/fock.h"
#include "hybridbell/lindblad.h"
#include "hybridbell/units.h"

namespace hybridbell {

/// Lab frame keeps omega_m explicitly. Rotating frame subtracts omega_m from the qubit and the
/// mechanics (and adds it back to the optics); total excitation number commutes with everything,
/// so populations agree between frames.
enum class Frame { Lab, Rotating };

struct SystemDims {
    size_t transmon = 3;
    size_t mechanics = 4;
    size_t optics = 0;  // 0 means the optical mode is adiabatically eliminated
};

/// Transducer rates and truncations. Defaults are the published simulation parameters.
struct TransducerParams {
    double omega_m = units::ghz(5.0);
    double gamma_0 = units::khz(100);
    double gamma_b = units::khz(25);
    double gamma_s = units::khz(200);
    double delta_frac = 0.8;
    double n_b = 1.0;
    double G_peak = units::mhz(10);
    double tau_pulse = 20.0;  // ns, Gaussian standard deviation of G(t)
    double kappa = units::ghz(1.0);
    double omega_q_detuned = units::ghz(4.8);
    double T_ramp = 5.0;  // ns
    double E_C_over_h = 0.2;  // GHz
    double g_qm = units::mhz(15);
    SystemDims dims;

    double e_c() const {
        return units::kTwoPi * E_C_over_h;
    }
    double gamma_total() const {
        return gamma_0 + gamma_b;
    }
    /// Heating-bath turn-on factor 1 - delta exp(-gamma_s t).
    double bath_factor(double t) const;

    /// Throws std::invalid_argument on negative rates, delta outside [0, 1] or bad dims.
    void validate() const;
};

Space transducer_space(const TransducerParams &p, bool with_optics = false);

enum class PumpShape { Off, Gaussian, Constant };

/// Pump envelope G(t) and qubit frequency ramp omega_q(t). Times are in ns from the pump start,
/// which is also the origin of the heating clock.
struct PulseSchedule {
    PumpShape shape = PumpShape::Gaussian;
    double G_peak = 0;
    double pump_center = 80;   // Gaussian center
    double pump_sigma = 20;    // Gaussian std. dev. of G(t)
    double cutoff_sigmas = 4;  // Gaussian truncated at +-cutoff_sigmas * sigma
    double pump_start = 0;     // Constant pump window
    double pump_stop = 0;

    bool swap = false;
    double swap_start = 0;  // beginning of the rise ramp
    double ramp_time = 5;
    double hold_time = 0;   // time spent fully on resonance
    double omega_q_detuned = 0;
    double omega_q_resonant = 0;

    double t_end = 0;

    double G(double t) const;
    double omega_q(double t) const;
    double pump_end() const;
    double hold_start() const {
        return swap_start + ramp_time;
    }
    double release_start() const {
        return hold_start() + hold_time;
    }
    /// End of the fall ramp.
    double release_time() const {
        return release_start() + ramp_time;
    }

    /// Gaussian pump centered at cutoff * sigma, optional swap right after the pump, then `tail` ns.
    static PulseSchedule standard(const TransducerParams &p, std::optional<double> hold_time, double tail = 20);
    /// Square pump of amplitude G over [0, duration] with the qubit parked at omega_q.
    static PulseSchedule constant_pump(double G, double duration, double omega_q);
};

struct CollapseTerm {
    std::string name;
    Operator op;
    double rate;
};

struct Generator {
    Operator hamiltonian;
    std::vector<CollapseTerm> collapses;
};

/// Hamiltonian and collapse list at time t (optical mode eliminated unless p.dims.optics > 0).
Generator build_generator(const TransducerParams &p, const PulseSchedule &s, double t, Frame frame = Frame::Lab);

/// Assembles the sparse time-dependent generator; identical content to build_generator.
LindbladModel build_model(const TransducerParams &p, const PulseSchedule &s, Frame frame, bool with_optics);

/// Eliminated-optics model with an extra register "o" of `counter_dim` levels that records how many
/// photons the optomechanical jump has emitted: the jump b^dag is replaced by b^dag (x) S, where S
/// shifts the register up by one (no sqrt(n) factor). Counter levels past the top are dropped.
Space counting_space(const TransducerParams &p, size_t counter_dim);
LindbladModel build_counting_model(const TransducerParams &p, const PulseSchedule &s, Frame frame, size_t counter_dim);

/// Largest single-quantum transition frequency or rate of the model, in GHz (cycles per ns).
double max_transition_ghz(const TransducerParams &p, const PulseSchedule &s, Frame frame, bool with_optics);

/// Step-size bound dt <= 0.02 / max_transition_ghz.
double max_stable_dt(const TransducerParams &p, const PulseSchedule &s, Frame frame, bool with_optics);

struct EvolveOptions {
    Frame frame = Frame::Lab;
    double t_start = 0;
    std::optional<double> t_stop;  // defaults to the schedule's t_end
    double sample_dt = 0.5;
    bool keep_states = true;
};

/// Maximum tolerated |tr rho - 1| before the run is declared failed.
inline constexpr double kMaxTraceDrift = 1e-4;

struct Trajectory {
    Space space;
    std::vector<double> times;
    std::vector<DensityMatrix> states;        // empty unless keep_states
    std::vector<Eigen::MatrixXd> populations;  // P(n_q, n_m) per sample, marginal over optics
    std::vector<double> mean_phonon;           // <b^dag b>
    std::vector<double> trace_error;           // tr rho - 1

    double population(size_t sample, size_t n_q, size_t n_m) const {
        return populations.at(sample)(n_q, n_m);
    }
    size_t size() const {
        return times.size();
    }
    /// Index of the sample nearest to t.
    size_t sample_at(double t) const;
    std::vector<double> series(size_t n_q, size_t n_m) const;
};

/// Integrates the qubit + mechanics master equation with the optical mode eliminated.
/// Throws IntegrationError on trace drift above kMaxTraceDrift or a step above max_stable_dt, and
/// PhysicsInfeasible when kappa / G_peak <= 10.
Trajectory evolve(
    const DensityMatrix &rho0, const TransducerParams &p, const PulseSchedule &s, double dt, const EvolveOptions &opt = {});

/// Same integration with the optical mode kept explicitly and damped at kappa.
Trajectory evolve_full_optics(
    const DensityMatrix &rho0, const TransducerParams &p, const PulseSchedule &s, double dt, const EvolveOptions &opt = {});

/// Mean phonon number from the scalar rate equation
/// d<n>/dt = (Gamma_OM - gamma) <n> + gamma_b n_b (1 - delta e^{-gamma_s t}) + Gamma_OM.
std::vector<double> mean_phonon(
    const TransducerParams &p, const PulseSchedule &s, std::span<const double> tgrid, double n0 = 0);

/// Columns t_ns, P_00, P_01, P_10, P_11, P_02, P_20, mean_phonon, trace_err.
void write_trajectory_csv(const Trajectory &traj, std::ostream &out);

}  // namespace hybridbell

#endif
