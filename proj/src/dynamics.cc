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

#include "hybridbell/dynamics.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hybridbell/errors.h"
#include "hybridbell/squeezing.h"

namespace hybridbell {

double TransducerParams::bath_factor(double t) const {
    return 1 - delta_frac * std::exp(-gamma_s * t);
}

void TransducerParams::validate() const {
    for (double rate : {omega_m, gamma_0, gamma_b, gamma_s, n_b, G_peak, tau_pulse, kappa, omega_q_detuned, T_ramp,
                        E_C_over_h, g_qm}) {
        if (!(rate >= 0) || !std::isfinite(rate)) {
            throw std::invalid_argument("transducer rates, durations and occupancies must be finite and >= 0");
        }
    }
    if (delta_frac < 0 || delta_frac > 1) {
        throw std::invalid_argument("slow-bath fraction delta must lie in [0, 1]");
    }
    if (dims.transmon < 2 || dims.mechanics < 2 || dims.optics == 1) {
        throw std::invalid_argument("mode truncations must be >= 2 (optics 0 = eliminated)");
    }
}

Space transducer_space(const TransducerParams &p, bool with_optics) {
    Space space{{"q", p.dims.transmon}, {"m", p.dims.mechanics}};
    if (with_optics) {
        if (p.dims.optics < 2) {
            throw std::invalid_argument("full-optics model needs an optical truncation >= 2");
        }
        space.push_back({"o", p.dims.optics});
    }
    return space;
}

static double smoothstep(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * (3 - 2 * x);
}

double PulseSchedule::G(double t) const {
    switch (shape) {
        case PumpShape::Off:
            return 0;
        case PumpShape::Constant:
            return (t >= pump_start && t <= pump_stop) ? G_peak : 0;
        case PumpShape::Gaussian: {
            double x = (t - pump_center) / pump_sigma;
            if (std::abs(x) > cutoff_sigmas) {
                return 0;
            }
            return G_peak * std::exp(-0.5 * x * x);
        }
    }
    return 0;
}

double PulseSchedule::omega_q(double t) const {
    if (!swap || t <= swap_start) {
        return omega_q_detuned;
    }
    double span = omega_q_resonant - omega_q_detuned;
    if (t < hold_start()) {
        return omega_q_detuned + span * smoothstep((t - swap_start) / ramp_time);
    }
    if (t <= release_start()) {
        return omega_q_resonant;
    }
    return omega_q_detuned + span * (1 - smoothstep((t - release_start()) / ramp_time));
}

double PulseSchedule::pump_end() const {
    switch (shape) {
        case PumpShape::Off:
            return 0;
        case PumpShape::Constant:
            return pump_stop;
        case PumpShape::Gaussian:
            return pump_center + cutoff_sigmas * pump_sigma;
    }
    return 0;
}

PulseSchedule PulseSchedule::standard(const TransducerParams &p, std::optional<double> hold_time, double tail) {
    PulseSchedule s;
    s.shape = p.G_peak > 0 ? PumpShape::Gaussian : PumpShape::Off;
    s.G_peak = p.G_peak;
    s.pump_sigma = p.tau_pulse;
    s.cutoff_sigmas = 4;
    s.pump_center = s.cutoff_sigmas * p.tau_pulse;
    s.omega_q_detuned = p.omega_q_detuned;
    s.omega_q_resonant = p.omega_m;
    s.ramp_time = p.T_ramp;
    double pump_done = 2 * s.cutoff_sigmas * p.tau_pulse;
    if (hold_time.has_value()) {
        if (*hold_time < 0) {
            throw std::invalid_argument("hold time must be >= 0");
        }
        s.swap = true;
        s.swap_start = pump_done;
        s.hold_time = *hold_time;
        s.t_end = s.release_time() + tail;
    } else {
        s.t_end = pump_done + tail;
    }
    return s;
}

PulseSchedule PulseSchedule::constant_pump(double G, double duration, double omega_q) {
    PulseSchedule s;
    s.shape = PumpShape::Constant;
    s.G_peak = G;
    s.pump_start = 0;
    s.pump_stop = duration;
    s.omega_q_detuned = omega_q;
    s.omega_q_resonant = omega_q;
    s.t_end = duration;
    return s;
}

namespace {

struct ModelOps {
    Space space;
    Operator n_q;
    Operator kerr;  // -(E_C / 2) a^dag a^dag a a
    Operator n_m;
    Operator exchange;  // a^dag b + a b^dag
    Operator b;
    Operator b_dag;
    std::optional<Operator> c;
    std::optional<Operator> pair;  // b^dag c^dag + b c
    std::optional<Operator> n_o;
};

ModelOps make_ops(const TransducerParams &p, bool with_optics) {
    Space space = transducer_space(p, with_optics);
    Operator a = lift(annihilation(p.dims.transmon, "q"), space);
    Operator b = lift(annihilation(p.dims.mechanics, "m"), space);
    Operator ad = a.adjoint();
    Operator bd = b.adjoint();
    ModelOps ops{
        space,
        ad * a,
        ad * ad * a * a * cd(-0.5 * p.e_c()),
        bd * b,
        ad * b + a * bd,
        b,
        bd,
        std::nullopt,
        std::nullopt,
        std::nullopt,
    };
    if (with_optics) {
        Operator c = lift(annihilation(p.dims.optics, "o"), space);
        ops.c = c;
        ops.pair = bd * c.adjoint() + b * c;
        ops.n_o = c.adjoint() * c;
    }
    return ops;
}

double frame_offset(const TransducerParams &p, Frame frame) {
    return frame == Frame::Rotating ? p.omega_m : 0.0;
}

}  // namespace

Generator build_generator(const TransducerParams &p, const PulseSchedule &s, double t, Frame frame) {
    p.validate();
    bool with_optics = p.dims.optics > 0;
    ModelOps ops = make_ops(p, with_optics);
    double w = frame_offset(p, frame);

    Operator h = ops.n_q * cd(s.omega_q(t) - w) + ops.kerr + ops.n_m * cd(p.omega_m - w) + ops.exchange * cd(p.g_qm);
    double f = p.bath_factor(t);
    std::vector<CollapseTerm> collapses;
    if (with_optics) {
        // Laser frame: optical mode sits at -Delta = -omega_m.
        h = h + *ops.n_o * cd(-p.omega_m + w) + *ops.pair * cd(s.G(t));
        collapses.push_back({"optical_decay", *ops.c, p.kappa});
    } else {
        collapses.push_back({"optomechanical", ops.b_dag, scattering_rate(s.G(t), p.kappa)});
    }
    collapses.push_back({"fridge_decay", ops.b, p.gamma_0});
    collapses.push_back({"bath_heating", ops.b_dag, p.gamma_b * p.n_b * f});
    collapses.push_back({"bath_decay", ops.b, p.gamma_b * (p.n_b * f + 1)});
    return {h, collapses};
}

LindbladModel build_model(const TransducerParams &p, const PulseSchedule &s, Frame frame, bool with_optics) {
    p.validate();
    ModelOps ops = make_ops(p, with_optics);
    double w = frame_offset(p, frame);

    LindbladModel model(ops.space);
    Operator h_static = ops.kerr + ops.n_m * cd(p.omega_m - w) + ops.exchange * cd(p.g_qm);
    if (with_optics) {
        h_static = h_static + *ops.n_o * cd(-p.omega_m + w);
    }
    model.add_hamiltonian(h_static, [](double) { return 1.0; });
    model.add_hamiltonian(ops.n_q, [s, w](double t) { return s.omega_q(t) - w; });

    double kappa = p.kappa;
    if (with_optics) {
        model.add_hamiltonian(*ops.pair, [s](double t) { return s.G(t); });
        model.add_dissipator(*ops.c, [kappa](double) { return kappa; });
        model.add_dissipator(ops.b_dag, [p](double t) { return p.gamma_b * p.n_b * p.bath_factor(t); });
    } else {
        model.add_dissipator(ops.b_dag, [p, s, kappa](double t) {
            double g = s.G(t);
            return scattering_rate(g, kappa) + p.gamma_b * p.n_b * p.bath_factor(t);
        });
    }
    model.add_dissipator(
        ops.b, [p](double t) { return p.gamma_0 + p.gamma_b * (p.n_b * p.bath_factor(t) + 1); });
    return model;
}

Space counting_space(const TransducerParams &p, size_t counter_dim) {
    if (counter_dim < 2) {
        throw std::invalid_argument("photon counter needs at least 2 levels");
    }
    return {{"q", p.dims.transmon}, {"m", p.dims.mechanics}, {"o", counter_dim}};
}

LindbladModel build_counting_model(
    const TransducerParams &p, const PulseSchedule &s, Frame frame, size_t counter_dim) {
    p.validate();
    Space space = counting_space(p, counter_dim);
    Operator a = lift(annihilation(p.dims.transmon, "q"), space);
    Operator b = lift(annihilation(p.dims.mechanics, "m"), space);
    CMatrix shift = CMatrix::Zero((Eigen::Index)counter_dim, (Eigen::Index)counter_dim);
    for (size_t k = 0; k + 1 < counter_dim; k++) {
        shift((Eigen::Index)k + 1, (Eigen::Index)k) = 1;
    }
    Operator counter_up = lift(Operator({{"o", counter_dim}}, shift), space);
    Operator ad = a.adjoint();
    Operator bd = b.adjoint();
    double w = frame_offset(p, frame);

    LindbladModel model(space);
    Operator h_static = ad * ad * a * a * cd(-0.5 * p.e_c()) + bd * b * cd(p.omega_m - w) + (ad * b + a * bd) * cd(p.g_qm);
    model.add_hamiltonian(h_static, [](double) { return 1.0; });
    model.add_hamiltonian(ad * a, [s, w](double t) { return s.omega_q(t) - w; });
    double kappa = p.kappa;
    model.add_dissipator(bd * counter_up, [s, kappa](double t) { return scattering_rate(s.G(t), kappa); });
    model.add_dissipator(bd, [p](double t) { return p.gamma_b * p.n_b * p.bath_factor(t); });
    model.add_dissipator(
        b, [p](double t) { return p.gamma_0 + p.gamma_b * (p.n_b * p.bath_factor(t) + 1); });
    return model;
}

double max_transition_ghz(const TransducerParams &p, const PulseSchedule &s, Frame frame, bool with_optics) {
    double w = frame_offset(p, frame);
    double e_c = p.e_c();
    double biggest = 0;
    for (double wq : {s.omega_q_detuned, s.omega_q_resonant, p.omega_q_detuned}) {
        for (size_t n = 0; n + 1 < p.dims.transmon; n++) {
            biggest = std::max(biggest, std::abs(wq - w - e_c * (double)n));
        }
    }
    biggest = std::max(biggest, std::abs(p.omega_m - w));
    biggest = std::max(biggest, 2 * p.g_qm * std::sqrt((double)std::max(p.dims.transmon, p.dims.mechanics) - 1));
    double max_rate = p.gamma_0 + p.gamma_b * (p.n_b + 1);
    if (with_optics) {
        biggest = std::max(biggest, std::abs(-p.omega_m + w));
        biggest = std::max(biggest, 2 * s.G_peak * (double)std::max(p.dims.mechanics, p.dims.optics));
        max_rate = std::max(max_rate, p.kappa * (double)(p.dims.optics - 1));
    } else if (p.kappa > 0) {
        max_rate += scattering_rate(s.G_peak, p.kappa) * (double)p.dims.mechanics;
    }
    biggest = std::max(biggest, max_rate);
    return units::to_ghz(biggest);
}

double max_stable_dt(const TransducerParams &p, const PulseSchedule &s, Frame frame, bool with_optics) {
    double gap = max_transition_ghz(p, s, frame, with_optics);
    return gap > 0 ? 0.02 / gap : 1.0;
}

size_t Trajectory::sample_at(double t) const {
    if (times.empty()) {
        throw std::out_of_range("empty trajectory");
    }
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end()) {
        return times.size() - 1;
    }
    size_t k = (size_t)(it - times.begin());
    if (k > 0 && std::abs(times[k - 1] - t) < std::abs(times[k] - t)) {
        k--;
    }
    return k;
}

std::vector<double> Trajectory::series(size_t n_q, size_t n_m) const {
    std::vector<double> out;
    out.reserve(populations.size());
    for (const auto &pop : populations) {
        out.push_back(n_q < (size_t)pop.rows() && n_m < (size_t)pop.cols() ? pop(n_q, n_m) : 0.0);
    }
    return out;
}

namespace {

void record_sample(Trajectory &traj, double t, const CVector &v, size_t dim, bool keep_state) {
    CMatrix rho = unvectorize(v, dim);
    double tr_err = rho.trace().real() - 1;
    if (std::abs(tr_err) > kMaxTraceDrift) {
        throw IntegrationError("trace drift " + std::to_string(tr_err) + " at t = " + std::to_string(t) +
                               " ns; reduce the time step");
    }
    const Space &space = traj.space;
    size_t dq = space[0].dim;
    size_t dm = space[1].dim;
    size_t rest = dim / (dq * dm);
    Eigen::MatrixXd pop = Eigen::MatrixXd::Zero(dq, dm);
    double n_mean = 0;
    for (size_t i = 0; i < dim; i++) {
        size_t nq = i / (dm * rest);
        size_t nm = (i / rest) % dm;
        double pi = rho(i, i).real();
        pop(nq, nm) += pi;
        n_mean += (double)nm * pi;
    }
    for (Eigen::Index i = 0; i < pop.size(); i++) {
        double &x = pop.data()[i];
        if (x < -1e-10) {
            throw IntegrationError("negative population " + std::to_string(x) + " at t = " + std::to_string(t));
        }
        x = std::max(x, 0.0);
    }
    traj.times.push_back(t);
    traj.populations.push_back(std::move(pop));
    traj.mean_phonon.push_back(n_mean);
    traj.trace_error.push_back(tr_err);
    if (keep_state) {
        traj.states.emplace_back(space, std::move(rho), kIntegratorTolerance);
    }
}

Trajectory run(const DensityMatrix &rho0, const TransducerParams &p, const PulseSchedule &s, double dt,
               const EvolveOptions &opt, bool with_optics) {
    p.validate();
    Space space = transducer_space(p, with_optics);
    if (rho0.space() != space) {
        throw std::invalid_argument("initial state does not live on the transducer space");
    }
    double limit = max_stable_dt(p, s, opt.frame, with_optics);
    if (!(dt > 0) || dt > limit * (1 + 1e-9)) {
        throw IntegrationError("time step " + std::to_string(dt) + " ns exceeds the bound " + std::to_string(limit) +
                               " ns for this frame");
    }
    if (!(opt.sample_dt > 0)) {
        throw std::invalid_argument("sample interval must be positive");
    }
    double t_stop = opt.t_stop.value_or(s.t_end);
    if (t_stop < opt.t_start) {
        throw std::invalid_argument("stop time precedes start time");
    }

    LindbladModel model = build_model(p, s, opt.frame, with_optics);
    Trajectory traj;
    traj.space = space;
    CVector v = vectorize(rho0.matrix());
    size_t dim = rho0.dim();

    double t = opt.t_start;
    record_sample(traj, t, v, dim, opt.keep_states);
    auto samples = (size_t)std::ceil((t_stop - opt.t_start) / opt.sample_dt - 1e-9);
    for (size_t k = 1; k <= samples; k++) {
        double t_next = std::min(opt.t_start + (double)k * opt.sample_dt, t_stop);
        model.propagate(v, t, t_next, dt);
        t = t_next;
        record_sample(traj, t, v, dim, opt.keep_states);
    }
    return traj;
}

}  // namespace

Trajectory evolve(
    const DensityMatrix &rho0, const TransducerParams &p, const PulseSchedule &s, double dt, const EvolveOptions &opt) {
    if (s.G_peak > 0 && p.kappa / s.G_peak <= 10) {
        throw PhysicsInfeasible("kappa / G_peak = " + std::to_string(p.kappa / s.G_peak) +
                                " is too small to eliminate the optical mode; use the full-optics model");
    }
    return run(rho0, p, s, dt, opt, false);
}

Trajectory evolve_full_optics(
    const DensityMatrix &rho0, const TransducerParams &p, const PulseSchedule &s, double dt, const EvolveOptions &opt) {
    if (p.dims.optics < 2) {
        throw std::invalid_argument("full-optics model needs dims.optics >= 2");
    }
    size_t total = p.dims.transmon * p.dims.mechanics * p.dims.optics;
    if (total > 500) {
        throw std::invalid_argument("full-optics Hilbert space dimension " + std::to_string(total) + " exceeds 500");
    }
    return run(rho0, p, s, dt, opt, true);
}

std::vector<double> mean_phonon(
    const TransducerParams &p, const PulseSchedule &s, std::span<const double> tgrid, double n0) {
    for (size_t k = 1; k < tgrid.size(); k++) {
        if (!(tgrid[k] > tgrid[k - 1])) {
            throw std::invalid_argument("time grid must be strictly increasing");
        }
    }
    double gamma = p.gamma_total();
    auto rhs = [&](double t, double n) {
        double g = s.G(t);
        double gom = p.kappa > 0 ? 4 * g * g / p.kappa : 0;
        return (gom - gamma) * n + p.gamma_b * p.n_b * p.bath_factor(t) + gom;
    };
    std::vector<double> out;
    out.reserve(tgrid.size());
    if (tgrid.empty()) {
        return out;
    }
    double n = n0;
    out.push_back(n);
    constexpr double kMaxStep = 0.05;
    for (size_t k = 1; k < tgrid.size(); k++) {
        double span = tgrid[k] - tgrid[k - 1];
        auto steps = std::max<size_t>(1, (size_t)std::ceil(span / kMaxStep - 1e-9));
        double h = span / (double)steps;
        double t0 = tgrid[k - 1];
        for (size_t j = 0; j < steps; j++) {
            double t = t0 + (double)j * h;
            double k1 = rhs(t, n);
            double k2 = rhs(t + h / 2, n + h / 2 * k1);
            double k3 = rhs(t + h / 2, n + h / 2 * k2);
            double k4 = rhs(t + h, n + h * k3);
            n += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        }
        out.push_back(n);
    }
    return out;
}

void write_trajectory_csv(const Trajectory &traj, std::ostream &out) {
    out << "t_ns,P_00,P_01,P_10,P_11,P_02,P_20,mean_phonon,trace_err\n";
    char buf[64];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.10e", x);
        out << buf;
    };
    for (size_t k = 0; k < traj.size(); k++) {
        const auto &pop = traj.populations[k];
        auto at = [&](size_t q, size_t m) {
            return q < (size_t)pop.rows() && m < (size_t)pop.cols() ? pop(q, m) : 0.0;
        };
        std::snprintf(buf, sizeof(buf), "%.4f", traj.times[k]);
        out << buf;
        for (double x : {at(0, 0), at(0, 1), at(1, 0), at(1, 1), at(0, 2), at(2, 0), traj.mean_phonon[k],
                         traj.trace_error[k]}) {
            out << ',';
            put(x);
        }
        out << '\n';
    }
}

}  // namespace hybridbell
