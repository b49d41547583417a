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

#include "hybridbell/protocol.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "hybridbell/errors.h"
#include "hybridbell/squeezing.h"

namespace hybridbell {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;
constexpr double kInfeasiblePenalty = 1000;

void check_eliminated_model(const TransducerParams &p, const PulseSchedule &s, double dt) {
    if (s.G_peak > 0 && p.kappa / s.G_peak <= 10) {
        throw PhysicsInfeasible("kappa / G_peak = " + std::to_string(p.kappa / s.G_peak) +
                                " is too small to eliminate the optical mode");
    }
    double limit = max_stable_dt(p, s, Frame::Rotating, false);
    if (!(dt > 0) || dt > limit * (1 + 1e-9)) {
        throw IntegrationError("time step " + std::to_string(dt) + " ns exceeds the bound " + std::to_string(limit) + " ns");
    }
}

// A schedule without a swap gets one right after the pump.
double swap_origin(const PulseSchedule &s) {
    return s.swap ? s.swap_start : s.pump_end();
}

// Holds the state at every grid point of the resonant hold and finishes the fall ramp on demand.
class SwapScanner {
   public:
    SwapScanner(const TransducerParams &p, const PulseSchedule &s, double lo, double hi, const SwapSearchOptions &opt)
        : p_(p), base_(s), lo_(lo), hi_(hi), opt_(opt) {
        base_.swap_start = swap_origin(s);
        base_.swap = true;
        base_.hold_time = hi + 2 * opt.grid_step;
        base_.omega_q_resonant = p.omega_m;
        check_eliminated_model(p, base_, opt.dt);
        dim_ = p.dims.transmon * p.dims.mechanics;
        LindbladModel hold = build_model(p, base_, Frame::Rotating, false);
        CVector v = vectorize(DensityMatrix::vacuum(transducer_space(p)).matrix());
        hold.propagate(v, 0, base_.hold_start(), opt.dt);
        double t = 0;
        for (size_t k = 0;; k++) {
            double tk = lo + (double)k * opt.grid_step;
            if (tk > hi + 1e-9) {
                break;
            }
            hold.propagate(v, base_.hold_start() + t, base_.hold_start() + tk, opt.dt);
            t = tk;
            grid_.push_back(tk);
            states_.push_back(v);
        }
        hold_model_.emplace(std::move(hold));
    }

    const std::vector<double> &grid() const {
        return grid_;
    }

    SwapSample at_grid(size_t k) const {
        return finish(states_[k], grid_[k]);
    }

    SwapSample at(double t_hold) const {
        auto k = (size_t)std::floor((t_hold - lo_) / opt_.grid_step + 1e-12);
        k = std::min(k, grid_.size() - 1);
        CVector v = states_[k];
        hold_model_->propagate(v, base_.hold_start() + grid_[k], base_.hold_start() + t_hold, opt_.dt);
        return finish(v, t_hold);
    }

   private:
    SwapSample finish(CVector v, double t_hold) const {
        PulseSchedule s = base_;
        s.hold_time = t_hold;
        LindbladModel fall = build_model(p_, s, Frame::Rotating, false);
        fall.propagate(v, s.release_start(), s.release_time(), opt_.dt);
        size_t dm = p_.dims.mechanics;
        auto pop = [&](size_t q, size_t m) {
            size_t i = q * dm + m;
            return std::max(0.0, v[(Eigen::Index)(i + i * dim_)].real());
        };
        double tr = 0;
        for (size_t i = 0; i < dim_; i++) {
            tr += v[(Eigen::Index)(i + i * dim_)].real();
        }
        if (std::abs(tr - 1) > kMaxTraceDrift) {
            throw IntegrationError("trace drift " + std::to_string(tr - 1) + " during swap search");
        }
        return {t_hold, pop(1, 0), pop(1, 1), pop(0, 1), 0};
    }

    TransducerParams p_;
    PulseSchedule base_;
    double lo_;
    double hi_;
    SwapSearchOptions opt_;
    size_t dim_ = 0;
    std::vector<double> grid_;
    std::vector<CVector> states_;
    std::optional<LindbladModel> hold_model_;
};

template <typename F>
double golden_minimize(F f, double a, double b, double tol) {
    double c = b - kGoldenRatio * (b - a);
    double d = a + kGoldenRatio * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGoldenRatio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGoldenRatio * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2;
}

void validate_window(const TransducerParams &p, std::pair<double, double> window) {
    auto [lo, hi] = window;
    if (!(lo >= 0) || !(hi > lo)) {
        throw std::invalid_argument("swap search window must satisfy 0 <= t_lo < t_hi");
    }
    if (!(p.g_qm > 0)) {
        throw std::invalid_argument("swap search needs g_qm > 0");
    }
    if (hi - lo < M_PI / p.g_qm - 1e-9) {
        throw std::invalid_argument("swap search window must span at least two half-swap periods (pi / g_qm)");
    }
}

int half_swaps(const TransducerParams &p, double t_hold, double ramp) {
    return (int)std::lround(2 * p.g_qm * (t_hold + ramp) / M_PI);
}

}  // namespace

std::pair<double, double> default_swap_window(const TransducerParams &p, const SwapSearchOptions &opt) {
    if (!(p.g_qm > 0)) {
        throw std::invalid_argument("swap search needs g_qm > 0");
    }
    return {opt.grid_step, 2 * M_PI / p.g_qm};
}

SwapLandscape scan_swap(const TransducerParams &p, const PulseSchedule &s, std::pair<double, double> window,
                        const SwapSearchOptions &opt) {
    validate_window(p, window);
    if (!(opt.grid_step > 0) || opt.p10_fraction < 0 || opt.p10_fraction > 1) {
        throw std::invalid_argument("bad swap search options");
    }
    SwapScanner scanner(p, s, window.first, window.second, opt);

    SwapLandscape out;
    double peak = 0;
    for (size_t k = 0; k < scanner.grid().size(); k++) {
        out.samples.push_back(scanner.at_grid(k));
        peak = std::max(peak, out.samples.back().P10);
    }
    if (peak < 1e-12) {
        throw NoFeasibleSwap("no single-phonon transfer anywhere in the search window");
    }
    double threshold = opt.p10_fraction * peak;
    auto objective = [threshold](const SwapSample &x) {
        return x.P11 + kInfeasiblePenalty * std::max(0.0, threshold - x.P10);
    };
    size_t best = 0;
    for (size_t k = 0; k < out.samples.size(); k++) {
        out.samples[k].objective = objective(out.samples[k]);
        if (out.samples[k].objective < out.samples[best].objective) {
            best = k;
        }
    }
    if (out.samples[best].P10 < threshold) {
        throw NoFeasibleSwap("no hold time meets P10 >= " + std::to_string(opt.p10_fraction) + " * max P10");
    }

    SwapSample chosen = out.samples[best];
    double a = std::max(window.first, chosen.t_hold - opt.grid_step);
    double b = std::min(window.second, chosen.t_hold + opt.grid_step);
    double t_ref = golden_minimize([&](double t) { return objective(scanner.at(t)); }, a, b, opt.refine_tol);
    SwapSample refined = scanner.at(t_ref);
    refined.objective = objective(refined);
    if (refined.objective < chosen.objective) {
        chosen = refined;
    }

    out.plan.t_start = swap_origin(s);
    out.plan.t_hold = chosen.t_hold;
    out.plan.n_half_swaps = half_swaps(p, chosen.t_hold, s.ramp_time);
    out.plan.P11_residual = chosen.P11;
    out.plan.P10_peak = std::max(peak, chosen.P10);
    out.plan.P10_release = chosen.P10;
    return out;
}

SwapPlan optimize_swap(const TransducerParams &p, const PulseSchedule &s, std::pair<double, double> window,
                       const SwapSearchOptions &opt) {
    return scan_swap(p, s, window, opt).plan;
}

SwapPlan single_swap_plan(const TransducerParams &p, const PulseSchedule &s, const SwapSearchOptions &opt) {
    if (!(p.g_qm > 0)) {
        throw std::invalid_argument("swap search needs g_qm > 0");
    }
    double hi = M_PI / p.g_qm;
    SwapScanner scanner(p, s, 0, hi, opt);
    size_t best = 0;
    double best_p10 = -1;
    for (size_t k = 0; k < scanner.grid().size(); k++) {
        double p10 = scanner.at_grid(k).P10;
        if (p10 > best_p10) {
            best_p10 = p10;
            best = k;
        }
    }
    if (best_p10 < 1e-12) {
        throw NoFeasibleSwap("no single-phonon transfer within one swap period");
    }
    double t0 = scanner.grid()[best];
    double a = std::max(0.0, t0 - opt.grid_step);
    double b = std::min(hi, t0 + opt.grid_step);
    double t_ref = golden_minimize([&](double t) { return -scanner.at(t).P10; }, a, b, opt.refine_tol);
    SwapSample x = scanner.at(t_ref);
    if (x.P10 < best_p10) {
        x = scanner.at_grid(best);
    }
    SwapPlan plan;
    plan.t_start = swap_origin(s);
    plan.t_hold = x.t_hold;
    plan.n_half_swaps = half_swaps(p, x.t_hold, s.ramp_time);
    plan.P11_residual = x.P11;
    plan.P10_peak = x.P10;
    plan.P10_release = x.P10;
    return plan;
}

PulseSchedule schedule_for(const TransducerParams &p, const SwapPlan &plan, double tail) {
    PulseSchedule s = PulseSchedule::standard(p, plan.t_hold, tail);
    s.swap_start = plan.t_start;
    s.t_end = s.release_time() + tail;
    return s;
}

void write_swap_landscape_csv(const SwapLandscape &landscape, std::ostream &out) {
    out << "t_hold_ns,P10,P11,P01,objective\n";
    char buf[160];
    for (const auto &x : landscape.samples) {
        std::snprintf(buf, sizeof(buf), "%.4f,%.10e,%.10e,%.10e,%.10e\n", x.t_hold, x.P10, x.P11, x.P01, x.objective);
        out << buf;
    }
}

double RailState::norm() const {
    return coherent.squaredNorm() + incoherent.sum();
}

RailState ideal_rail(double p0, double p1, double theta, size_t levels) {
    if (levels < 2 || p0 < 0 || p1 < 0 || std::abs(p0 + p1 - 1) > 1e-12) {
        throw std::invalid_argument("ideal rail needs p0 + p1 = 1 and at least two levels");
    }
    RailState r;
    r.coherent = CVector::Zero((Eigen::Index)levels);
    r.coherent[0] = std::sqrt(p0);
    r.coherent[1] = std::sqrt(p1) * std::polar(1.0, theta);
    r.incoherent = Eigen::VectorXd::Zero((Eigen::Index)levels);
    r.photon_counts = {p0, p1};
    return r;
}

RailState simulate_rail(const TransducerParams &p, const PulseSchedule &s, double theta, double dt, size_t counter_dim) {
    check_eliminated_model(p, s, dt);
    LindbladModel model = build_counting_model(p, s, Frame::Rotating, counter_dim);
    Space space = counting_space(p, counter_dim);
    CVector v = vectorize(DensityMatrix::vacuum(space).matrix());
    double t_stop = s.swap ? s.release_time() : s.pump_end();
    model.propagate(v, 0, t_stop, dt);

    size_t dq = p.dims.transmon;
    size_t dm = p.dims.mechanics;
    size_t dim = space_dim(space);
    RailState r;
    r.coherent = CVector::Zero((Eigen::Index)dq);
    r.incoherent = Eigen::VectorXd::Zero((Eigen::Index)dq);
    r.photon_counts.assign(counter_dim, 0.0);
    double tr = 0;
    for (size_t q = 0; q < dq; q++) {
        for (size_t m = 0; m < dm; m++) {
            for (size_t o = 0; o < counter_dim; o++) {
                size_t i = (q * dm + m) * counter_dim + o;
                double pr = v[(Eigen::Index)(i + i * dim)].real();
                tr += pr;
                pr = std::max(pr, 0.0);
                r.photon_counts[o] += pr;
                if (m == 0 && o == q) {
                    r.coherent[(Eigen::Index)q] = std::sqrt(pr) * std::polar(1.0, theta * (double)q);
                } else {
                    r.incoherent[(Eigen::Index)q] += pr;
                }
            }
        }
    }
    if (std::abs(tr - 1) > kMaxTraceDrift) {
        throw IntegrationError("trace drift " + std::to_string(tr - 1) + " in rail simulation");
    }
    return r;
}

namespace {

CMatrix rail_matrix(const RailState &r) {
    auto d = (Eigen::Index)r.levels();
    if (r.incoherent.size() != d) {
        throw std::invalid_argument("rail coherent and incoherent parts disagree in size");
    }
    double n = r.norm();
    if (!(n > 0)) {
        throw std::invalid_argument("rail state has zero norm");
    }
    CMatrix m = CMatrix::Zero(2 * d, 2 * d);
    // index = level * 2 + flag
    for (Eigen::Index a = 0; a < d; a++) {
        for (Eigen::Index b = 0; b < d; b++) {
            m(2 * a, 2 * b) = r.coherent[a] * std::conj(r.coherent[b]) / n;
        }
        m(2 * a + 1, 2 * a + 1) = r.incoherent[a] / n;
    }
    return m;
}

}  // namespace

DensityMatrix rail_pair_state(const RailState &r1, const RailState &r2) {
    DensityMatrix a({{"q1", r1.levels()}, {"f1", 2}}, rail_matrix(r1), kIntegratorTolerance);
    DensityMatrix b({{"q2", r2.levels()}, {"f2", 2}}, rail_matrix(r2), kIntegratorTolerance);
    return tensor(a, b);
}

ParityErrorModel ParityErrorModel::symmetric(double eta_pc) {
    if (!(eta_pc >= 0 && eta_pc <= 1)) {
        throw std::invalid_argument("parity-check fidelity must lie in [0, 1]");
    }
    return {1 - eta_pc, 1 - eta_pc};
}

ParityCheckResult parity_check_channel(
    const DensityMatrix &rho, const ParityErrorModel &errors, const std::vector<std::string> &modes) {
    if (!(errors.false_odd >= 0 && errors.false_odd <= 1 && errors.false_even >= 0 && errors.false_even <= 1)) {
        throw std::invalid_argument("parity confusion probabilities must lie in [0, 1]");
    }
    const Space &space = rho.space();
    std::vector<size_t> counted;
    if (modes.empty()) {
        for (size_t k = 0; k < space.size(); k++) {
            counted.push_back(k);
        }
    } else {
        for (const auto &label : modes) {
            counted.push_back(mode_index(space, label));
        }
    }
    size_t dim = rho.dim();
    std::vector<bool> odd(dim);
    for (size_t i = 0; i < dim; i++) {
        auto occ = occupation_of(space, i);
        size_t total = 0;
        for (size_t k : counted) {
            total += occ[k];
        }
        odd[i] = total % 2 == 1;
    }
    CMatrix rho_odd = CMatrix::Zero((Eigen::Index)dim, (Eigen::Index)dim);
    CMatrix rho_even = rho_odd;
    double p_odd = 0;
    double p_even = 0;
    const CMatrix &m = rho.matrix();
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            if (odd[i] != odd[j]) {
                continue;
            }
            (odd[i] ? rho_odd : rho_even)((Eigen::Index)i, (Eigen::Index)j) = m((Eigen::Index)i, (Eigen::Index)j);
        }
        (odd[i] ? p_odd : p_even) += m((Eigen::Index)i, (Eigen::Index)i).real();
    }
    double total = p_odd + p_even;
    p_odd /= total;
    p_even /= total;
    rho_odd /= total;
    rho_even /= total;

    ParityCheckResult out;
    out.odd.p_true = p_odd;
    out.even.p_true = p_even;
    out.odd.p_reported = (1 - errors.false_even) * p_odd + errors.false_odd * p_even;
    out.even.p_reported = errors.false_even * p_odd + (1 - errors.false_odd) * p_even;
    if (out.odd.p_reported > 0) {
        CMatrix post = ((1 - errors.false_even) * rho_odd + errors.false_odd * rho_even) / out.odd.p_reported;
        out.odd.rho.emplace(space, std::move(post), kIntegratorTolerance);
    }
    if (out.even.p_reported > 0) {
        CMatrix post = (errors.false_even * rho_odd + (1 - errors.false_odd) * rho_even) / out.even.p_reported;
        out.even.rho.emplace(space, std::move(post), kIntegratorTolerance);
    }
    return out;
}

ParityCheckResult parity_check_channel(const DensityMatrix &rho, double eta_pc, const std::vector<std::string> &modes) {
    return parity_check_channel(rho, ParityErrorModel::symmetric(eta_pc), modes);
}

DensityMatrix hadamard_dual_rail(const DensityMatrix &rho2) {
    const Space &space = rho2.space();
    if (space.size() != 2 || space[0].dim < 2 || space[1].dim < 2) {
        throw std::invalid_argument("dual-rail Hadamard needs a two-mode state with at least two levels per rail");
    }
    size_t i01 = basis_index(space, std::vector<size_t>{0, 1});
    size_t i10 = basis_index(space, std::vector<size_t>{1, 0});
    auto dim = (Eigen::Index)rho2.dim();
    CMatrix u = CMatrix::Identity(dim, dim);
    double h = 1 / std::sqrt(2.0);
    u((Eigen::Index)i01, (Eigen::Index)i01) = h;
    u((Eigen::Index)i10, (Eigen::Index)i01) = h;
    u((Eigen::Index)i01, (Eigen::Index)i10) = h;
    u((Eigen::Index)i10, (Eigen::Index)i10) = -h;
    return DensityMatrix(space, u * rho2.matrix() * u.adjoint(), kIntegratorTolerance);
}

bool sample_herald(double p, uint64_t seed) {
    std::mt19937_64 rng(seed);
    double u = (double)(rng() >> 11) * 0x1.0p-53;
    return u < p;
}

BellOutcome herald_rails(const RailState &r1, const RailState &r2, const ParityErrorModel &errors, uint64_t seed) {
    DensityMatrix pair = rail_pair_state(r1, r2);
    ParityCheckResult check = parity_check_channel(pair, errors, {"q1", "q2"});

    BellOutcome out;
    out.p_herald = std::clamp(check.odd.p_reported, 0.0, 1.0);
    out.p_odd_true = check.odd.p_true;
    out.optical_pair_model = {r1.photon_counts, r2.photon_counts};
    out.herald = sample_herald(out.p_herald, seed);
    if (!check.odd.rho.has_value()) {
        return out;
    }
    const DensityMatrix &post = *check.odd.rho;
    out.rho_post = post;

    DensityMatrix qubits = partial_trace(post, {"q1", "q2"});
    size_t i00 = basis_index(qubits.space(), std::vector<size_t>{0, 0});
    size_t i01 = basis_index(qubits.space(), std::vector<size_t>{0, 1});
    size_t i10 = basis_index(qubits.space(), std::vector<size_t>{1, 0});
    size_t i11 = basis_index(qubits.space(), std::vector<size_t>{1, 1});
    const CMatrix &q = qubits.matrix();
    out.leakage_weight =
        std::max(0.0, 1 - q((Eigen::Index)i01, (Eigen::Index)i01).real() - q((Eigen::Index)i10, (Eigen::Index)i10).real());
    std::vector<size_t> block{i00, i01, i10, i11};
    CMatrix small(4, 4);
    for (size_t a = 0; a < 4; a++) {
        for (size_t b = 0; b < 4; b++) {
            small((Eigen::Index)a, (Eigen::Index)b) = q((Eigen::Index)block[a], (Eigen::Index)block[b]);
        }
    }
    double w = small.trace().real();
    if (w > 0) {
        out.rho_rails.emplace(Space{{"q1", 2}, {"q2", 2}}, small / w, kIntegratorTolerance);
    }
    return out;
}

BellOutcome run_bell_cycle(const TransducerParams &p, const SwapPlan &plan, double eta_pc, const BellOptions &opt) {
    PulseSchedule s = schedule_for(p, plan);
    RailState r1 = simulate_rail(p, s, 0, opt.dt, opt.counter_dim);
    RailState r2 = r1;
    for (Eigen::Index n = 0; n < r2.coherent.size(); n++) {
        r2.coherent[n] *= std::polar(1.0, opt.relative_phase * (double)n);
    }
    ParityErrorModel errors = opt.parity_errors.value_or(ParityErrorModel::symmetric(eta_pc));
    return herald_rails(r1, r2, errors, opt.seed);
}

BellScore bell_fidelity(const BellOutcome &out) {
    if (!out.herald || !out.rho_post.has_value()) {
        throw std::invalid_argument("Bell fidelity requested for an outcome that did not herald");
    }
    const DensityMatrix &rho = *out.rho_post;
    const Space &space = rho.space();
    CVector psi = CVector::Zero((Eigen::Index)rho.dim());
    double h = 1 / std::sqrt(2.0);
    psi[(Eigen::Index)basis_index(space, std::vector<size_t>{0, 0, 1, 0})] = h;
    psi[(Eigen::Index)basis_index(space, std::vector<size_t>{1, 0, 0, 0})] = h;
    DensityMatrix flags = partial_trace(rho, {"f1", "f2"});
    double match = flags.matrix()(0, 0).real();
    return {rho.overlap(psi), out.leakage_weight, match};
}

}  // namespace hybridbell
