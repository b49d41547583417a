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
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "hybridbell/cli.h"
#include "hybridbell/errors.h"
#include "hybridbell/graph_state.h"
#include "hybridbell/protocol.h"
#include "hybridbell/squeezing.h"

namespace hybridbell {

const std::vector<std::string> &scenario_names() {
    static const std::vector<std::string> names{"simulate", "sweep-swap", "bell", "budget", "graph", "count", "validate"};
    return names;
}

namespace {

std::ofstream open_output(const std::filesystem::path &dir, const std::string &name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + (dir / name).string());
    }
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

SwapSearchOptions search_options(const Settings &s) {
    SwapSearchOptions o;
    o.grid_step = s.grid_step;
    o.dt = s.swap_dt;
    o.p10_fraction = s.p10_fraction;
    return o;
}

std::pair<double, double> search_window(const Settings &s) {
    auto w = default_swap_window(s.transducer, search_options(s));
    return {s.t_lo.value_or(w.first), s.t_hi.value_or(w.second)};
}

SwapPlan resolve_plan(const Settings &s, std::ostream &log) {
    PulseSchedule base = PulseSchedule::standard(s.transducer, 0.0, s.tail);
    if (s.t_hold.has_value()) {
        SwapPlan plan;
        plan.t_start = base.swap_start;
        plan.t_hold = *s.t_hold;
        return plan;
    }
    SwapPlan plan = optimize_swap(s.transducer, base, search_window(s), search_options(s));
    log << "optimized hold time " << fmt(plan.t_hold) << " ns (P11 " << fmt(plan.P11_residual) << ", P10 "
        << fmt(plan.P10_release) << " of peak " << fmt(plan.P10_peak) << ")\n";
    return plan;
}

Graph load_graph(const Settings &s) {
    if (!s.graph_file.empty()) {
        std::ifstream in(s.graph_file);
        if (!in) {
            throw ConfigError("cannot read graph file " + s.graph_file);
        }
        return read_edge_list(in);
    }
    try {
        return Graph::named(s.graph);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

int run_simulate(const Settings &s, const RunConfig &cfg, std::ostream &log) {
    SwapPlan plan = resolve_plan(s, log);
    PulseSchedule sched = schedule_for(s.transducer, plan, s.tail);
    EvolveOptions opt;
    opt.frame = s.frame;
    opt.sample_dt = s.sample_dt;
    opt.keep_states = false;
    double dt = s.dt.value_or(s.frame == Frame::Lab ? 0.002 : 0.02);
    bool optics = s.transducer.dims.optics > 0;
    Space space = transducer_space(s.transducer, optics);
    Trajectory traj = optics ? evolve_full_optics(DensityMatrix::vacuum(space), s.transducer, sched, dt, opt)
                             : evolve(DensityMatrix::vacuum(space), s.transducer, sched, dt, opt);
    auto out = open_output(cfg.output_dir, "trajectory.csv");
    write_trajectory_csv(traj, out);
    size_t last = traj.size() - 1;
    log << "simulated " << traj.size() << " samples to t = " << fmt(traj.times[last]) << " ns; final P10 "
        << fmt(traj.population(last, 1, 0)) << ", P11 " << fmt(traj.population(last, 1, 1)) << "\n";
    return kExitOk;
}

int run_sweep(const Settings &s, const RunConfig &cfg, std::ostream &log) {
    PulseSchedule base = PulseSchedule::standard(s.transducer, 0.0, s.tail);
    SwapLandscape land = scan_swap(s.transducer, base, search_window(s), search_options(s));
    auto out = open_output(cfg.output_dir, "swap_landscape.csv");
    write_swap_landscape_csv(land, out);
    log << "best hold time " << fmt(land.plan.t_hold) << " ns, P11 " << fmt(land.plan.P11_residual) << ", P10 "
        << fmt(land.plan.P10_release) << " (peak " << fmt(land.plan.P10_peak) << "), " << land.plan.n_half_swaps
        << " half swaps\n";
    return kExitOk;
}

int run_bell(const Settings &s, const RunConfig &cfg, std::ostream &log) {
    SwapPlan plan = resolve_plan(s, log);
    PulseSchedule sched = schedule_for(s.transducer, plan, s.tail);
    RailState r1 = simulate_rail(s.transducer, sched, 0, s.swap_dt);
    RailState r2 = r1;
    for (Eigen::Index n = 0; n < r2.coherent.size(); n++) {
        r2.coherent[n] *= std::polar(1.0, s.relative_phase * (double)n);
    }
    ParityErrorModel errors = ParityErrorModel::symmetric(s.hardware.eta_PC);
    if (s.false_odd) {
        errors.false_odd = *s.false_odd;
    }
    if (s.false_even) {
        errors.false_even = *s.false_even;
    }
    BellOutcome outcome = herald_rails(r1, r2, errors, cfg.seed);

    std::optional<BellScore> score;
    if (outcome.rho_post.has_value()) {
        BellOutcome forced = outcome;
        forced.herald = true;
        score = bell_fidelity(forced);
    }
    auto cycles = open_output(cfg.output_dir, "bell_cycles.csv");
    cycles << "cycle,seed,herald\n";
    size_t heralds = 0;
    for (size_t k = 0; k < s.n_cycles; k++) {
        uint64_t seed = split_seed(cfg.seed, k);
        bool h = sample_herald(outcome.p_herald, seed);
        heralds += h ? 1 : 0;
        cycles << k << ',' << seed << ',' << (h ? 1 : 0) << '\n';
    }
    auto summary = open_output(cfg.output_dir, "bell_summary.csv");
    double rate = s.n_cycles > 0 ? (double)heralds / (double)s.n_cycles : 0.0;
    summary << "quantity,value\n";
    summary << "t_hold_ns," << fmt(plan.t_hold) << '\n';
    summary << "p_herald," << fmt(outcome.p_herald) << '\n';
    summary << "p_odd_true," << fmt(outcome.p_odd_true) << '\n';
    summary << "n_cycles," << s.n_cycles << '\n';
    summary << "heralds," << heralds << '\n';
    summary << "herald_rate," << fmt(rate) << '\n';
    summary << "fidelity," << (score ? fmt(score->fidelity) : "nan") << '\n';
    summary << "leakage_weight," << fmt(outcome.leakage_weight) << '\n';
    summary << "optical_match," << (score ? fmt(score->optical_match) : "nan") << '\n';
    for (size_t rail = 0; rail < outcome.optical_pair_model.size(); rail++) {
        const auto &counts = outcome.optical_pair_model[rail];
        for (size_t n = 0; n < counts.size(); n++) {
            summary << "rail" << rail + 1 << "_P_photons_" << n << ',' << fmt(counts[n]) << '\n';
        }
    }
    log << "p_herald " << fmt(outcome.p_herald) << ", heralded " << heralds << " of " << s.n_cycles;
    if (score) {
        log << ", Bell fidelity " << fmt(score->fidelity) << ", leakage " << fmt(outcome.leakage_weight);
    }
    log << "\n";
    return kExitOk;
}

int run_budget(const Settings &s, const RunConfig &cfg, std::ostream &log) {
    auto channels = compute_budget(s.hardware);
    ThresholdReport report = check_thresholds(channels);
    auto budget = open_output(cfg.output_dir, "budget.csv");
    write_budget_csv(channels, budget);
    auto thresholds = open_output(cfg.output_dir, "thresholds.csv");
    write_thresholds_csv(report, thresholds);
    log << "erasure + leakage " << fmt(report.located_total) << " (" << (report.located_pass ? "below" : "above")
        << " " << fmt(report.located_threshold) << "), Pauli " << fmt(report.pauli_total) << " ("
        << (report.pauli_pass ? "below" : "above") << " " << fmt(report.pauli_threshold) << ")\n";
    if (s.trials > 0) {
        Graph g = load_graph(s);
        ResourceSampleStats stats = sample_resource_state(g, channels, s.trials, cfg.seed);
        auto hist = open_output(cfg.output_dir, "resource_sample.csv");
        hist << "intact_qubits,trials\n";
        for (size_t k = 0; k < stats.intact_histogram.size(); k++) {
            hist << k << ',' << stats.intact_histogram[k] << '\n';
        }
        auto rates = open_output(cfg.output_dir, "resource_channels.csv");
        rates << "source,effect,rate,observed_rate\n";
        for (size_t k = 0; k < channels.size(); k++) {
            rates << channels[k].source << ',' << channels[k].effect << ',' << fmt(channels[k].rate) << ','
                  << fmt(stats.channel_rates[k]) << '\n';
        }
        log << "fully intact " << fmt(stats.fully_intact_fraction) << " over " << s.trials << " trials of "
            << g.size() << " qubits\n";
    }
    return kExitOk;
}

int run_graph(const Settings &s, const RunConfig &cfg, std::ostream &log) {
    Graph g = load_graph(s);
    StabilizerTableau t = build_hybrid_graph(g);
    ExtractionResult ext = extract_optical(t, cfg.seed);
    auto in_edges = open_output(cfg.output_dir, "graph_edges.txt");
    write_edge_list(g, in_edges);
    auto out_edges = open_output(cfg.output_dir, "optical_edges.txt");
    write_edge_list(ext.graph, out_edges);
    auto corr = open_output(cfg.output_dir, "corrections.csv");
    write_corrections_csv(ext.corrections, corr);
    bool same = ext.graph == g;
    log << "optical graph " << (same ? "matches" : "DIFFERS FROM") << " the input (" << g.size() << " vertices, "
        << g.edges().size() << " edges, " << ext.corrections.size() << " Z corrections)\n";
    return same ? kExitOk : kExitValidation;
}

int run_count(const Settings &s, const RunConfig &cfg, std::ostream &log) {
    auto rows = scaling_curves(s.sizes, s.counting);
    auto out = open_output(cfg.output_dir, "resource_count.csv");
    write_scaling_csv(rows, out);
    log << "GHZ cost " << fmt(ghz_cost(s.counting)) << " photons, ring cost " << fmt(ring_cost_linear_optics(s.counting))
        << " photons, blocks " << blocks_needed(s.counting.ring_size, s.counting.p_block, s.counting.margin) << "\n";
    return kExitOk;
}

int run_validate(const Settings &s, const RunConfig &cfg, std::ostream &log) {
    auto checks = run_validation(s, cfg.seed);
    auto out = open_output(cfg.output_dir, "validate.csv");
    out << "check,value,reference,tolerance,pass\n";
    bool ok = true;
    for (const auto &c : checks) {
        out << c.name << ',' << fmt(c.value) << ',' << fmt(c.reference) << ',' << fmt(c.tolerance) << ','
            << (c.pass ? 1 : 0) << '\n';
        log << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << fmt(c.value) << " vs " << fmt(c.reference) << "\n";
        ok = ok && c.pass;
    }
    return ok ? kExitOk : kExitValidation;
}

}  // namespace

int run(const RunConfig &config, std::ostream &log, std::ostream &err) {
    try {
        const auto &names = scenario_names();
        if (std::find(names.begin(), names.end(), config.scenario) == names.end()) {
            throw ConfigError("unknown scenario '" + config.scenario + "'");
        }
        Settings s = resolve_settings(config.entries);
        std::error_code ec;
        std::filesystem::create_directories(config.output_dir, ec);
        if (ec) {
            throw ConfigError("cannot create output directory " + config.output_dir.string());
        }
        if (config.scenario == "simulate") {
            return run_simulate(s, config, log);
        }
        if (config.scenario == "sweep-swap") {
            return run_sweep(s, config, log);
        }
        if (config.scenario == "bell") {
            return run_bell(s, config, log);
        }
        if (config.scenario == "budget") {
            return run_budget(s, config, log);
        }
        if (config.scenario == "graph") {
            return run_graph(s, config, log);
        }
        if (config.scenario == "count") {
            return run_count(s, config, log);
        }
        return run_validate(s, config, log);
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PhysicsInfeasible &e) {
        err << "refused: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const NoFeasibleSwap &e) {
        err << "refused: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const IntegrationError &e) {
        err << "integration failed: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const std::invalid_argument &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error &e) {
        err << "refused: " << e.what() << "\n";
        return kExitPhysics;
    }
}

namespace {

ValidationCheck relative_check(std::string name, double value, double reference, double tol) {
    double rel = std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
    return {std::move(name), value, reference, tol, rel <= tol};
}

Graph random_connected_graph(std::mt19937_64 &rng, size_t lo, size_t hi) {
    size_t n = lo + rng() % (hi - lo + 1);
    Graph g(n);
    for (size_t v = 1; v < n; v++) {
        g.add_edge(v, rng() % v);
    }
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            if (rng() % 4 == 0) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

}  // namespace

std::vector<ValidationCheck> run_validation(const Settings &settings, uint64_t seed) {
    std::vector<ValidationCheck> out;
    const TransducerParams &base = settings.transducer;

    {
        // Constant pump, no baths, qubit parked far away: <n> = exp(Gamma t) - 1.
        TransducerParams p = base;
        p.gamma_0 = p.gamma_b = p.n_b = 0;
        double gom = scattering_rate(p.G_peak, p.kappa);
        double duration = 0.05 / gom;
        PulseSchedule s = PulseSchedule::constant_pump(p.G_peak, duration, p.omega_q_detuned);
        EvolveOptions opt{Frame::Rotating, 0, std::nullopt, duration, false};
        Trajectory tr = evolve(DensityMatrix::vacuum(transducer_space(p)), p, s, 0.02, opt);
        out.push_back(relative_check("linear_gain", tr.mean_phonon.back(), std::expm1(gom * duration), 0.03));
    }
    {
        PulseSchedule s = PulseSchedule::standard(base, std::nullopt, 0);
        EvolveOptions opt{Frame::Rotating, 0, std::nullopt, 0.5, false};
        Trajectory tr = evolve(DensityMatrix::vacuum(transducer_space(base)), base, s, 0.02, opt);
        double worst = 0;
        for (size_t k = 0; k < tr.size(); k++) {
            double p01 = tr.population(k, 0, 1);
            if (p01 > 0.01) {
                worst = std::max(worst, std::abs(tr.population(k, 0, 2) / (p01 * p01) - 1));
            }
        }
        out.push_back({"pair_statistics_P02_over_P01sq", worst, 0, 0.25, worst <= 0.25});
    }
    {
        TransducerParams p = base;
        p.g_qm = 0;
        PulseSchedule s = PulseSchedule::standard(p, std::nullopt, 20);
        EvolveOptions opt{Frame::Rotating, 0, std::nullopt, 1.0, false};
        Trajectory tr = evolve(DensityMatrix::vacuum(transducer_space(p)), p, s, 0.02, opt);
        auto ode = mean_phonon(p, s, tr.times);
        double worst = 0;
        for (size_t k = 0; k < tr.size(); k++) {
            if (ode[k] > 1e-6) {
                worst = std::max(worst, std::abs(tr.mean_phonon[k] - ode[k]) / ode[k]);
            }
        }
        out.push_back({"mean_phonon_ode_vs_lindblad", worst, 0, 0.05, worst <= 0.05});
    }
    {
        SqueezeParams sp{0.01, 5, 1};
        double limit = squeeze_gains(sp).gain_b;
        double worst = 0;
        for (double a : {1 - 1e-4, 1 + 1e-4}) {
            sp.alpha = a;
            worst = std::max(worst, std::abs(squeeze_gains(sp).gain_b - limit) / limit);
        }
        out.push_back({"squeeze_limit_branch", worst, 0, 1e-3, worst <= 1e-3});
    }
    {
        double worst = 0;
        for (double p0 : {0.5, 0.8, 0.868, 0.9, 0.95, 0.99}) {
            double brute_odd = 0;
            double brute_noisy = 0;
            for (int n = 0; n <= 3; n++) {
                for (int m = 0; m <= 3; m++) {
                    if (n + m > 3 || (n + m) % 2 == 0) {
                        continue;
                    }
                    double w = p0 * std::pow(1 - p0, n) * p0 * std::pow(1 - p0, m);
                    brute_odd += w;
                    if (n + m >= 3) {
                        brute_noisy += w;
                    }
                }
            }
            worst = std::max(worst, std::abs(herald_probability(p0) - brute_odd));
            worst = std::max(worst, std::abs(multiphoton_noise(p0).exact - brute_noisy / brute_odd));
        }
        out.push_back({"herald_enumeration", worst, 0, 1e-12, worst <= 1e-12});
        double noise = multiphoton_noise(0.9).exact;
        out.push_back({"multiphoton_noise_p0_0.9", noise, 0.01, 0, noise >= 0.005 && noise <= 0.03});
    }
    {
        CzVerification cz = verify_cz_circuit();
        bool pass = cz.raw_deviation < 1e-10 || cz.dressing.deviation < 1e-10;
        out.push_back({"cz_decomposition", cz.raw_deviation, 0, 1e-10, pass});
    }
    {
        std::mt19937_64 rng(split_seed(seed, 0));
        size_t matches = 0;
        constexpr size_t kGraphs = 200;
        for (size_t k = 0; k < kGraphs; k++) {
            Graph g = random_connected_graph(rng, 3, 8);
            matches += extract_optical(build_hybrid_graph(g), rng()).graph == g ? 1 : 0;
        }
        double frac = (double)matches / kGraphs;
        out.push_back({"graph_extraction", frac, 1, 0, matches == kGraphs});
    }
    {
        auto channels = compute_budget(HardwareParams::nominal());
        const double table[] = {0.10, 0.10, 0.01, 0.01, 0.01, 0.01, 0.01, 0.001, 0.001, 0.0001};
        double worst = 1;
        for (size_t k = 0; k < channels.size(); k++) {
            double ratio = channels[k].rate / table[k];
            worst = std::max({worst, ratio, 1 / ratio});
        }
        out.push_back({"budget_factor_of_table", worst, 1, 3, worst <= 3});
        double ex = channels[0].rate;
        out.push_back({"photon_extraction", ex, 0.09, 0, ex >= 0.08 && ex <= 0.10});
    }
    {
        CountingScenario c;
        out.push_back({"ghz_cost", ghz_cost(c), 192, 0, ghz_cost(c) == 192});
        out.push_back({"ring_cost", ring_cost_linear_optics(c), 4608, 0, ring_cost_linear_optics(c) == 4608});
        out.push_back({"blocks_needed", (double)blocks_needed(6, 0.2), 60, 0, blocks_needed(6, 0.2) == 60});
    }
    return out;
}

}  // namespace hybridbell
