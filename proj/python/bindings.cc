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

#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hybridbell/cli.h"
#include "hybridbell/dynamics.h"
#include "hybridbell/error_budget.h"
#include "hybridbell/graph_state.h"
#include "hybridbell/protocol.h"
#include "hybridbell/resource_count.h"
#include "hybridbell/squeezing.h"

namespace py = pybind11;
using namespace hybridbell;

namespace {

py::dict simulate(const TransducerParams &p, std::optional<double> hold_time, double tail, bool rotating, double dt,
                  double sample_dt) {
    PulseSchedule s = PulseSchedule::standard(p, hold_time, tail);
    EvolveOptions opt;
    opt.frame = rotating ? Frame::Rotating : Frame::Lab;
    opt.sample_dt = sample_dt;
    opt.keep_states = false;
    Trajectory tr;
    {
        py::gil_scoped_release release;
        tr = evolve(DensityMatrix::vacuum(transducer_space(p)), p, s, dt, opt);
    }
    py::dict out;
    out["t"] = tr.times;
    out["mean_phonon"] = tr.mean_phonon;
    out["populations"] = tr.populations;
    return out;
}

py::tuple run_scenario(const std::string &scenario, const std::string &config, const std::string &output_dir,
                       uint64_t seed) {
    std::istringstream in(config);
    RunConfig cfg{scenario, parse_config(in), output_dir, seed};
    std::ostringstream log, err;
    int code;
    {
        py::gil_scoped_release release;
        code = run(cfg, log, err);
    }
    return py::make_tuple(code, log.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Heralded microwave-optical Bell pairs: simulation and resource estimates";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<SqueezeResult>(m, "SqueezeResult")
        .def_readonly("gain_a", &SqueezeResult::gain_a)
        .def_readonly("gain_b", &SqueezeResult::gain_b)
        .def_readonly("r", &SqueezeResult::r)
        .def_readonly("p0", &SqueezeResult::p0)
        .def_readonly("lambda_", &SqueezeResult::lambda)
        .def_readonly("outside_weak_squeezing", &SqueezeResult::outside_weak_squeezing);
    m.def(
        "squeeze_gains",
        [](double gamma_om, double tau, double alpha) { return squeeze_gains({gamma_om, tau, alpha}); },
        py::arg("gamma_om"), py::arg("tau"), py::arg("alpha") = 1.0);
    m.def("scattering_rate", &scattering_rate, py::arg("g"), py::arg("kappa"));
    m.def("dispersive_shift", &dispersive_shift, py::arg("g_qm"), py::arg("e_c_over_hbar"), py::arg("delta"));
    m.def("pair_distribution", &pair_distribution, py::arg("p0"), py::arg("n_max"));
    m.def("herald_probability", &herald_probability, py::arg("p0"), py::arg("n_max") = 3);
    m.def(
        "multiphoton_noise",
        [](double p0, size_t n_max) {
            auto n = multiphoton_noise(p0, n_max);
            return py::make_tuple(n.exact, n.p1_squared);
        },
        py::arg("p0"), py::arg("n_max") = 3);

    py::class_<TransducerParams>(m, "TransducerParams")
        .def(py::init<>())
        .def_readwrite("omega_m", &TransducerParams::omega_m)
        .def_readwrite("gamma_0", &TransducerParams::gamma_0)
        .def_readwrite("gamma_b", &TransducerParams::gamma_b)
        .def_readwrite("gamma_s", &TransducerParams::gamma_s)
        .def_readwrite("delta_frac", &TransducerParams::delta_frac)
        .def_readwrite("n_b", &TransducerParams::n_b)
        .def_readwrite("G_peak", &TransducerParams::G_peak)
        .def_readwrite("tau_pulse", &TransducerParams::tau_pulse)
        .def_readwrite("kappa", &TransducerParams::kappa)
        .def_readwrite("omega_q_detuned", &TransducerParams::omega_q_detuned)
        .def_readwrite("T_ramp", &TransducerParams::T_ramp)
        .def_readwrite("E_C_over_h", &TransducerParams::E_C_over_h)
        .def_readwrite("g_qm", &TransducerParams::g_qm);
    m.def("simulate", &simulate, py::arg("params"), py::arg("hold_time") = py::none(), py::arg("tail") = 20.0,
          py::arg("rotating") = true, py::arg("dt") = 0.02, py::arg("sample_dt") = 0.5);
    m.def(
        "mean_phonon_ode",
        [](const TransducerParams &p, std::optional<double> hold_time, const std::vector<double> &times) {
            return mean_phonon(p, PulseSchedule::standard(p, hold_time, 20), times);
        },
        py::arg("params"), py::arg("hold_time"), py::arg("times"));

    py::class_<HardwareParams>(m, "HardwareParams")
        .def_static("nominal", &HardwareParams::nominal)
        .def_readwrite("kappa_e", &HardwareParams::kappa_e)
        .def_readwrite("kappa_i", &HardwareParams::kappa_i)
        .def_readwrite("extra_loss", &HardwareParams::extra_loss)
        .def_readwrite("tau", &HardwareParams::tau)
        .def_readwrite("t_swap", &HardwareParams::t_swap)
        .def_readwrite("t_cycle", &HardwareParams::t_cycle)
        .def_readwrite("gamma", &HardwareParams::gamma)
        .def_readwrite("n_b_gamma_b", &HardwareParams::n_b_gamma_b)
        .def_readwrite("Gamma_OM_tau", &HardwareParams::Gamma_OM_tau)
        .def_readwrite("eta_PC", &HardwareParams::eta_PC)
        .def_readwrite("eta_RO", &HardwareParams::eta_RO)
        .def_readwrite("T_phi_m", &HardwareParams::T_phi_m)
        .def_readwrite("T_phi_DR", &HardwareParams::T_phi_DR)
        .def_readwrite("T_1_DR", &HardwareParams::T_1_DR);
    py::class_<ErrorChannel>(m, "ErrorChannel")
        .def_readonly("source", &ErrorChannel::source)
        .def_readonly("effect", &ErrorChannel::effect)
        .def_readonly("scaling_expr", &ErrorChannel::scaling_expr)
        .def_property_readonly("error_type", [](const ErrorChannel &c) { return error_type_name(c.etype); })
        .def_readonly("rate", &ErrorChannel::rate);
    py::class_<ThresholdReport>(m, "ThresholdReport")
        .def_readonly("located_total", &ThresholdReport::located_total)
        .def_readonly("pauli_total", &ThresholdReport::pauli_total)
        .def_readonly("located_pass", &ThresholdReport::located_pass)
        .def_readonly("pauli_pass", &ThresholdReport::pauli_pass)
        .def_readonly("located_margin", &ThresholdReport::located_margin)
        .def_readonly("pauli_margin", &ThresholdReport::pauli_margin);
    m.def("compute_budget", &compute_budget, py::arg("hardware"));
    m.def("check_thresholds", &check_thresholds, py::arg("channels"), py::arg("located_threshold") = 0.10,
          py::arg("pauli_threshold") = 0.01);

    py::class_<CountingScenario>(m, "CountingScenario")
        .def(py::init<>())
        .def_readwrite("ghz_photons", &CountingScenario::ghz_photons)
        .def_readwrite("ghz_success", &CountingScenario::ghz_success)
        .def_readwrite("n_ghz_per_ring", &CountingScenario::n_ghz_per_ring)
        .def_readwrite("n_fusions", &CountingScenario::n_fusions)
        .def_readwrite("fusion_success", &CountingScenario::fusion_success)
        .def_readwrite("ring_size", &CountingScenario::ring_size)
        .def_readwrite("p_block", &CountingScenario::p_block)
        .def_readwrite("margin", &CountingScenario::margin);
    m.def("ghz_cost", &ghz_cost, py::arg("scenario"));
    m.def("ring_cost_linear_optics", &ring_cost_linear_optics, py::arg("scenario"));
    m.def("blocks_needed", &blocks_needed, py::arg("ring_size"), py::arg("p_block"), py::arg("margin") = 2.0);

    py::class_<Graph>(m, "Graph")
        .def(py::init<size_t, const std::vector<std::pair<size_t, size_t>> &>(), py::arg("n_vertices"),
             py::arg("edges") = std::vector<std::pair<size_t, size_t>>{})
        .def_static("named", &Graph::named)
        .def("size", &Graph::size)
        .def("edges", &Graph::edges)
        .def("adjacency", &Graph::adjacency)
        .def(py::self == py::self);
    py::class_<ExtractionResult>(m, "ExtractionResult")
        .def_readonly("graph", &ExtractionResult::graph)
        .def_readonly("outcomes", &ExtractionResult::outcomes)
        .def_property_readonly("corrections", [](const ExtractionResult &r) {
            std::vector<std::pair<size_t, char>> out;
            for (const auto &c : r.corrections) {
                out.emplace_back(c.qubit, c.pauli);
            }
            return out;
        });
    m.def(
        "extract_optical", [](const Graph &g, uint64_t seed) { return extract_optical(build_hybrid_graph(g), seed); },
        py::arg("graph"), py::arg("seed"));
    m.def("verify_cz_decomposition", &verify_cz_decomposition);

    m.def("scenario_names", &scenario_names);
    m.def("run", &run_scenario, py::arg("scenario"), py::arg("config") = "", py::arg("output_dir") = ".",
          py::arg("seed") = 0, "Runs a scenario; returns (exit_code, log, errors).");
}
