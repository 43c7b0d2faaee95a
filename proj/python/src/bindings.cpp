// Copyright 2026 The kerrcat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kerrcat/config.hpp"
#include "kerrcat/control.hpp"
#include "kerrcat/dynamics.hpp"
#include "kerrcat/errors.hpp"
#include "kerrcat/experiments.hpp"
#include "kerrcat/filter.hpp"
#include "kerrcat/fock.hpp"
#include "kerrcat/measurement.hpp"
#include "kerrcat/model.hpp"

namespace py = pybind11;
using namespace kerrcat;

namespace {

DensityMatrix as_density(const CMatrix& m) { return DensityMatrix(m); }

Ket as_ket(const CVector& v) { return Ket(v); }

std::vector<JumpTerm> as_jumps(const std::vector<std::pair<CMatrix, double>>& jumps) {
    std::vector<JumpTerm> out;
    for (const auto& [op, rate] : jumps) out.push_back({Operator(op), rate, ""});
    return out;
}

py::dict frame_dict(const CatFrame& f) {
    py::dict d;
    d["c_plus"] = f.c_plus.amplitudes();
    d["c_minus"] = f.c_minus.amplitudes();
    d["plus_z"] = f.plus_z.amplitudes();
    d["minus_z"] = f.minus_z.amplitudes();
    d["x"] = f.x.matrix();
    d["y"] = f.y.matrix();
    d["z"] = f.z.matrix();
    d["alpha"] = f.alpha;
    return d;
}

py::dict lifetime_dict(const LifetimeResult& r) {
    py::dict d;
    d["tau"] = r.tau;
    d["tau_stderr"] = r.tau_stderr;
    d["offset"] = r.fit.offset;
    d["times"] = r.times;
    d["signal"] = r.signal;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kerr-cat qubit simulation core";

    auto base = py::register_exception<Error>(m, "KerrcatError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    // Fock space.
    m.def("annihilation", [](int dim) { return annihilation(Truncation(dim)).matrix(); }, py::arg("dim"));
    m.def("number_operator", [](int dim) { return number_operator(Truncation(dim)).matrix(); }, py::arg("dim"));
    m.def("parity_operator", [](int dim) { return parity_operator(Truncation(dim)).matrix(); }, py::arg("dim"));
    m.def("displacement", [](cplx a, int dim) { return displacement(a, Truncation(dim)).matrix(); },
          py::arg("alpha"), py::arg("dim"));
    m.def("fock_state", [](int n, int dim) { return fock_state(n, Truncation(dim)).amplitudes(); },
          py::arg("n"), py::arg("dim"));
    m.def("coherent_state", [](cplx a, int dim) { return coherent_state(a, Truncation(dim)).amplitudes(); },
          py::arg("alpha"), py::arg("dim"));
    m.def("cat_state",
          [](cplx a, bool even, int dim) {
              return cat_state(a, even ? Parity::even : Parity::odd, Truncation(dim)).amplitudes();
          },
          py::arg("alpha"), py::arg("even") = true, py::arg("dim"));
    m.def("wigner_ket", [](const CVector& psi, const std::vector<cplx>& grid) { return wigner(as_ket(psi), grid); },
          py::arg("psi"), py::arg("grid"));
    m.def("wigner_density",
          [](const CMatrix& rho, const std::vector<cplx>& grid) { return wigner(as_density(rho), grid); },
          py::arg("rho"), py::arg("grid"));

    // Model.
    py::class_<KerrCatParams>(m, "KerrCatParams")
        .def(py::init<>())
        .def(py::init([](double K, cplx eps2, double detuning) {
                 KerrCatParams p;
                 p.K = K;
                 p.eps2 = eps2;
                 p.detuning = detuning;
                 return p;
             }),
             py::arg("K"), py::arg("eps2"), py::arg("detuning") = 0.0)
        .def_readwrite("K", &KerrCatParams::K)
        .def_readwrite("eps2", &KerrCatParams::eps2)
        .def_readwrite("detuning", &KerrCatParams::detuning)
        .def_property_readonly("cat_size", &KerrCatParams::cat_size)
        .def_property_readonly("alpha", &KerrCatParams::alpha)
        .def("__repr__", [](const KerrCatParams& p) {
            return "KerrCatParams(K=" + std::to_string(p.K) + ", cat_size=" + std::to_string(p.cat_size()) +
                   ", detuning=" + std::to_string(p.detuning) + ")";
        });
    m.def("device_kerr_cat", &device_kerr_cat, py::arg("cat_size"));
    m.def("kerr_cat_truncation", [](const KerrCatParams& p) { return kerr_cat_truncation(p).dim(); });
    m.def("kerr_cat_hamiltonian",
          [](const KerrCatParams& p, int dim) {
              return kerr_cat_hamiltonian(p, dim > 0 ? Truncation(dim) : kerr_cat_truncation(p)).matrix();
          },
          py::arg("params"), py::arg("dim") = 0);
    m.def("cat_energy_gap", [](const CMatrix& h) { return cat_energy_gap(Operator(h, true)); }, py::arg("h"));
    m.def("cat_frame",
          [](const KerrCatParams& p, int dim) {
              return frame_dict(cat_frame(p, dim > 0 ? Truncation(dim) : kerr_cat_truncation(p)));
          },
          py::arg("params"), py::arg("dim") = 0);

    // Dynamics.
    m.def("bose_einstein", &bose_einstein, py::arg("omega"), py::arg("T_mK"));
    m.def("tc_tradeoff", &tc_tradeoff, py::arg("T1"), py::arg("alpha"));
    py::class_<BathSpec>(m, "BathSpec")
        .def(py::init<>())
        .def_static("fitted", &BathSpec::fitted)
        .def_static("second_plateau", &BathSpec::second_plateau)
        .def_static("pure_loss", &BathSpec::pure_loss, py::arg("t1_us"))
        .def("scaled", &BathSpec::scaled, py::arg("s"))
        .def_readwrite("kappa_half", &BathSpec::kappa_half)
        .def_readwrite("T_half", &BathSpec::T_half)
        .def_readwrite("kappa_full", &BathSpec::kappa_full)
        .def_readwrite("T_full", &BathSpec::T_full)
        .def_readwrite("kappa_phi", &BathSpec::kappa_phi)
        .def_readwrite("omega_d", &BathSpec::omega_d);
    m.def("evolve",
          [](const CMatrix& rho0, const CMatrix& h, const std::vector<std::pair<CMatrix, double>>& jumps,
             const std::vector<double>& times, const std::vector<CMatrix>& observables, double rtol, double atol) {
              std::vector<NamedOperator> obs;
              for (std::size_t k = 0; k < observables.size(); ++k)
                  obs.push_back({std::to_string(k), Operator(observables[k])});
              EvolveOptions opts;
              opts.rtol = rtol;
              opts.atol = atol;
              const auto res = evolve(as_density(rho0), TimeDependentHamiltonian(Operator(h, true)), as_jumps(jumps), times, obs, opts);
              std::vector<std::vector<double>> series;
              for (const auto& [name, values] : res.observables) series.push_back(values);
              return py::make_tuple(res.final_state.matrix(), series);
          },
          py::arg("rho0"), py::arg("h"), py::arg("jumps"), py::arg("times"), py::arg("observables"),
          py::arg("rtol") = 1e-8, py::arg("atol") = 1e-10);
    m.def("liouvillian",
          [](const CMatrix& h, const std::vector<std::pair<CMatrix, double>>& jumps) {
              return liouvillian(h, as_jumps(jumps));
          },
          py::arg("h"), py::arg("jumps"));
    m.def("lifetime_T_C",
          [](const KerrCatParams& p, const BathSpec& bath, double t_max) {
              LifetimeOptions o;
              o.t_max = t_max;
              return lifetime_dict(lifetime_T_C(p, bath, device_snail_params(), o));
          },
          py::arg("params"), py::arg("bath"), py::arg("t_max"));
    m.def("lifetime_T_alpha",
          [](const KerrCatParams& p, const BathSpec& bath, double t_max, int trials, std::uint64_t seed) {
              LifetimeOptions o;
              o.t_max = t_max;
              return lifetime_dict(
                  lifetime_T_alpha(p, bath, device_snail_params(), DetuningNoise::fitted(p.K, trials, seed), o));
          },
          py::arg("params"), py::arg("bath"), py::arg("t_max"), py::arg("trials") = 1, py::arg("seed") = 0);

    // Control.
    m.def("phase_modulation_pulse",
          [](double tg, double delta0, double t) { return phase_modulation_pulse({tg, delta0, 0.0}, t); },
          py::arg("Tg"), py::arg("delta0"), py::arg("t"));
    m.def("effective_detuning",
          [](double tg, double delta0, double t) { return effective_detuning({tg, delta0, 0.0}, t); },
          py::arg("Tg"), py::arg("delta0"), py::arg("t"));
    m.def("x_gate_transfer",
          [](const KerrCatParams& p, double tg, double delta0, int dim) {
              return x_gate_transfer({tg, delta0, 0.0}, p, dim > 0 ? Truncation(dim) : kerr_cat_truncation(p));
          },
          py::arg("params"), py::arg("Tg"), py::arg("delta0"), py::arg("dim") = 0);
    m.def("cat_size_from_rabi", &cat_size_from_rabi, py::arg("omega_c"), py::arg("omega_z"));
    m.def("kerr_free_flight_duration", &kerr_free_flight_duration, py::arg("K"));

    // Measurement.
    py::class_<ReadoutParams>(m, "ReadoutParams")
        .def(py::init<>())
        .def_static("device", &ReadoutParams::device)
        .def_readwrite("eps_cqr", &ReadoutParams::eps_cqr)
        .def_readwrite("kappa_r", &ReadoutParams::kappa_r)
        .def_readwrite("duration", &ReadoutParams::duration)
        .def_readwrite("efficiency", &ReadoutParams::efficiency)
        .def_readwrite("noise_sigma", &ReadoutParams::noise_sigma);
    m.def("cqr_steady_amplitude", &cqr_steady_amplitude, py::arg("readout"), py::arg("alpha"));
    m.def("misassignment_probability", &misassignment_probability, py::arg("readout"), py::arg("alpha"));
    m.def("qndness", &qndness, py::arg("readout"), py::arg("alpha"), py::arg("flip_rate"), py::arg("pairs"),
          py::arg("seed"));
    m.def("ptm_from_unitary", [](const QubitMatrix& u) { return Eigen::Matrix4d(ptm_from_unitary(u).matrix); },
          py::arg("u"));
    m.def("gate_fidelity",
          [](const Eigen::Matrix4d& r_exp, const Eigen::Matrix4d& r_ideal) {
              return gate_fidelity(PTM{r_exp}, PTM{r_ideal});
          },
          py::arg("r_exp"), py::arg("r_ideal"));
    m.def("process_tomography",
          [](const QubitMatrix& gate, double duration, double T_alpha, double T_C, double p_alpha, double meas_error) {
              const auto res = simulate_process_tomography(gate, {duration, T_alpha, T_C}, {p_alpha, meas_error});
              return py::make_tuple(Eigen::Matrix4d(res.estimate.matrix), res.fidelity);
          },
          py::arg("gate"), py::arg("duration") = 0.0, py::arg("T_alpha") = 0.0, py::arg("T_C") = 0.0,
          py::arg("p_alpha") = 1.0, py::arg("meas_error") = 0.0);

    // Filter.
    m.def("notch_filter_sweep",
          [](double f_notch, int n_stubs, double f_lo, double f_hi, int points) {
              filter::NotchDesign d;
              d.f_notch = f_notch;
              d.n_stubs = n_stubs;
              const auto net = filter::design_notch_filter(d);
              std::vector<double> f, s21, s11;
              for (const auto& p : filter::sweep(net, f_lo, f_hi, points)) {
                  f.push_back(p.f_ghz);
                  s21.push_back(p.s21_db);
                  s11.push_back(p.s11_db);
              }
              return py::make_tuple(f, s21, s11);
          },
          py::arg("f_notch") = 5.9, py::arg("n_stubs") = 3, py::arg("f_lo") = 0.5, py::arg("f_hi") = 13.0,
          py::arg("points") = 1251);

    // Experiment runner (JSON strings in and out).
    m.def("list_experiments", [] {
        std::vector<std::string> names;
        for (const auto& e : cli::experiment_catalog()) names.push_back(e.name);
        return names;
    });
    m.def("validate_config", [](const std::string& text) {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& d : cli::validate(nlohmann::json::parse(text)))
            out.emplace_back(cli::to_string(d.severity), d.path, d.message);
        return out;
    });
    m.def("run_config", [](const std::string& text) {
        const auto cfg = cli::parse_config(nlohmann::json::parse(text));
        py::gil_scoped_release release;
        return cli::run(cfg).to_json().dump();
    });
    m.attr("__version__") = std::string(cli::tool_version());
}
