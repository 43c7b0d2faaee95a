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


#include "kerrcat/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kerrcat/errors.hpp"
#include "kerrcat/model.hpp"
#include "kerrcat/units.hpp"

namespace kerrcat::cli {

namespace {

using nlohmann::json;

std::vector<ParamSpec> device_params() {
    return {
        {"kerr_MHz", 1.2, "Kerr nonlinearity K/2pi", 0.0, false},
        {"cat_size", 4.0, "alpha^2 = eps2/K", 0.0},
        {"detuning_MHz", 0.0, "detuning Delta/2pi"},
        {"truncation", 0, "Fock cutoff, 0 picks one from the cat size", 0.0},
    };
}

std::vector<ParamSpec> with_device(std::vector<ParamSpec> extra) {
    auto out = device_params();
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

json range(double lo, double hi, double step) {
    json a = json::array();
    for (double v = lo; v <= hi + 1e-9; v += step) a.push_back(v);
    return a;
}

std::vector<ExperimentInfo> build_catalog() {
    const std::string bath_help = "bath model: fitted, second_plateau or pure_loss";
    return {
        {"spectrum",
         "Kerr-cat levels per parity block versus cat size",
         {"spectrum.csv"},
         with_device({{"cat_sizes", range(0.0, 8.0, 0.5), "alpha^2 values", 0.0},
                      {"levels", 6, "levels per parity block", 1.0}}),
         false},
        {"chevron",
         "X(pi/2) transfer probability over gate time and modulation depth",
         {"chevron.csv"},
         with_device({{"tg_min_ns", 100.0, "shortest gate", 0.0, false},
                      {"tg_max_ns", 600.0, "longest gate", 0.0, false},
                      {"tg_points", 21, "gate-time samples", 2.0},
                      {"delta0_min_over_K", -12.0, "deepest modulation"},
                      {"delta0_max_over_K", -2.0, "shallowest modulation"},
                      {"delta0_points", 25, "modulation samples", 2.0}}),
         false},
        {"rabi-phase",
         "Zeno Z rotation: Rabi rate and contrast versus drive phase",
         {"rabi_phase.csv", "rabi_trace.csv"},
         with_device({{"omega_z_MHz", 0.384, "single-photon drive amplitude Omega_z/2pi", 0.0, false},
                      {"theta_points", 13, "drive phases in [0, pi]", 2.0},
                      {"periods", 2.0, "simulated Rabi periods", 0.0, false}}),
         false},
        {"lifetime-cat",
         "Phase-flip time T_C versus cat size",
         {"lifetime_cat.csv"},
         with_device({{"cat_sizes", json::array({1.0, 2.0, 3.0, 4.0, 6.0, 8.0}), "alpha^2 values", 0.0, false},
                      {"bath", "fitted", bath_help},
                      {"t1_us", 38.5, "single-photon T1 for pure_loss and the trade-off", 0.0, false},
                      {"t_max_us", 0.0, "observation window, 0 picks one", 0.0}}),
         true},
        {"lifetime-coherent",
         "Bit-flip time T_alpha versus cat size",
         {"lifetime_coherent.csv"},
         with_device({{"cat_sizes", range(1.0, 8.0, 1.0), "alpha^2 values", 0.0, false},
                      {"bath", "fitted", bath_help},
                      {"t1_us", 38.5, "single-photon T1 for pure_loss", 0.0, false},
                      {"trials", 2, "detuning-noise trials", 1.0},
                      {"t_max_us", 0.0, "observation window, 0 picks one", 0.0}}),
         true},
        {"lifetime-detuned",
         "Bit-flip time T_alpha versus detuning",
         {"lifetime_detuned.csv"},
         with_device({{"detuning_min_over_K", 0.0, "first detuning offset"},
                      {"detuning_max_over_K", 5.0, "last detuning offset"},
                      {"detuning_points", 21, "detuning samples", 2.0},
                      {"bath", "fitted", bath_help},
                      {"t1_us", 38.5, "single-photon T1 for pure_loss", 0.0, false},
                      {"trials", 2, "detuning-noise trials", 1.0},
                      {"t_max_us", 0.0, "observation window, 0 picks one", 0.0}}),
         true},
        {"readout-qnd",
         "Cat quadrature readout: QNDness and IQ shots",
         {"qnd.csv", "shots.csv"},
         {{"cat_sizes", json::array({4.0, 8.0}), "alpha^2 values", 0.0, false},
          {"t_alpha_us", json::array({600.0, 950.0}), "bit-flip time per cat size", 0.0, false},
          {"pairs", 100000, "readout pairs per cat size", 2.0},
          {"eps_cqr_MHz", 0.05, "readout drive eps_CQR/2pi", 0.0},
          {"kappa_r_MHz", 0.4, "readout linewidth kappa_R/2pi", 0.0, false},
          {"duration_us", 4.0, "integration time", 0.0, false},
          {"efficiency", 0.6, "measurement efficiency", 0.0, false},
          {"noise_sigma", 0.5, "added IQ noise", 0.0},
          {"export_shots", 2000, "shots written per prepared state", 1.0}},
         false},
        {"tomography",
         "Process tomography of I, X(pi/2), Z(pi/2) with SPAM",
         {"ptm_identity.json", "ptm_x90.json", "ptm_z90.json", "fidelities.csv"},
         {{"p_alpha", 0.93, "initialization success probability", 0.5},
          {"meas_error", -1.0, "readout assignment error, negative uses the default readout"},
          {"t_alpha_us", 600.0, "bit-flip time", 0.0},
          {"t_c_us", 5.0, "phase-flip time", 0.0},
          {"x_gate_ns", 320.0, "X(pi/2) duration", 0.0},
          {"z_gate_ns", 120.0, "Z(pi/2) duration", 0.0},
          {"identity_ns", 0.0, "identity duration", 0.0}},
         false},
        {"filter-sweep",
         "Stub notch filter S-parameters",
         {"filter_sweep.csv", "filter_design.json"},
         {{"f_notch_GHz", 5.9, "notch frequency", 0.0, false},
          {"n_stubs", 3, "quarter-wave stubs", 1.0},
          {"spacing_rad", std::numbers::pi / 2, "line length between stubs at the notch", 0.0},
          {"z_stub_ohm", 50.0, "stub impedance", 0.0, false},
          {"z_line_ohm", 90.0, "connecting line impedance", 0.0, false},
          {"z0_ohm", 50.0, "port impedance", 0.0, false},
          {"f_min_GHz", 0.5, "sweep start", 0.0, false},
          {"f_max_GHz", 13.0, "sweep stop", 0.0, false},
          {"points", 1251, "sweep points", 2.0}},
         false},
        {"wigner",
         "Wigner function of a cat-frame state",
         {"wigner.csv"},
         with_device({{"state", "cat_plus", "cat_plus, cat_minus, plus_z, minus_z or vacuum"},
                      {"extent", 4.0, "grid half-width in Re/Im beta", 0.0, false},
                      {"grid_points", 81, "samples per axis", 2.0}}),
         false},
    };
}

bool same_kind(const json& def, const json& v) {
    if (def.is_number_integer()) return v.is_number_integer();
    if (def.is_number()) return v.is_number();
    if (def.is_string()) return v.is_string();
    if (def.is_boolean()) return v.is_boolean();
    if (def.is_array()) {
        if (!v.is_array() || v.empty()) return false;
        for (const auto& e : v)
            if (!e.is_number()) return false;
        return true;
    }
    return false;
}

const char* kind_name(const json& def) {
    if (def.is_number_integer()) return "an integer";
    if (def.is_number()) return "a number";
    if (def.is_string()) return "a string";
    if (def.is_boolean()) return "a boolean";
    return "a non-empty list of numbers";
}

void check_bound(const ParamSpec& spec, const json& v, const std::string& path,
                 std::vector<Diagnostic>& out) {
    auto ok = [&](double x) {
        if (!std::isfinite(x)) return false;
        return spec.min_inclusive ? x >= spec.min : x > spec.min;
    };
    auto report = [&] {
        std::ostringstream os;
        os << "must be " << (spec.min_inclusive ? ">= " : "> ") << spec.min;
        out.push_back({Severity::error, path, os.str()});
    };
    if (v.is_array()) {
        for (const auto& e : v)
            if (!ok(e.get<double>())) return report();
    } else if (v.is_number() && !ok(v.get<double>())) {
        report();
    }
}

double param(const json& p, const char* key) { return p.at(key).get<double>(); }

void semantic_checks(const ExperimentInfo& info, const json& p, double rate_scale,
                     std::vector<Diagnostic>& out) {
    if (p.contains("bath")) {
        const auto b = p["bath"].get<std::string>();
        if (b != "fitted" && b != "second_plateau" && b != "pure_loss")
            out.push_back({Severity::error, "parameters.bath", "unknown bath '" + b + "'"});
    }
    if (p.contains("state")) {
        const auto s = p["state"].get<std::string>();
        if (s != "cat_plus" && s != "cat_minus" && s != "plus_z" && s != "minus_z" && s != "vacuum")
            out.push_back({Severity::error, "parameters.state", "unknown state '" + s + "'"});
    }
    if (p.contains("kerr_MHz") && param(p, "kerr_MHz") > 0.0) {
        KerrCatParams kc;
        kc.K = units::from_mhz(param(p, "kerr_MHz"));
        kc.eps2 = param(p, "cat_size") * kc.K;
        kc.detuning = units::from_mhz(param(p, "detuning_MHz"));
        const int trunc = p.at("truncation").get<int>();
        if (trunc > 0 && trunc < 2)
            out.push_back({Severity::error, "parameters.truncation", "must be at least 2"});
        try {
            const int need = kerr_cat_truncation(kc).dim();
            if (trunc > 0 && trunc < need) {
                out.push_back({Severity::warning, "parameters.truncation",
                               "cutoff " + std::to_string(trunc) + " is below the recommended " +
                                   std::to_string(need) + " for this cat size"});
            }
        } catch (const Error& e) {
            out.push_back({Severity::error, "parameters", e.what()});
        }
        if (p.contains("omega_z_MHz")) {
            const double gap = 4.0 * param(p, "kerr_MHz") * param(p, "cat_size");
            if (param(p, "omega_z_MHz") > 0.1 * gap) {
                out.push_back({Severity::warning, "parameters.omega_z_MHz",
                               "drive exceeds 10% of the cat gap 4K alpha^2; the Zeno picture breaks down"});
            }
        }
    }
    auto ordered = [&](const char* lo, const char* hi) {
        if (p.contains(lo) && p.contains(hi) && !(param(p, lo) < param(p, hi)))
            out.push_back({Severity::error, std::string("parameters.") + hi,
                           std::string("must exceed ") + lo});
    };
    ordered("tg_min_ns", "tg_max_ns");
    ordered("delta0_min_over_K", "delta0_max_over_K");
    ordered("detuning_min_over_K", "detuning_max_over_K");
    ordered("f_min_GHz", "f_max_GHz");
    if (p.contains("t_alpha_us") && p["t_alpha_us"].is_array() &&
        p["t_alpha_us"].size() != p["cat_sizes"].size()) {
        out.push_back({Severity::error, "parameters.t_alpha_us", "needs one value per cat size"});
    }
    if (p.contains("meas_error") && param(p, "meas_error") > 0.5)
        out.push_back({Severity::error, "parameters.meas_error", "must not exceed 0.5"});
    if (p.contains("p_alpha") && param(p, "p_alpha") > 1.0)
        out.push_back({Severity::error, "parameters.p_alpha", "must not exceed 1"});
    if (p.contains("efficiency") && param(p, "efficiency") > 1.0)
        out.push_back({Severity::error, "parameters.efficiency", "must not exceed 1"});

    if (info.uses_rate_scale && rate_scale != 1.0) {
        out.push_back({Severity::note, "rate_scale",
                       "all dissipation rates are multiplied by rate_scale; reported lifetimes are "
                       "those of the scaled model"});
    } else if (!info.uses_rate_scale && rate_scale != 1.0) {
        out.push_back({Severity::note, "rate_scale", "ignored by experiment '" + info.name + "'"});
    }
}

}  // namespace

const char* to_string(Severity s) {
    switch (s) {
        case Severity::error: return "error";
        case Severity::warning: return "warning";
        case Severity::note: return "note";
    }
    return "?";
}

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> catalog = build_catalog();
    return catalog;
}

const ExperimentInfo* find_experiment(std::string_view name) {
    for (const auto& e : experiment_catalog())
        if (e.name == name) return &e;
    return nullptr;
}

std::vector<Diagnostic> validate(const json& doc) {
    std::vector<Diagnostic> out;
    if (!doc.is_object()) {
        out.push_back({Severity::error, "", "config must be a JSON object"});
        return out;
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "experiment" && key != "parameters" && key != "seed" && key != "rate_scale" &&
            key != "output_dir")
            out.push_back({Severity::error, key, "unknown key"});
    }
    const ExperimentInfo* info = nullptr;
    if (!doc.contains("experiment")) {
        out.push_back({Severity::error, "experiment", "missing"});
    } else if (!doc["experiment"].is_string()) {
        out.push_back({Severity::error, "experiment", "must be a string"});
    } else if (!(info = find_experiment(doc["experiment"].get<std::string>()))) {
        out.push_back({Severity::error, "experiment",
                       "unknown experiment '" + doc["experiment"].get<std::string>() + "'"});
    }
    if (doc.contains("seed") && !(doc["seed"].is_number_unsigned() || (doc["seed"].is_number_integer() && doc["seed"].get<std::int64_t>() >= 0)))
        out.push_back({Severity::error, "seed", "must be a non-negative integer"});
    double rate_scale = 1.0;
    if (doc.contains("rate_scale")) {
        if (!doc["rate_scale"].is_number()) {
            out.push_back({Severity::error, "rate_scale", "must be a number"});
        } else {
            rate_scale = doc["rate_scale"].get<double>();
            if (!(rate_scale >= 1.0) || !std::isfinite(rate_scale))
                out.push_back({Severity::error, "rate_scale", "must be a finite number >= 1"});
        }
    }
    if (doc.contains("output_dir") && (!doc["output_dir"].is_string() || doc["output_dir"].get<std::string>().empty()))
        out.push_back({Severity::error, "output_dir", "must be a non-empty string"});

    json params = json::object();
    if (doc.contains("parameters")) {
        if (!doc["parameters"].is_object())
            out.push_back({Severity::error, "parameters", "must be an object"});
        else
            params = doc["parameters"];
    }
    if (!info) return out;

    bool typed = true;
    for (const auto& [key, value] : params.items()) {
        const std::string path = "parameters." + key;
        const auto it = std::find_if(info->params.begin(), info->params.end(),
                                     [&](const ParamSpec& s) { return s.key == key; });
        if (it == info->params.end()) {
            out.push_back({Severity::error, path, "unknown parameter for '" + info->name + "'"});
            continue;
        }
        if (!same_kind(it->default_value, value)) {
            out.push_back({Severity::error, path, std::string("must be ") + kind_name(it->default_value)});
            typed = false;
            continue;
        }
        check_bound(*it, value, path, out);
    }
    if (!typed) return out;
    json resolved = json::object();
    for (const auto& s : info->params) resolved[s.key] = params.contains(s.key) ? params[s.key] : s.default_value;
    semantic_checks(*info, resolved, rate_scale, out);
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

ExperimentConfig parse_config(const json& doc) {
    const auto diags = validate(doc);
    if (has_errors(diags)) {
        std::ostringstream os;
        os << "invalid config:";
        for (const auto& d : diags)
            if (d.severity == Severity::error) os << "\n  " << (d.path.empty() ? "<root>" : d.path) << ": " << d.message;
        throw ConfigInvalid(os.str());
    }
    ExperimentConfig cfg;
    cfg.experiment = doc["experiment"].get<std::string>();
    if (doc.contains("parameters")) cfg.parameters = doc["parameters"];
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("rate_scale")) cfg.rate_scale = doc["rate_scale"].get<double>();
    if (doc.contains("output_dir")) cfg.output_dir = doc["output_dir"].get<std::string>();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot read config file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

json to_json(const ExperimentConfig& cfg) {
    return {{"experiment", cfg.experiment},
            {"parameters", cfg.parameters},
            {"seed", cfg.seed},
            {"rate_scale", cfg.rate_scale},
            {"output_dir", cfg.output_dir}};
}

json resolved_parameters(const ExperimentConfig& cfg) {
    const ExperimentInfo* info = find_experiment(cfg.experiment);
    if (!info) throw ConfigInvalid("unknown experiment '" + cfg.experiment + "'");
    json out = json::object();
    for (const auto& s : info->params)
        out[s.key] = cfg.parameters.contains(s.key) ? cfg.parameters[s.key] : s.default_value;
    return out;
}

}  // namespace kerrcat::cli
