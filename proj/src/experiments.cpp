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


#include "kerrcat/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <openssl/evp.h>

#include "kerrcat/control.hpp"
#include "kerrcat/dynamics.hpp"
#include "kerrcat/errors.hpp"
#include "kerrcat/filter.hpp"
#include "kerrcat/measurement.hpp"
#include "kerrcat/model.hpp"
#include "kerrcat/parallel.hpp"
#include "kerrcat/units.hpp"

#ifndef KERRCAT_VERSION
#define KERRCAT_VERSION "0.0.0"
#endif

namespace kerrcat::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(num(v)); }

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
    return out;
}

// Writes data files into the staging directory, each through a temporary
// name so a file is either complete or absent.
class Sink {
   public:
    explicit Sink(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string& name, const std::string& content) {
        const fs::path tmp = dir_ / (name + ".tmp");
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw InputError("cannot write '" + tmp.string() + "'");
            out << content;
            if (!out.flush()) throw InputError("write to '" + tmp.string() + "' failed");
        }
        fs::rename(tmp, dir_ / name);
        files_.push_back({name, sha256_hex(content), content.size()});
    }

    const std::vector<OutputFile>& files() const { return files_; }

   private:
    fs::path dir_;
    std::vector<OutputFile> files_;
};

struct Context {
    const ExperimentConfig& cfg;
    const json& p;
    Sink& sink;
    json& summary;

    double d(const char* key) const { return p.at(key).get<double>(); }
    int i(const char* key) const { return p.at(key).get<int>(); }
    std::string s(const char* key) const { return p.at(key).get<std::string>(); }
    std::vector<double> list(const char* key) const { return p.at(key).get<std::vector<double>>(); }
};

KerrCatParams device(const Context& c, double cat_size) {
    KerrCatParams kc;
    kc.K = units::from_mhz(c.d("kerr_MHz"));
    kc.eps2 = cat_size * kc.K;
    kc.detuning = units::from_mhz(c.d("detuning_MHz"));
    return kc;
}

Truncation truncation_for(const Context& c, const KerrCatParams& kc) {
    const int n = c.i("truncation");
    return n > 0 ? Truncation(n) : kerr_cat_truncation(kc);
}

SnailParams snail_for(const KerrCatParams& kc) {
    SnailParams s = device_snail_params();
    s.g4 = -kc.K / 6.0;
    return s;
}

BathSpec bath_for(const Context& c) {
    const std::string b = c.s("bath");
    BathSpec bath = b == "fitted"           ? BathSpec::fitted()
                    : b == "second_plateau" ? BathSpec::second_plateau()
                                            : BathSpec::pure_loss(c.d("t1_us"));
    return bath.scaled(c.cfg.rate_scale);
}

std::uint64_t derived_seed(std::uint64_t seed, std::size_t k) {
    return seed * 0x9E3779B97F4A7C15ull + 0xBF58476D1CE4E5B9ull * (k + 1);
}

// Grows the observation window until the fitted time sits well inside it.
LifetimeResult windowed(double t_guess, bool fixed, const std::function<LifetimeResult(double)>& f) {
    if (fixed) return f(t_guess);
    double t = t_guess;
    for (int attempt = 0;; ++attempt) {
        try {
            LifetimeResult r = f(t);
            if (r.infinite() || r.tau < t / 2.0 || attempt == 4) return r;
        } catch (const FitDiverged&) {
            if (attempt == 4) throw;
        }
        t *= 4.0;
    }
}

void spectrum_experiment(Context& c) {
    const int levels = c.i("levels");
    std::ostringstream csv;
    csv << "cat_size,parity,level,energy_over_K\n";
    for (double a2 : c.list("cat_sizes")) {
        const KerrCatParams kc = device(c, a2);
        const Truncation trunc = truncation_for(c, kc);
        const CMatrix h = kerr_cat_hamiltonian(kc, trunc).matrix();
        for (int parity = 0; parity < 2; ++parity) {
            std::vector<int> idx;
            for (int n = parity; n < trunc.dim(); n += 2) idx.push_back(n);
            CMatrix block(idx.size(), idx.size());
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (std::size_t q = 0; q < idx.size(); ++q) block(r, q) = h(idx[r], idx[q]);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(block, Eigen::EigenvaluesOnly);
            const auto& ev = es.eigenvalues();
            const int count = std::min<int>(levels, static_cast<int>(ev.size()));
            for (int l = 0; l < count; ++l) {
                csv << num(a2) << ',' << (parity == 0 ? "even" : "odd") << ',' << l << ','
                    << num(ev(ev.size() - 1 - l) / kc.K) << '\n';
            }
        }
    }
    c.sink.write("spectrum.csv", csv.str());
    const KerrCatParams kc = device(c, c.d("cat_size"));
    const double gap = cat_energy_gap(kerr_cat_hamiltonian(kc, truncation_for(c, kc))) / kc.K;
    c.summary["gap_over_K"] = gap;
    c.summary["gap_over_4_alpha2_K"] = c.d("cat_size") > 0 ? gap / (4.0 * c.d("cat_size")) : 0.0;
}

void chevron_experiment(Context& c) {
    const KerrCatParams kc = device(c, c.d("cat_size"));
    std::vector<double> tg = linspace(c.d("tg_min_ns") * 1e-3, c.d("tg_max_ns") * 1e-3, c.i("tg_points"));
    const auto d0 = linspace(c.d("delta0_min_over_K"), c.d("delta0_max_over_K"), c.i("delta0_points"));
    const ChevronMap map = x_gate_chevron(kc, truncation_for(c, kc), tg, d0);
    std::ostringstream csv;
    write_chevron_csv(csv, map);
    c.sink.write("chevron.csv", csv.str());
    std::size_t best = 0;
    for (std::size_t k = 1; k < map.transfer.size(); ++k)
        if (map.transfer[k] > map.transfer[best]) best = k;
    c.summary["lobes"] = count_lobes(map);
    c.summary["max_transfer"] = map.transfer[best];
    c.summary["argmax_Tg_us"] = map.Tg[best / d0.size()];
    c.summary["argmax_delta0_over_K"] = map.delta0_over_K[best % d0.size()];
}

void rabi_phase_experiment(Context& c) {
    const KerrCatParams kc = device(c, c.d("cat_size"));
    const Truncation trunc = truncation_for(c, kc);
    const CatFrame frame = cat_frame(kc, trunc);
    const double oz = units::from_mhz(c.d("omega_z_MHz"));
    const double expected = 2.0 * std::abs(kc.alpha()) * oz;
    const double duration = c.d("periods") * 2.0 * kPi / expected;
    const auto thetas = linspace(0.0, kPi, c.i("theta_points"));
    std::vector<ZRotationResult> runs(thetas.size());
    parallel_for(static_cast<int>(thetas.size()), [&](int k) {
        runs[static_cast<std::size_t>(k)] = simulate_z_rotation(kc, oz, thetas[static_cast<std::size_t>(k)],
                                                                duration, trunc, frame.c_plus);
    });
    std::ostringstream csv;
    csv << "theta_rad,omega_c_rad_per_us,contrast\n";
    std::vector<double> contrast(thetas.size());
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        contrast[k] = rabi_contrast(runs[k].bloch);
        csv << num(thetas[k]) << ',' << num(extract_rabi_rate(runs[k].times, runs[k].bloch)) << ','
            << num(contrast[k]) << '\n';
    }
    c.sink.write("rabi_phase.csv", csv.str());
    std::ostringstream trace;
    trace << "t_us,x,y,z\n";
    for (std::size_t k = 0; k < runs[0].times.size(); ++k) {
        const Bloch& b = runs[0].bloch[k];
        trace << num(runs[0].times[k]) << ',' << num(b.x) << ',' << num(b.y) << ',' << num(b.z) << '\n';
    }
    c.sink.write("rabi_trace.csv", trace.str());
    const double rate0 = extract_rabi_rate(runs[0].times, runs[0].bloch);
    c.summary["omega_c_rad_per_us"] = rate0;
    c.summary["cat_size_from_rabi"] = cat_size_from_rabi(rate0, oz);
    std::size_t quarter = 0;
    for (std::size_t k = 0; k < thetas.size(); ++k)
        if (std::abs(thetas[k] - kPi / 2) < std::abs(thetas[quarter] - kPi / 2)) quarter = k;
    c.summary["contrast_ratio_at_theta"] = thetas[quarter];
    c.summary["contrast_ratio"] = contrast[0] > 0 ? contrast[quarter] / contrast[0] : 0.0;
    json warnings = json::array();
    for (const auto& w : runs[0].warnings) warnings.push_back(w);
    c.summary["warnings"] = warnings;
}

void lifetime_cat_experiment(Context& c) {
    const BathSpec bath = bath_for(c);
    const double t1 = bath.kappa_half > 0 ? 1.0 / bath.kappa_half : std::numeric_limits<double>::infinity();
    const auto sizes = c.list("cat_sizes");
    std::vector<LifetimeResult> res(sizes.size());
    parallel_for(static_cast<int>(sizes.size()), [&](int k) {
        const KerrCatParams kc = device(c, sizes[static_cast<std::size_t>(k)]);
        LifetimeOptions o;
        o.dim = c.i("truncation");
        const bool fixed = c.d("t_max_us") > 0;
        const double guess = fixed ? c.d("t_max_us") : 3.0 * tc_tradeoff(std::isfinite(t1) ? t1 : 1e3, std::abs(kc.alpha()));
        res[static_cast<std::size_t>(k)] = windowed(guess, fixed, [&](double t) {
            o.t_max = t;
            return lifetime_T_C(kc, bath, snail_for(kc), o);
        });
    });
    std::ostringstream csv;
    csv << "cat_size,T_C_us,T_C_stderr_us,tradeoff_us\n";
    json tc = json::array();
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const double trade = tc_tradeoff(t1, std::sqrt(sizes[k]));
        csv << num(sizes[k]) << ',' << num(res[k].tau) << ',' << num(res[k].tau_stderr) << ',' << num(trade) << '\n';
        tc.push_back(jnum(res[k].tau));
    }
    c.sink.write("lifetime_cat.csv", csv.str());
    c.summary["T_C_us"] = tc;
}

double t_alpha_guess(const BathSpec& bath) {
    return bath.kappa_half > 0 ? 30.0 / bath.kappa_half : 1e3;
}

void lifetime_coherent_experiment(Context& c) {
    const BathSpec bath = bath_for(c);
    const auto sizes = c.list("cat_sizes");
    std::vector<LifetimeResult> res(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const KerrCatParams kc = device(c, sizes[k]);
        const DetuningNoise noise = DetuningNoise::fitted(kc.K, c.i("trials"), derived_seed(c.cfg.seed, k));
        LifetimeOptions o;
        o.dim = c.i("truncation");
        const bool fixed = c.d("t_max_us") > 0;
        res[k] = windowed(fixed ? c.d("t_max_us") : t_alpha_guess(bath), fixed, [&](double t) {
            o.t_max = t;
            return lifetime_T_alpha(kc, bath, snail_for(kc), noise, o);
        });
    }
    std::ostringstream csv;
    csv << "cat_size,T_alpha_us,T_alpha_stderr_us\n";
    json ta = json::array();
    double max_rise = 0.0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        csv << num(sizes[k]) << ',' << num(res[k].tau) << ',' << num(res[k].tau_stderr) << '\n';
        ta.push_back(jnum(res[k].tau));
        if (k > 0) max_rise = std::max(max_rise, res[k].tau / res[k - 1].tau);
    }
    c.sink.write("lifetime_coherent.csv", csv.str());
    c.summary["T_alpha_us"] = ta;
    c.summary["max_consecutive_ratio"] = jnum(max_rise);
}

void lifetime_detuned_experiment(Context& c) {
    const BathSpec bath = bath_for(c);
    const KerrCatParams base = device(c, c.d("cat_size"));
    const auto offsets = linspace(c.d("detuning_min_over_K"), c.d("detuning_max_over_K"), c.i("detuning_points"));
    const DetuningNoise noise = DetuningNoise::fitted(base.K, c.i("trials"), c.cfg.seed);
    int dim = c.i("truncation");
    if (dim == 0) {
        KerrCatParams widest = base;
        widest.detuning += std::max(0.0, offsets.back() * base.K) + std::abs(noise.mean) + 5.0 * noise.std;
        dim = kerr_cat_truncation(widest).dim();
    }
    std::vector<LifetimeResult> res(offsets.size());
    parallel_for(static_cast<int>(offsets.size()), [&](int k) {
        KerrCatParams kc = base;
        kc.detuning += offsets[static_cast<std::size_t>(k)] * base.K;
        LifetimeOptions o;
        o.dim = dim;
        const bool fixed = c.d("t_max_us") > 0;
        res[static_cast<std::size_t>(k)] = windowed(fixed ? c.d("t_max_us") : t_alpha_guess(bath), fixed, [&](double t) {
            o.t_max = t;
            return lifetime_T_alpha(kc, bath, snail_for(kc), noise, o);
        });
    });
    std::ostringstream csv;
    csv << "detuning_over_K,T_alpha_us,T_alpha_stderr_us\n";
    std::vector<double> tau(offsets.size());
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        tau[k] = res[k].tau;
        csv << num(offsets[k]) << ',' << num(res[k].tau) << ',' << num(res[k].tau_stderr) << '\n';
    }
    c.sink.write("lifetime_detuned.csv", csv.str());
    json peaks = json::array();
    for (int m : local_maxima(tau)) peaks.push_back(offsets[static_cast<std::size_t>(m)]);
    c.summary["local_maxima_over_K"] = peaks;
}

ReadoutParams readout_for(const Context& c) {
    ReadoutParams r;
    r.eps_cqr = units::from_mhz(c.d("eps_cqr_MHz"));
    r.kappa_r = units::from_mhz(c.d("kappa_r_MHz"));
    r.duration = c.d("duration_us");
    r.efficiency = c.d("efficiency");
    r.noise_sigma = c.d("noise_sigma");
    return r;
}

void readout_qnd_experiment(Context& c) {
    const ReadoutParams r = readout_for(c);
    const auto sizes = c.list("cat_sizes");
    const auto t_alpha = c.list("t_alpha_us");
    const auto pairs = static_cast<std::size_t>(c.i("pairs"));
    std::ostringstream csv;
    csv << "cat_size,T_alpha_us,Q,p_plus_plus,p_minus_minus,misassignment\n";
    json qs = json::array();
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const double alpha = std::sqrt(sizes[k]);
        const auto q = qnd_analysis(r, alpha, 1.0 / t_alpha[k], pairs, derived_seed(c.cfg.seed, k));
        csv << num(sizes[k]) << ',' << num(t_alpha[k]) << ',' << num(q.q) << ',' << num(q.p_plus_plus) << ','
            << num(q.p_minus_minus) << ',' << num(misassignment_probability(r, alpha)) << '\n';
        qs.push_back(q.q);
    }
    c.sink.write("qnd.csv", csv.str());
    const double alpha = std::sqrt(sizes[0]);
    const auto n = static_cast<std::size_t>(c.i("export_shots"));
    auto shots = simulate_readout(1, r, alpha, 1.0 / t_alpha[0], n, derived_seed(c.cfg.seed, 1000));
    const auto minus = simulate_readout(-1, r, alpha, 1.0 / t_alpha[0], n, derived_seed(c.cfg.seed, 1001));
    shots.insert(shots.end(), minus.begin(), minus.end());
    std::ostringstream sc;
    write_shots_csv(sc, shots, discrimination_line(r, alpha));
    c.sink.write("shots.csv", sc.str());
    c.summary["Q"] = qs;
}

void tomography_experiment(Context& c) {
    SpamModel spam = SpamModel::device();
    spam.p_alpha = c.d("p_alpha");
    if (c.d("meas_error") >= 0.0) spam.meas_error = c.d("meas_error");
    struct Gate {
        const char* name;
        const char* file;
        QubitMatrix u;
        double ns;
    };
    const Gate gates[] = {{"I", "ptm_identity.json", qubit_rotation(Axis::z, 0.0), c.d("identity_ns")},
                          {"X90", "ptm_x90.json", qubit_rotation(Axis::x, kPi / 2), c.d("x_gate_ns")},
                          {"Z90", "ptm_z90.json", qubit_rotation(Axis::z, kPi / 2), c.d("z_gate_ns")}};
    std::ostringstream csv;
    csv << "gate,duration_ns,fidelity\n";
    json fid = json::object();
    for (const auto& g : gates) {
        const auto res = simulate_process_tomography(g.u, {g.ns * 1e-3, c.d("t_alpha_us"), c.d("t_c_us")}, spam);
        std::ostringstream js;
        write_ptm_json(js, res.estimate);
        c.sink.write(g.file, js.str());
        csv << g.name << ',' << num(g.ns) << ',' << num(res.fidelity) << '\n';
        fid[g.name] = res.fidelity;
    }
    c.sink.write("fidelities.csv", csv.str());
    c.summary["fidelity"] = fid;
    c.summary["meas_error"] = spam.meas_error;
}

void filter_experiment(Context& c) {
    filter::NotchDesign d;
    d.f_notch = c.d("f_notch_GHz");
    d.n_stubs = c.i("n_stubs");
    d.spacing = c.d("spacing_rad");
    d.z_stub = c.d("z_stub_ohm");
    d.z_line = c.d("z_line_ohm");
    const auto net = filter::design_notch_filter(d);
    const double z0 = c.d("z0_ohm");
    const auto pts = filter::sweep(net, c.d("f_min_GHz"), c.d("f_max_GHz"), c.i("points"), z0);
    std::ostringstream csv;
    filter::write_sweep_csv(csv, pts);
    c.sink.write("filter_sweep.csv", csv.str());
    std::ostringstream js;
    filter::write_design_json(js, d, net);
    c.sink.write("filter_design.json", js.str());
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, std::abs(p.power_error));
    auto db = [&](double f) { return 20.0 * std::log10(std::abs(filter::s21(filter::cascade(net, f), z0))); };
    c.summary["stopband_30dB_GHz"] = filter::stopband_width(pts, d.f_notch, -30.0);
    c.summary["s21_dB_at_1p2_GHz"] = db(1.2);
    c.summary["s21_dB_at_11p8_GHz"] = db(11.8);
    c.summary["max_power_error"] = worst;
}

void wigner_experiment(Context& c) {
    const KerrCatParams kc = device(c, c.d("cat_size"));
    const Truncation trunc = truncation_for(c, kc);
    const std::string which = c.s("state");
    Ket psi = fock_state(0, trunc);
    if (which != "vacuum") {
        const CatFrame f = cat_frame(kc, trunc);
        psi = which == "cat_plus" ? f.c_plus : which == "cat_minus" ? f.c_minus : which == "plus_z" ? f.plus_z : f.minus_z;
    }
    const int n = c.i("grid_points");
    const auto axis = linspace(-c.d("extent"), c.d("extent"), n);
    std::vector<cplx> grid;
    grid.reserve(static_cast<std::size_t>(n) * n);
    for (double im : axis)
        for (double re : axis) grid.emplace_back(re, im);
    const auto w = wigner(psi, grid);
    std::ostringstream csv;
    csv << "re_beta,im_beta,W\n";
    double lo = w[0], sum = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        csv << num(grid[k].real()) << ',' << num(grid[k].imag()) << ',' << num(w[k]) << '\n';
        lo = std::min(lo, w[k]);
        sum += w[k];
    }
    c.sink.write("wigner.csv", csv.str());
    const double h = axis[1] - axis[0];
    c.summary["W_min"] = lo;
    c.summary["integral"] = sum * h * h;
}

using Runner = void (*)(Context&);

Runner runner_for(const std::string& name) {
    if (name == "spectrum") return spectrum_experiment;
    if (name == "chevron") return chevron_experiment;
    if (name == "rabi-phase") return rabi_phase_experiment;
    if (name == "lifetime-cat") return lifetime_cat_experiment;
    if (name == "lifetime-coherent") return lifetime_coherent_experiment;
    if (name == "lifetime-detuned") return lifetime_detuned_experiment;
    if (name == "readout-qnd") return readout_qnd_experiment;
    if (name == "tomography") return tomography_experiment;
    if (name == "filter-sweep") return filter_experiment;
    if (name == "wigner") return wigner_experiment;
    throw ConfigInvalid("unknown experiment '" + name + "'");
}

void write_atomic(const fs::path& target, const std::string& content) {
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write '" + tmp.string() + "'");
        out << content;
    }
    fs::rename(tmp, target);
}

void publish(const fs::path& staging, const fs::path& dest, const ExperimentRecord& rec) {
    fs::create_directories(dest);
    for (const auto& f : rec.outputs) fs::rename(staging / f.name, dest / f.name);
    write_atomic(dest / "record.json", rec.to_json().dump(2) + "\n");
}

}  // namespace

std::string_view tool_version() { return KERRCAT_VERSION; }

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw NumericalError("SHA-256 computation failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int k = 0; k < len; ++k) {
        out.push_back(hex[md[k] >> 4]);
        out.push_back(hex[md[k] & 0xF]);
    }
    return out;
}

json ExperimentRecord::to_json() const {
    json files = json::array();
    for (const auto& f : outputs) files.push_back({{"file", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    json doc{{"tool", "kerrcat"},
             {"version", tool_version},
             {"status", status},
             {"experiment", config.experiment},
             {"config", cli::to_json(config)},
             {"resolved_parameters", resolved_parameters},
             {"wall_time_s", wall_time_s},
             {"outputs", files},
             {"summary", summary}};
    if (!error.empty()) doc["error"] = error;
    return doc;
}

ExperimentRecord run(const ExperimentConfig& config) {
    const auto diags = validate(cli::to_json(config));
    if (has_errors(diags)) parse_config(cli::to_json(config));

    ExperimentRecord rec;
    rec.config = config;
    rec.resolved_parameters = resolved_parameters(config);
    rec.tool_version = std::string(tool_version());
    const Runner runner = runner_for(config.experiment);

    const fs::path out_dir(config.output_dir);
    const fs::path staging = out_dir / ".staging";
    fs::create_directories(out_dir);
    fs::remove_all(staging);
    fs::create_directories(staging);

    Sink sink(staging);
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    try {
        Context ctx{config, rec.resolved_parameters, sink, rec.summary};
        runner(ctx);
    } catch (const std::exception& e) {
        rec.status = "failed";
        rec.error = e.what();
        rec.outputs = sink.files();
        rec.wall_time_s = elapsed();
        publish(staging, out_dir / "failed", rec);
        fs::remove_all(staging);
        if (dynamic_cast<const NumericalError*>(&e) && !dynamic_cast<const ExperimentFailed*>(&e))
            throw ExperimentFailed("experiment '" + config.experiment + "' failed: " + e.what());
        throw;
    }
    rec.outputs = sink.files();
    rec.wall_time_s = elapsed();
    publish(staging, out_dir, rec);
    fs::remove_all(staging);
    return rec;
}

}  // namespace kerrcat::cli
