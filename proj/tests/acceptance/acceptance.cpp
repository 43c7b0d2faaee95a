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


// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
// budgets are fixed here; a criterion fails if either is exceeded.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kerrcat/config.hpp"
#include "kerrcat/control.hpp"
#include "kerrcat/dynamics.hpp"
#include "kerrcat/errors.hpp"
#include "kerrcat/experiments.hpp"
#include "kerrcat/filter.hpp"
#include "kerrcat/measurement.hpp"
#include "kerrcat/model.hpp"
#include "kerrcat/units.hpp"

namespace {

using namespace kerrcat;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 2026;
constexpr int kNoiseTrials = 2;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int g_passed = 0;
int g_total = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    ++g_total;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt <= budget_s;
    const bool ok = o.pass && in_time;
    g_passed += ok;
    std::printf("[%s] %2d %-22s %9.3f s / %g s%s | %s\n", ok ? "PASS" : "FAIL", id, name, dt, budget_s,
                in_time ? "" : " (over budget)", o.detail.c_str());
    std::fflush(stdout);
}

// Widens the window until the fitted lifetime sits inside it.
LifetimeResult windowed(double t, const std::function<LifetimeResult(double)>& f) {
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

SnailParams snail_for(const KerrCatParams& p) {
    SnailParams s = device_snail_params();
    s.g4 = -p.K / 6.0;
    return s;
}

double spectral_norm(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Outcome eigenstructure() {
    Outcome o{true, ""};
    for (double a2 : {2.0, 4.0, 8.0}) {
        const KerrCatParams p = device_kerr_cat(a2);
        const Truncation t = kerr_cat_truncation(p);
        const Operator h = kerr_cat_hamiltonian(p, t);
        const double e0 = std::norm(p.eps2) / p.K;
        double worst = 0.0;
        for (double sign : {1.0, -1.0}) {
            const CVector psi = coherent_state(sign * p.alpha(), t).amplitudes();
            worst = std::max(worst, (h.matrix() * psi - e0 * psi).norm() / spectral_norm(h.matrix()));
        }
        const double ratio = cat_energy_gap(h) / (4.0 * p.K * a2);
        o.pass = o.pass && worst < 1e-6 && std::abs(ratio - 1.0) < 0.10;
        o.detail += "a2=" + fmt("%g", a2) + " resid=" + fmt("%.1e", worst) + " gap/4Ka2=" + fmt("%.3f", ratio) + "; ";
    }
    return o;
}

Outcome thermal_population() {
    const double n = bose_einstein(units::from_ghz(5.9), 73.5);
    return {std::abs(n - 0.022) <= 0.001, "n=" + fmt("%.5f", n)};
}

Outcome phase_flip_tradeoff() {
    Outcome o{true, ""};
    const BathSpec bath = BathSpec::pure_loss(38.5).scaled(20.0);
    for (double a2 : {1.0, 2.0, 4.0}) {
        const KerrCatParams p = device_kerr_cat(a2);
        const double expect = tc_tradeoff(38.5 / 20.0, std::sqrt(a2));
        const auto r = lifetime_T_C(p, bath, snail_for(p), {.t_max = 3.0 * expect});
        const double ratio = r.tau / expect;
        o.pass = o.pass && std::abs(ratio - 1.0) < 0.10;
        o.detail += "a2=" + fmt("%g", a2) + " T_C/trade-off=" + fmt("%.4f", ratio) + "; ";
    }
    return o;
}

LifetimeResult t_alpha(const KerrCatParams& p, const BathSpec& bath, const DetuningNoise& noise, int dim = 0) {
    return windowed(30.0 / bath.kappa_half, [&](double t) {
        return lifetime_T_alpha(p, bath, snail_for(p), noise, {.t_max = t, .dim = dim});
    });
}

Outcome bit_flip_staircase() {
    const BathSpec bath = BathSpec::fitted().scaled(100.0);
    std::vector<double> ta;
    for (int a2 = 1; a2 <= 8; ++a2) {
        const KerrCatParams p = device_kerr_cat(a2);
        ta.push_back(t_alpha(p, bath, DetuningNoise::fitted(p.K, kNoiseTrials, kSeed + a2)).tau);
    }
    const KerrCatParams p4 = device_kerr_cat(4.0);
    const double tc4 = windowed(3.0 * tc_tradeoff(1.0 / bath.kappa_half, 2.0), [&](double t) {
                           return lifetime_T_C(p4, bath, snail_for(p4), {.t_max = t});
                       }).tau;
    const double protection = ta[3] / tc4;
    bool non_monotone = false;
    double max_rise = 0.0;
    for (std::size_t k = 1; k < ta.size(); ++k) {
        non_monotone = non_monotone || ta[k] < ta[k - 1];
        max_rise = std::max(max_rise, ta[k] / ta[k - 1]);
    }
    Outcome o;
    o.pass = protection > 20.0 && non_monotone && max_rise > 2.0;
    o.detail = "T_a/T_C(a2=4)=" + fmt("%.1f", protection) + " non-monotone=" + (non_monotone ? "yes" : "no") +
               " max rise=" + fmt("%.2f", max_rise) + "x T_a[us]=";
    for (double v : ta) o.detail += fmt("%.2f ", v);
    return o;
}

Outcome detuned_peaks() {
    const BathSpec bath = BathSpec::fitted().scaled(100.0);
    const KerrCatParams base = device_kerr_cat(4.0);
    std::vector<double> grid;
    for (int k = 0; k <= 20; ++k) grid.push_back(0.25 * k);
    const DetuningNoise noise = DetuningNoise::fitted(base.K, kNoiseTrials, kSeed);
    KerrCatParams widest = base;
    widest.detuning = grid.back() * base.K + std::abs(noise.mean) + 5.0 * noise.std;
    const int dim = kerr_cat_truncation(widest).dim();
    std::vector<double> ta;
    for (double d : grid) {
        KerrCatParams p = base;
        p.detuning = d * base.K;
        ta.push_back(t_alpha(p, bath, noise, dim).tau);
    }
    const auto peaks = local_maxima(ta);
    auto near = [&](double target) {
        for (int i : peaks)
            if (std::abs(grid[static_cast<std::size_t>(i)] - target) <= 0.3) return true;
        return false;
    };
    Outcome o;
    o.pass = near(2.0) && near(4.0);
    o.detail = "maxima at Delta/K =";
    for (int i : peaks) o.detail += " " + fmt("%.2f", grid[static_cast<std::size_t>(i)]);
    o.detail += " | T_a[us]=";
    for (double v : ta) o.detail += fmt("%.2f ", v);
    return o;
}

Outcome chevron() {
    const KerrCatParams p = device_kerr_cat(4.0);
    const Truncation t = kerr_cat_truncation(p);
    const double nominal = x_gate_transfer({0.32, -8.2 * p.K, 0.0}, p, t);
    std::vector<double> tg, d0;
    for (int k = 0; k < 5; ++k) {
        tg.push_back(0.32 * (0.9 + 0.05 * k));
        d0.push_back(-8.2 * (0.9 + 0.05 * k));
    }
    const ChevronMap box = x_gate_chevron(p, t, tg, d0);
    double best = 0.0, worst = 1.0;
    for (double v : box.transfer) {
        best = std::max(best, v);
        worst = std::min(worst, v);
    }
    std::vector<double> tg_full, d0_full;
    for (int k = 0; k < 21; ++k) tg_full.push_back(0.1 + 0.025 * k);
    for (int k = 0; k < 25; ++k) d0_full.push_back(-12.0 + 10.0 * k / 24.0);
    const int lobes = count_lobes(x_gate_chevron(p, t, tg_full, d0_full));
    Outcome o;
    o.pass = nominal > 0.9 && best > 0.9 && lobes >= 2;
    o.detail = "P(320 ns, -8.2K)=" + fmt("%.4f", nominal) + " box max=" + fmt("%.4f", best) +
               " box min=" + fmt("%.4f", worst) + " lobes=" + std::to_string(lobes);
    return o;
}

Outcome zeno_rotation() {
    const KerrCatParams p = device_kerr_cat(4.0);
    const Truncation t = kerr_cat_truncation(p);
    const CatFrame f = cat_frame(p, t);
    const double oz = 0.02 * 4.0 * p.K * 4.0;
    const double duration = 2.0 * 2.0 * kPi / (4.0 * oz);
    const auto r0 = simulate_z_rotation(p, oz, 0.0, duration, t, f.c_plus);
    const auto r90 = simulate_z_rotation(p, oz, kPi / 2, duration, t, f.c_plus);
    const double a2 = cat_size_from_rabi(extract_rabi_rate(r0.times, r0.bloch), oz);
    const double ratio = rabi_contrast(r90.bloch) / rabi_contrast(r0.bloch);
    return {std::abs(a2 / 4.0 - 1.0) < 0.05 && ratio < 0.01,
            "alpha^2 from Rabi=" + fmt("%.5f", a2) + " contrast(pi/2)/contrast(0)=" + fmt("%.2e", ratio)};
}

Outcome tomography() {
    Outcome o{true, ""};
    const QubitMatrix gates[3] = {qubit_rotation(Axis::z, 0.0), qubit_rotation(Axis::x, kPi / 2),
                                  qubit_rotation(Axis::z, kPi / 2)};
    double worst = 0.0;
    for (const auto& g : gates) {
        const auto r = simulate_process_tomography(g, {}, SpamModel::none());
        worst = std::max(worst, (r.estimate.matrix - r.ideal.matrix).cwiseAbs().maxCoeff());
    }
    const PTM id;
    const double f_id = gate_fidelity(id, id);
    SpamModel spam = SpamModel::device();
    spam.p_alpha = 0.93;
    const double durations[3] = {0.0, 0.32, 0.12};
    const char* names[3] = {"I", "X90", "Z90"};
    bool bracket = true;
    std::string fids;
    for (int k = 0; k < 3; ++k) {
        const double f = simulate_process_tomography(gates[k], {durations[k], 600.0, 5.0}, spam).fidelity;
        bracket = bracket && f >= 0.85 && f <= 0.97;
        fids += std::string(" F_") + names[k] + "=" + fmt("%.4f", f);
    }
    o.pass = worst < 1e-8 && f_id == 1.0 && bracket;
    o.detail = "noiseless max err=" + fmt("%.1e", worst) + " F(id,id)=" + fmt("%.15g", f_id) + fids;
    return o;
}

Outcome qnd_bracket() {
    const ReadoutParams r = ReadoutParams::device();
    const double q4 = qndness(r, 2.0, 1.0 / 600.0, 100000, kSeed);
    const double q8 = qndness(r, std::sqrt(8.0), 1.0 / 950.0, 100000, kSeed);
    return {q4 >= 0.975 && q4 <= 0.995 && q8 > q4, "Q(a2=4)=" + fmt("%.5f", q4) + " Q(a2=8)=" + fmt("%.5f", q8)};
}

Outcome filter_targets() {
    const auto net = filter::design_notch_filter({});
    const auto band = filter::sweep(net, 5.5, 6.3, 801);
    const double width = filter::stopband_width(band, 5.9, -30.0);
    auto db = [&](double f) { return 20.0 * std::log10(std::abs(filter::s21(filter::cascade(net, f), 50.0))); };
    double worst = 0.0;
    for (const auto& p : filter::sweep(net, 0.01, 30.0, 30000)) worst = std::max(worst, std::abs(p.power_error));
    for (double f : {5.9, 11.8, 17.7, 23.6}) {
        const auto abcd = filter::cascade(net, f);
        worst = std::max(worst, std::abs(std::norm(filter::s21(abcd, 50.0)) + std::norm(filter::s11(abcd, 50.0)) - 1.0));
    }
    const double s12 = db(1.2), s118 = db(11.8);
    return {width >= 0.2 && s12 >= -0.1 && s118 >= -0.1 && worst < 1e-9,
            "-30 dB width=" + fmt("%.0f", width * 1e3) + " MHz S21(1.2)=" + fmt("%.4f", s12) + " dB S21(11.8)=" +
                fmt("%.2e", s118) + " dB max||S11|^2+|S21|^2-1|=" + fmt("%.1e", worst)};
}

// Column-stacked Liouvillian assembled by applying the master equation to
// each matrix unit, exponentiated by scaling and squaring of a Taylor series.
CMatrix oracle_propagator(const CMatrix& h, const std::vector<JumpTerm>& jumps, double t) {
    const int n = static_cast<int>(h.rows());
    const cplx i(0.0, 1.0);
    CMatrix lv(n * n, n * n);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
            CMatrix e = CMatrix::Zero(n, n);
            e(k, l) = 1.0;
            CMatrix d = -i * (h * e - e * h);
            for (const auto& j : jumps) {
                const CMatrix& a = j.op.matrix();
                const CMatrix ada = a.adjoint() * a;
                d += j.rate * (a * e * a.adjoint() - 0.5 * (ada * e + e * ada));
            }
            lv.col(l * n + k) = Eigen::Map<const CVector>(d.data(), n * n);
        }
    CMatrix m = lv * t;
    int squarings = 0;
    const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
    while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
    m /= std::pow(2.0, squarings);
    CMatrix sum = CMatrix::Identity(n * n, n * n), term = sum;
    for (int k = 1; k <= 24; ++k) {
        term = term * m / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

Outcome solver_oracle() {
    std::mt19937_64 rng(kSeed);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.1, 1.0);
    auto random_matrix = [&](int n) {
        CMatrix m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(r, c) = cplx(g(rng), g(rng));
        return m;
    };
    double worst_auto = 0.0, worst_rk = 0.0;
    for (int inst = 0; inst < 10; ++inst) {
        const int n = 2 + inst % 7;
        CMatrix h = random_matrix(n);
        h = (0.5 * (h + h.adjoint())).eval();
        std::vector<JumpTerm> jumps;
        for (int k = 0; k < 1 + inst % 3; ++k) jumps.push_back({Operator(random_matrix(n) / std::sqrt(n)), u(rng), ""});
        CVector psi = random_matrix(n).col(0);
        psi.normalize();
        const DensityMatrix rho0(psi * psi.adjoint());
        const double t = 1.0;
        const CMatrix prop = oracle_propagator(h, jumps, t);
        const CVector v = prop * Eigen::Map<const CVector>(rho0.matrix().data(), n * n);
        const CMatrix expect = Eigen::Map<const CMatrix>(v.data(), n, n);
        const TimeDependentHamiltonian ham(Operator(h, true));
        const auto a = evolve(rho0, ham, jumps, {0.0, t}, {});
        const auto b = evolve(rho0, ham, jumps, {0.0, t}, {}, {.method = Integrator::rk45});
        worst_auto = std::max(worst_auto, (a.final_state.matrix() - expect).cwiseAbs().maxCoeff());
        worst_rk = std::max(worst_rk, (b.final_state.matrix() - expect).cwiseAbs().maxCoeff());
    }
    return {worst_auto < 1e-7 && worst_rk < 1e-7,
            "max entry error: automatic=" + fmt("%.1e", worst_auto) + " rk45=" + fmt("%.1e", worst_rk)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism() {
    // Heavy experiments run on reduced grids; the comparison is the same.
    const std::vector<std::pair<std::string, nlohmann::json>> runs = {
        {"spectrum", {}},
        {"chevron", {{"tg_points", 4}, {"delta0_points", 4}}},
        {"rabi-phase", {{"theta_points", 3}}},
        {"lifetime-cat", {{"cat_sizes", {2.0}}}},
        {"lifetime-coherent", {{"cat_sizes", {2.0}}}},
        {"lifetime-detuned", {{"detuning_points", 2}, {"detuning_max_over_K", 1.0}}},
        {"readout-qnd", {{"pairs", 20000}}},
        {"tomography", {}},
        {"filter-sweep", {}},
        {"wigner", {{"grid_points", 41}}},
    };
    const fs::path root = fs::temp_directory_path() / "kerrcat_acceptance_determinism";
    fs::remove_all(root);
    std::size_t files = 0;
    std::string mismatch;
    for (const auto& [name, params] : runs) {
        cli::ExperimentConfig cfg;
        cfg.experiment = name;
        cfg.seed = kSeed;
        cfg.rate_scale = name.rfind("lifetime", 0) == 0 ? 100.0 : 1.0;
        cfg.parameters = params.is_null() ? nlohmann::json::object() : params;
        cfg.output_dir = (root / (name + "_a")).string();
        const auto ra = cli::run(cfg);
        cfg.output_dir = (root / (name + "_b")).string();
        const auto rb = cli::run(cfg);
        for (std::size_t k = 0; k < ra.outputs.size(); ++k) {
            ++files;
            const auto& f = ra.outputs[k];
            const bool same = k < rb.outputs.size() && f.sha256 == rb.outputs[k].sha256 &&
                              slurp(root / (name + "_a") / f.name) == slurp(root / (name + "_b") / f.name);
            if (!same) mismatch += " " + name + "/" + f.name;
        }
    }
    fs::remove_all(root);
    return {mismatch.empty() && files > 0,
            std::to_string(runs.size()) + " experiments, " + std::to_string(files) + " data files" +
                (mismatch.empty() ? " byte-identical" : ", differing:" + mismatch)};
}

}  // namespace

int main() {
    std::printf("kerrcat acceptance suite\n");
    criterion(1, "eigenstructure", 5.0, eigenstructure);
    criterion(2, "thermal population", 1e-3, thermal_population);
    criterion(3, "phase-flip trade-off", 300.0, phase_flip_tradeoff);
    criterion(4, "bit-flip staircase", 1800.0, bit_flip_staircase);
    criterion(5, "detuned-cat peaks", 1800.0, detuned_peaks);
    criterion(6, "X(pi/2) chevron", 600.0, chevron);
    criterion(7, "Zeno Z rotation", 120.0, zeno_rotation);
    criterion(8, "tomography pipeline", 60.0, tomography);
    criterion(9, "QNDness bracket", 120.0, qnd_bracket);
    criterion(10, "filter", 1.0, filter_targets);
    criterion(11, "solver oracle", 60.0, solver_oracle);
    criterion(12, "determinism", 1800.0, determinism);
    std::printf("acceptance: %d/%d criteria passed\n", g_passed, g_total);
    return g_passed == g_total ? 0 : 1;
}
