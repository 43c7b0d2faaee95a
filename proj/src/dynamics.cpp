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


#include "kerrcat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <string>

#include "kerrcat/errors.hpp"
#include "kerrcat/parallel.hpp"
#include "kerrcat/units.hpp"

namespace kerrcat {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kE[7] = {71.0 / 57600,  0.0,         -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

double error_norm(const CMatrix& err, const CMatrix& y0, const CMatrix& y1, double atol,
                  double rtol) {
    double acc = 0.0;
    const Eigen::Index n = err.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double sc =
            atol + rtol * std::max(std::abs(y0.data()[i]), std::abs(y1.data()[i]));
        const double r = std::abs(err.data()[i]) / sc;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

// Adaptive integration of y' = f(t, y) from times.front(), calling
// on_sample(k, y) at every requested time.
template <typename Rhs, typename Sample>
void integrate_rk45(CMatrix y, const std::vector<double>& times, Rhs&& f, const EvolveOptions& o,
                    Sample&& on_sample) {
    if (times.empty()) return;
    if (!(o.rtol > 0.0) || !(o.atol > 0.0)) throw InputError("evolve: tolerances must be positive");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (times[k] < times[k - 1]) throw InputError("evolve: sample times must increase");
    }
    double t = times.front();
    on_sample(0, y);
    if (times.size() == 1) return;

    CMatrix k[7];
    k[0] = f(t, y);
    const double span = times.back() - t;
    double h;
    {
        const double d0 = error_norm(y, y, y, o.atol, o.rtol);
        const double d1 = error_norm(k[0], y, y, o.atol, o.rtol);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min(h, span);
        if (o.max_step > 0.0) h = std::min(h, o.max_step);
    }
    CMatrix stage, y_new, err;
    std::size_t next = 1;
    while (next < times.size()) {
        const double target = times[next];
        if (t >= target) {
            on_sample(static_cast<int>(next++), y);
            continue;
        }
        double step = std::min(h, target - t);
        const bool clipped = step < h;
        if (step < o.min_step * std::max(1.0, std::abs(t))) {
            throw StepSizeUnderflow("evolve: step size underflow at t = " + std::to_string(t));
        }
        for (int s = 1; s < 7; ++s) {
            stage = y;
            for (int j = 0; j < s; ++j) {
                if (kA[s][j] != 0.0) stage.noalias() += (step * kA[s][j]) * k[j];
            }
            if (s == 6) {
                y_new = stage;
            }
            k[s] = f(t + kC[s] * step, stage);
        }
        err = (step * kE[0]) * k[0];
        for (int s = 2; s < 7; ++s) err.noalias() += (step * kE[s]) * k[s];
        const double en = error_norm(err, y, y_new, o.atol, o.rtol);
        if (!std::isfinite(en)) throw NonFiniteState("evolve: non-finite state");
        double factor = en == 0.0 ? 5.0 : 0.9 * std::pow(en, -0.2);
        factor = std::clamp(factor, 0.2, 5.0);
        if (en <= 1.0) {
            t = (step == target - t) ? target : t + step;
            y.swap(y_new);
            k[0] = k[6];
            if (!clipped) h = step * factor;
            if (o.max_step > 0.0) h = std::min(h, o.max_step);
            while (next < times.size() && t >= times[next]) {
                on_sample(static_cast<int>(next++), y);
            }
        } else {
            h = step * std::max(0.2, factor);
        }
    }
}

struct ObservableTable {
    std::vector<std::pair<std::string, std::vector<double>>> series;

    explicit ObservableTable(const std::vector<NamedOperator>& obs, std::size_t n) {
        for (const auto& o : obs) series.emplace_back(o.name, std::vector<double>(n, 0.0));
    }
};

const std::vector<double>& find_series(
    const std::vector<std::pair<std::string, std::vector<double>>>& all, const std::string& name) {
    for (const auto& [n, s] : all) {
        if (n == name) return s;
    }
    throw InputError("no observable named '" + name + "'");
}

void check_jumps(const std::vector<JumpTerm>& jumps, int dim) {
    for (const auto& j : jumps) {
        require_same_dim(j.op.dim(), dim, "jump operator");
        if (!(j.rate >= 0.0)) throw InputError("jump rate must be non-negative");
    }
}

double trace_dev(const CMatrix& rho) { return std::abs(rho.trace() - cplx(1.0)); }

double herm_err(const CMatrix& rho) { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

// --------------------------------------------------------------- baths

BathSpec BathSpec::fitted() {
    BathSpec b;
    b.kappa_half = 1.0 / 38.5;
    b.T_half = 73.5;
    b.kappa_full = 7.0;
    b.T_full = 515.0;
    b.kappa_phi = units::rate_from_hz(100.0);
    b.omega_d = units::from_ghz(11.8);
    return b;
}

BathSpec BathSpec::second_plateau() {
    BathSpec b = fitted();
    b.T_half = units::kThermalFactor * (0.5 * b.omega_d) / std::log1p(1.0 / 0.05);
    return b;
}

BathSpec BathSpec::pure_loss(double t1_us) {
    BathSpec b;
    b.kappa_half = 1.0 / t1_us;
    b.T_half = 1e-9;
    b.omega_d = units::from_ghz(11.8);
    return b;
}

BathSpec BathSpec::scaled(double s) const {
    BathSpec b = *this;
    b.kappa_half *= s;
    b.kappa_full *= s;
    b.kappa_phi *= s;
    return b;
}

void BathSpec::validate() const {
    if (kappa_half < 0.0 || kappa_full < 0.0 || kappa_phi < 0.0) {
        throw InputError("BathSpec: rates must be non-negative");
    }
    if ((kappa_half > 0.0 && !(T_half > 0.0)) || (kappa_full > 0.0 && !(T_full > 0.0))) {
        throw NonPositiveTemperature("BathSpec: temperature must be positive for an active bath");
    }
    if ((kappa_half > 0.0 || kappa_full > 0.0) && !(omega_d > 0.0)) {
        throw InputError("BathSpec: omega_d must be positive");
    }
}

DetuningNoise DetuningNoise::fitted(double K, int trials, std::uint64_t seed) {
    return {0.03 * K, K / 500.0, trials, seed};
}

std::vector<double> DetuningNoise::draws() const {
    if (trials < 1) throw InputError("DetuningNoise: trials must be >= 1");
    if (!(std >= 0.0)) throw InputError("DetuningNoise: std must be >= 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(trials);
    for (auto& d : out) d = mean + std * normal(rng);
    return out;
}

double bose_einstein(double omega, double T_mK) {
    if (!(T_mK > 0.0)) throw NonPositiveTemperature("bose_einstein: T must be positive");
    if (!(omega > 0.0)) throw InputError("bose_einstein: omega must be positive");
    return 1.0 / std::expm1(units::kThermalFactor * omega / T_mK);
}

std::vector<JumpTerm> build_rwa_dissipators(const BathSpec& bath, Truncation trunc) {
    std::vector<JumpTerm> out;
    if (bath.kappa_half <= 0.0) return out;
    const double n = bose_einstein(0.5 * bath.omega_d, bath.T_half);
    const Operator a = annihilation(trunc);
    out.push_back({a, bath.kappa_half * (1.0 + n), "loss"});
    if (n > 0.0) out.push_back({a.adjoint(), bath.kappa_half * n, "gain"});
    return out;
}

std::vector<JumpTerm> build_nrwa_dissipators(const BathSpec& bath, const SnailParams& snail,
                                             cplx eps2, Truncation trunc) {
    std::vector<JumpTerm> out;
    if (bath.kappa_full <= 0.0) return out;
    if (snail.g3 == 0.0) throw ZeroG3("build_nrwa_dissipators: g3 must be nonzero");
    const double wd = bath.omega_d;
    const double n = bose_einstein(wd, bath.T_full);
    const double c1 = 8.0 * snail.g3 / (3.0 * wd);
    const double c2 = 592.0 * snail.g3 / (9.0 * wd * wd) - 16.0 * snail.g4 / (snail.g3 * wd);
    const CMatrix a = annihilation(trunc).matrix();
    const CMatrix ad = a.adjoint();
    const CMatrix num = ad * a;
    const CMatrix cool = c1 * (a * a) - c2 * eps2 * num;
    const CMatrix heat = c1 * (ad * ad) - c2 * std::conj(eps2) * num;
    out.push_back({Operator(cool), bath.kappa_full * (1.0 + n), "two_photon_cooling"});
    if (n > 0.0) out.push_back({Operator(heat), bath.kappa_full * n, "two_photon_heating"});
    return out;
}

std::vector<JumpTerm> build_dephasing(const BathSpec& bath, Truncation trunc) {
    if (bath.kappa_phi <= 0.0) return {};
    return {{number_operator(trunc), bath.kappa_phi, "dephasing"}};
}

std::vector<JumpTerm> build_full_bath(const BathSpec& bath, const SnailParams& snail, cplx eps2,
                                      Truncation trunc) {
    bath.validate();
    std::vector<JumpTerm> out = build_rwa_dissipators(bath, trunc);
    for (auto& j : build_nrwa_dissipators(bath, snail, eps2, trunc)) out.push_back(std::move(j));
    for (auto& j : build_dephasing(bath, trunc)) out.push_back(std::move(j));
    return out;
}

// --------------------------------------------------------- Hamiltonian

TimeDependentHamiltonian::TimeDependentHamiltonian(Operator h0) : h0_(h0.matrix()) {}

TimeDependentHamiltonian::TimeDependentHamiltonian(Operator h0, std::vector<DriveTerm> terms)
    : h0_(h0.matrix()), terms_(std::move(terms)) {
    for (const auto& term : terms_) {
        require_same_dim(static_cast<int>(term.op.rows()), dim(), "drive term");
        if (!term.coeff) throw InputError("drive term without coefficient function");
    }
}

CMatrix TimeDependentHamiltonian::at(double t) const {
    CMatrix h = h0_;
    for (const auto& term : terms_) {
        const cplx c = term.coeff(t);
        if (c == cplx(0.0)) continue;
        h.noalias() += c * term.op;
        if (term.add_conjugate) h.noalias() += std::conj(c) * term.op.adjoint();
    }
    return h;
}

// ----------------------------------------------------------- evolution

const std::vector<double>& EvolutionResult::series(const std::string& name) const {
    return find_series(observables, name);
}

const std::vector<double>& KetEvolution::series(const std::string& name) const {
    return find_series(observables, name);
}

CMatrix liouvillian(const CMatrix& h, const std::vector<JumpTerm>& jumps) {
    const Eigen::Index n = h.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    auto kron = [](const CMatrix& x, const CMatrix& y) {
        CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
            }
        }
        return out;
    };
    const cplx i(0.0, 1.0);
    // vec(A X B) = (B^T kron A) vec(X)
    CMatrix heff = h;
    for (const auto& j : jumps) heff -= (0.5 * i * j.rate) * (j.op.matrix().adjoint() * j.op.matrix());
    CMatrix l = kron(id, CMatrix(-i * heff)) + kron(CMatrix((i * heff.adjoint()).transpose()), id);
    for (const auto& j : jumps) {
        l += j.rate * kron(j.op.matrix().conjugate(), j.op.matrix());
    }
    return l;
}

namespace {

// Samples observables and invariants of a density matrix into slot k.
struct DensitySampler {
    const std::vector<NamedOperator>& obs;
    EvolutionResult& res;

    void operator()(int k, const CMatrix& rho) const {
        if (!rho.allFinite()) throw NonFiniteState("evolve: non-finite density matrix");
        for (std::size_t o = 0; o < obs.size(); ++o) {
            res.observables[o].second[k] = (obs[o].op.matrix() * rho).trace().real();
        }
        res.max_trace_deviation = std::max(res.max_trace_deviation, trace_dev(rho));
        res.max_hermiticity_error = std::max(res.max_hermiticity_error, herm_err(rho));
    }
};

EvolutionResult evolve_propagator(const DensityMatrix& rho0, const CMatrix& h,
                                  const std::vector<JumpTerm>& jumps,
                                  const std::vector<double>& times,
                                  const std::vector<NamedOperator>& observables) {
    const Eigen::Index n = h.rows();
    EvolutionResult res;
    res.times = times;
    res.observables = ObservableTable(observables, times.size()).series;
    const DensitySampler sample{observables, res};
    const CMatrix l = liouvillian(h, jumps);
    std::map<double, CMatrix> cache;
    CVector v = Eigen::Map<const CVector>(rho0.matrix().data(), n * n);
    CMatrix rho = rho0.matrix();
    sample(0, rho);
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double dt = times[k] - times[k - 1];
        if (dt < 0.0) throw InputError("evolve: sample times must increase");
        if (dt > 0.0) {
            auto it = cache.find(dt);
            if (it == cache.end()) it = cache.emplace(dt, expm(l * dt)).first;
            v = it->second * v;
        }
        rho = Eigen::Map<const CMatrix>(v.data(), n, n);
        sample(static_cast<int>(k), rho);
    }
    res.final_state = DensityMatrix(rho, DensityMatrix::Unchecked{});
    return res;
}

}  // namespace

EvolutionResult evolve(const DensityMatrix& rho0, const TimeDependentHamiltonian& h,
                       const std::vector<JumpTerm>& jumps, const std::vector<double>& times,
                       const std::vector<NamedOperator>& observables, EvolveOptions opts) {
    const int n = rho0.dim();
    require_same_dim(h.dim(), n, "evolve: Hamiltonian");
    check_jumps(jumps, n);
    for (const auto& o : observables) require_same_dim(o.op.dim(), n, "evolve: observable");
    if (times.empty()) throw InputError("evolve: no sample times");

    Integrator method = opts.method;
    if (method == Integrator::automatic) {
        method = (h.is_static() && n <= 30) ? Integrator::propagator : Integrator::rk45;
    }
    if (method == Integrator::propagator) {
        if (!h.is_static()) throw InputError("evolve: propagator needs a static Hamiltonian");
        return evolve_propagator(rho0, h.h0(), jumps, times, observables);
    }

    const cplx i(0.0, 1.0);
    CMatrix damping = CMatrix::Zero(n, n);
    for (const auto& j : jumps) damping += (0.5 * j.rate) * (j.op.matrix().adjoint() * j.op.matrix());
    std::vector<CMatrix> ls;
    std::vector<double> rates;
    for (const auto& j : jumps) {
        if (j.rate == 0.0) continue;
        ls.push_back(j.op.matrix());
        rates.push_back(j.rate);
    }
    const CMatrix heff_static = h.h0() - i * damping;
    CMatrix m(n, n), out(n, n), tmp(n, n);
    auto rhs = [&](double t, const CMatrix& rho) {
        if (h.is_static()) {
            m.noalias() = (-i) * heff_static * rho;
        } else {
            const CMatrix heff = h.at(t) - i * damping;
            m.noalias() = (-i) * heff * rho;
        }
        out = m + m.adjoint();
        for (std::size_t k = 0; k < ls.size(); ++k) {
            tmp.noalias() = ls[k] * rho;
            out.noalias() += rates[k] * tmp * ls[k].adjoint();
        }
        return out;
    };

    EvolutionResult res;
    res.times = times;
    res.observables = ObservableTable(observables, times.size()).series;
    const DensitySampler sample{observables, res};
    CMatrix last;
    integrate_rk45(rho0.matrix(), times, rhs, opts, [&](int k, const CMatrix& rho) {
        sample(k, rho);
        if (k + 1 == static_cast<int>(times.size())) last = rho;
    });
    res.final_state = DensityMatrix(last, DensityMatrix::Unchecked{});
    return res;
}

KetEvolution evolve_ket(const Ket& psi0, const TimeDependentHamiltonian& h,
                        const std::vector<double>& times,
                        const std::vector<NamedOperator>& observables, EvolveOptions opts) {
    const int n = psi0.dim();
    require_same_dim(h.dim(), n, "evolve_ket: Hamiltonian");
    for (const auto& o : observables) require_same_dim(o.op.dim(), n, "evolve_ket: observable");
    if (times.empty()) throw InputError("evolve_ket: no sample times");
    const cplx i(0.0, 1.0);
    CMatrix out(n, 1);
    auto rhs = [&](double t, const CMatrix& psi) {
        if (h.is_static()) {
            out.noalias() = (-i) * h.h0() * psi;
        } else {
            out.noalias() = (-i) * h.at(t) * psi;
        }
        return out;
    };
    KetEvolution res;
    res.times = times;
    res.observables = ObservableTable(observables, times.size()).series;
    CMatrix last;
    integrate_rk45(CMatrix(psi0.amplitudes()), times, rhs, opts, [&](int k, const CMatrix& psi) {
        if (!psi.allFinite()) throw NonFiniteState("evolve_ket: non-finite state");
        for (std::size_t o = 0; o < observables.size(); ++o) {
            res.observables[o].second[k] =
                psi.col(0).dot(observables[o].op.matrix() * psi.col(0)).real();
        }
        if (k + 1 == static_cast<int>(times.size())) last = psi;
    });
    res.final_state = Ket(last.col(0));
    return res;
}

EvolutionResult evolve_static_doubling(const DensityMatrix& rho0, const CMatrix& h,
                                       const std::vector<JumpTerm>& jumps, double dt0,
                                       double t_max, int block_steps,
                                       const std::vector<NamedOperator>& observables) {
    const Eigen::Index n = h.rows();
    require_same_dim(static_cast<int>(n), rho0.dim(), "evolve_static_doubling");
    check_jumps(jumps, static_cast<int>(n));
    if (!(dt0 > 0.0) || !(t_max > 0.0) || block_steps < 1) {
        throw InputError("evolve_static_doubling: dt0, t_max and block_steps must be positive");
    }
    std::vector<double> times{0.0};
    {
        double t = 0.0, dt = dt0;
        while (t < t_max * (1.0 - 1e-12)) {
            for (int s = 0; s < block_steps && t < t_max * (1.0 - 1e-12); ++s) {
                t += dt;
                times.push_back(t);
            }
            dt *= 2.0;
        }
    }
    EvolutionResult res;
    res.times = times;
    res.observables = ObservableTable(observables, times.size()).series;
    const DensitySampler sample{observables, res};

    CMatrix p = expm(liouvillian(h, jumps) * dt0);
    CVector v = Eigen::Map<const CVector>(rho0.matrix().data(), n * n);
    CVector w(n * n);
    CMatrix rho = rho0.matrix();
    sample(0, rho);
    std::size_t k = 1;
    while (k < times.size()) {
        for (int s = 0; s < block_steps && k < times.size(); ++s, ++k) {
            w.noalias() = p * v;
            v.swap(w);
            rho = Eigen::Map<const CMatrix>(v.data(), n, n);
            sample(static_cast<int>(k), rho);
        }
        if (k < times.size()) p = (p * p).eval();
    }
    res.final_state = DensityMatrix(rho, DensityMatrix::Unchecked{});
    return res;
}

// ----------------------------------------------------------- lifetimes

double tc_tradeoff(double T1, double alpha) {
    if (!(alpha > 0.0)) throw InputError("tc_tradeoff: alpha must be positive");
    const double a2 = alpha * alpha;
    const double e = std::exp(-4.0 * a2);
    const double nbar = a2 * (1.0 + e) / (1.0 - e);
    return T1 / (2.0 * nbar);
}

namespace {

double default_dt0(const LifetimeOptions& o) { return o.dt0 > 0.0 ? o.dt0 : o.t_max / 2000.0; }

bool all_rates_zero(const std::vector<JumpTerm>& jumps) {
    return std::all_of(jumps.begin(), jumps.end(), [](const JumpTerm& j) { return j.rate == 0.0; });
}

LifetimeResult finish_lifetime(std::vector<double> times, std::vector<double> signal,
                               bool no_dissipation, bool with_offset) {
    LifetimeResult r;
    r.times = std::move(times);
    r.signal = std::move(signal);
    const double drop = std::abs(r.signal.front() - r.signal.back());
    if (no_dissipation || drop < 1e-9 * std::max(1.0, std::abs(r.signal.front()))) {
        return r;
    }
    r.fit = fit_exponential(r.times, r.signal, with_offset);
    r.tau = r.fit.tau;
    r.tau_stderr = r.fit.tau_stderr;
    return r;
}

}  // namespace

LifetimeResult lifetime_T_alpha(const KerrCatParams& params, const BathSpec& bath,
                                const SnailParams& snail, const DetuningNoise& noise,
                                const LifetimeOptions& opts) {
    if (!(opts.t_max > 0.0)) throw InputError("lifetime_T_alpha: t_max must be positive");
    const std::vector<double> draws = noise.draws();
    const int trials = static_cast<int>(draws.size());
    std::vector<std::vector<double>> signals(trials);
    std::vector<double> times;
    bool no_dissipation = true;
    std::vector<char> trial_quiet(trials, 1);
    std::vector<std::vector<double>> trial_times(trials);

    parallel_for(trials, [&](int k) {
        KerrCatParams p = params;
        p.detuning += draws[k];
        const Truncation trunc = opts.dim > 0 ? Truncation(opts.dim) : kerr_cat_truncation(p);
        const CatFrame frame = cat_frame(p, trunc);
        const auto jumps = build_full_bath(bath, snail, p.eps2, trunc);
        trial_quiet[k] = all_rates_zero(jumps) ? 1 : 0;
        const auto res = evolve_static_doubling(
            DensityMatrix::pure(frame.plus_z), kerr_cat_hamiltonian(p, trunc).matrix(), jumps,
            default_dt0(opts), opts.t_max, opts.block_steps, {{"Z", frame.z}});
        signals[k] = res.series("Z");
        trial_times[k] = res.times;
    });
    times = trial_times[0];
    std::vector<double> mean(times.size(), 0.0);
    for (int k = 0; k < trials; ++k) {
        no_dissipation = no_dissipation && trial_quiet[k];
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += signals[k][i];
    }
    for (double& m : mean) m /= trials;
    return finish_lifetime(std::move(times), std::move(mean), no_dissipation, false);
}

LifetimeResult lifetime_T_C(const KerrCatParams& params, const BathSpec& bath,
                            const SnailParams& snail, const LifetimeOptions& opts) {
    if (!(opts.t_max > 0.0)) throw InputError("lifetime_T_C: t_max must be positive");
    const Truncation trunc = opts.dim > 0 ? Truncation(opts.dim) : kerr_cat_truncation(params);
    const CatFrame frame = cat_frame(params, trunc);
    const auto jumps = build_full_bath(bath, snail, params.eps2, trunc);
    const auto res = evolve_static_doubling(
        DensityMatrix::pure(frame.c_plus), kerr_cat_hamiltonian(params, trunc).matrix(), jumps,
        default_dt0(opts), opts.t_max, opts.block_steps, {{"X", frame.x}});
    return finish_lifetime(res.times, res.series("X"), all_rates_zero(jumps), true);
}

std::vector<int> local_maxima(const std::vector<double>& v) {
    std::vector<int> out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] > v[i + 1]) out.push_back(static_cast<int>(i));
    }
    return out;
}

DetuningSweep detuning_lifetime_sweep(const KerrCatParams& params, const BathSpec& bath,
                                      const SnailParams& snail, const DetuningNoise& noise,
                                      const std::vector<double>& delta_grid,
                                      const LifetimeOptions& opts) {
    DetuningSweep out;
    out.detuning = delta_grid;
    out.T_alpha.assign(delta_grid.size(), 0.0);
    // One truncation for the whole grid, sized for the largest detuning.
    LifetimeOptions o = opts;
    if (o.dim == 0) {
        KerrCatParams widest = params;
        for (double d : delta_grid) widest.detuning = std::max(widest.detuning, params.detuning + d);
        widest.detuning += std::abs(noise.mean) + 5.0 * noise.std;
        o.dim = kerr_cat_truncation(widest).dim();
    }
    parallel_for(static_cast<int>(delta_grid.size()), [&](int k) {
        KerrCatParams p = params;
        p.detuning += delta_grid[k];
        out.T_alpha[k] = lifetime_T_alpha(p, bath, snail, noise, o).tau;
    });
    out.local_maxima = local_maxima(out.T_alpha);
    return out;
}

void write_series_csv(std::ostream& os, const std::vector<double>& times,
                      const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    os << "t_us";
    for (const auto& [name, values] : series) os << ',' << name;
    os << '\n';
    char buf[64];
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", times[i]);
        os << buf;
        for (const auto& [name, values] : series) {
            std::snprintf(buf, sizeof buf, "%.12g", values[i]);
            os << ',' << buf;
        }
        os << '\n';
    }
}

}  // namespace kerrcat
