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


#include "kerrcat/control.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "kerrcat/errors.hpp"
#include "kerrcat/parallel.hpp"
#include "kerrcat/units.hpp"

namespace kerrcat {

namespace {

using units::kPi;

double checked_time(const XGateSpec& s, double t) {
    if (!(s.Tg > 0.0)) throw InputError("XGateSpec: Tg must be positive");
    const double slack = 1e-12 * s.Tg;
    if (t < -slack || t > s.Tg + slack || !std::isfinite(t)) {
        throw OutOfWindow("phase modulation evaluated outside [0, Tg]");
    }
    return std::clamp(t, 0.0, s.Tg);
}

double gauss(const XGateSpec& s, double t) {
    const double sigma = s.width();
    const double u = t - s.Tg / 3.0;
    return std::exp(-u * u / (2.0 * sigma * sigma));
}

std::vector<double> uniform_times(double t_end, int samples) {
    std::vector<double> v(samples + 1);
    for (int k = 0; k <= samples; ++k) v[k] = t_end * k / samples;
    v.back() = t_end;
    return v;
}

Ket dominant_ket(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
    return Ket(es.eigenvectors().col(rho.dim() - 1));
}

TimeDependentHamiltonian gate_hamiltonian(const XGateSpec& spec, const KerrCatParams& params,
                                          Truncation trunc) {
    const Operator h0 = kerr_cat_hamiltonian(params, trunc);
    std::vector<DriveTerm> terms{{number_operator(trunc).matrix(),
                                  [spec](double t) { return cplx(effective_detuning(spec, t)); },
                                  false}};
    return {h0, std::move(terms)};
}

}  // namespace

void PulseSchedule::validate() const {
    if (!(sample_period > 0.0)) throw InputError("PulseSchedule: sample_period must be positive");
    if (detuning.size() != drive.size()) throw DimMismatch("PulseSchedule: column lengths differ");
    for (std::size_t k = 0; k < detuning.size(); ++k) {
        if (!std::isfinite(detuning[k]) || !std::isfinite(drive[k].real()) ||
            !std::isfinite(drive[k].imag())) {
            throw InputError("PulseSchedule: non-finite sample");
        }
    }
}

double phase_modulation_pulse(const XGateSpec& s, double t) {
    t = checked_time(s, t);
    if (t <= s.Tg / 3.0) return -s.delta0 * std::sin(3.0 * kPi * t / (2.0 * s.Tg));
    const double f = gauss(s, t);
    const double fT = gauss(s, s.Tg);
    return -s.delta0 * f * (f - fT) / (1.0 - fT);
}

double phase_modulation_derivative(const XGateSpec& s, double t) {
    t = checked_time(s, t);
    const double w = 3.0 * kPi / (2.0 * s.Tg);
    if (t <= s.Tg / 3.0) return -s.delta0 * w * std::cos(w * t);
    const double sigma = s.width();
    const double f = gauss(s, t);
    const double fT = gauss(s, s.Tg);
    const double df = -(t - s.Tg / 3.0) / (sigma * sigma) * f;
    return -s.delta0 * df * (2.0 * f - fT) / (1.0 - fT);
}

double effective_detuning(const XGateSpec& s, double t) {
    return -0.5 * (phase_modulation_pulse(s, t) + t * phase_modulation_derivative(s, t));
}

PulseSchedule x_gate_schedule(const XGateSpec& spec) {
    PulseSchedule p;
    const int n = static_cast<int>(std::ceil(spec.Tg / p.sample_period - 1e-9));
    for (int k = 0; k < n; ++k) {
        p.detuning.push_back(effective_detuning(spec, std::min(k * p.sample_period, spec.Tg)));
        p.drive.emplace_back(0.0);
    }
    p.validate();
    return p;
}

GateResult simulate_x_gate(const XGateSpec& spec, const KerrCatParams& params, Truncation trunc,
                           const DensityMatrix& rho0, GateOptions opts) {
    if (opts.repetitions < 1) throw InputError("simulate_x_gate: repetitions must be >= 1");
    require_same_dim(rho0.dim(), trunc.dim(), "simulate_x_gate");
    const CatFrame frame = cat_frame(params, trunc);
    const TimeDependentHamiltonian h = gate_hamiltonian(spec, params, trunc);
    const std::vector<NamedOperator> obs{{"X", frame.x}, {"Y", frame.y}, {"Z", frame.z}};
    const std::vector<double> local = uniform_times(spec.Tg, opts.samples_per_gate);

    GateResult out;
    const bool closed = opts.jumps == nullptr || opts.jumps->empty();
    const bool pure = closed && std::abs(rho0.purity() - 1.0) < 1e-12;
    DensityMatrix rho = rho0;
    Ket psi = pure ? dominant_ket(rho0) : Ket(CVector::Zero(trunc.dim()));
    for (int r = 0; r < opts.repetitions; ++r) {
        const double offset = r * spec.Tg;
        std::vector<std::pair<std::string, std::vector<double>>> series;
        if (pure) {
            const KetEvolution ev = evolve_ket(psi, h, local, obs);
            series = ev.observables;
            psi = ev.final_state;
        } else {
            static const std::vector<JumpTerm> kNone;
            const EvolutionResult ev =
                evolve(rho, h, closed ? kNone : *opts.jumps, local, obs, {.method = Integrator::rk45});
            series = ev.observables;
            rho = ev.final_state;
            out.min_purity = std::min(out.min_purity, rho.purity());
        }
        for (std::size_t k = (r == 0 ? 0 : 1); k < local.size(); ++k) {
            out.times.push_back(offset + local[k]);
            out.bloch.push_back({series[0].second[k], series[1].second[k], series[2].second[k]});
        }
    }
    if (pure) {
        rho = DensityMatrix::pure(psi);
        out.min_purity = 1.0;
    }
    out.final_state = rho;
    out.minus_z_population = fidelity(frame.minus_z, rho);
    out.plus_z_population = fidelity(frame.plus_z, rho);
    return out;
}

double x_gate_transfer(const XGateSpec& spec, const KerrCatParams& params, Truncation trunc) {
    const CatFrame frame = cat_frame(params, trunc);
    const TimeDependentHamiltonian h = gate_hamiltonian(spec, params, trunc);
    Ket psi = frame.plus_z;
    for (int r = 0; r < 2; ++r) psi = evolve_ket(psi, h, {0.0, spec.Tg}, {}).final_state;
    return fidelity(frame.minus_z, psi);
}

ChevronMap x_gate_chevron(const KerrCatParams& params, Truncation trunc,
                          const std::vector<double>& Tg, const std::vector<double>& delta0_over_K) {
    ChevronMap map{Tg, delta0_over_K, std::vector<double>(Tg.size() * delta0_over_K.size(), 0.0)};
    const int nd = static_cast<int>(delta0_over_K.size());
    parallel_for(static_cast<int>(map.transfer.size()), [&](int idx) {
        const XGateSpec spec{Tg[idx / nd], delta0_over_K[idx % nd] * params.K, 0.0};
        map.transfer[idx] = x_gate_transfer(spec, params, trunc);
    });
    return map;
}

int count_lobes(const ChevronMap& map, double threshold) {
    const int ni = static_cast<int>(map.Tg.size());
    const int nj = static_cast<int>(map.delta0_over_K.size());
    std::vector<int> label(ni * nj, -1);
    int lobes = 0;
    std::vector<int> stack;
    for (int start = 0; start < ni * nj; ++start) {
        if (label[start] >= 0 || map.transfer[start] <= threshold) continue;
        stack.push_back(start);
        label[start] = lobes;
        while (!stack.empty()) {
            const int c = stack.back();
            stack.pop_back();
            const int i = c / nj;
            const int j = c % nj;
            const int nbr[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
            for (const auto& n : nbr) {
                if (n[0] < 0 || n[0] >= ni || n[1] < 0 || n[1] >= nj) continue;
                const int q = n[0] * nj + n[1];
                if (label[q] < 0 && map.transfer[q] > threshold) {
                    label[q] = lobes;
                    stack.push_back(q);
                }
            }
        }
        ++lobes;
    }
    return lobes;
}

void write_chevron_csv(std::ostream& os, const ChevronMap& map) {
    os << "Tg_us,delta0_over_K,transfer_prob\n";
    char buf[128];
    for (std::size_t i = 0; i < map.Tg.size(); ++i) {
        for (std::size_t j = 0; j < map.delta0_over_K.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", map.Tg[i], map.delta0_over_K[j],
                          map.at(i, j));
            os << buf;
        }
    }
}

double kerr_free_flight_duration(double K) {
    if (!(K > 0.0)) throw InputError("kerr_free_flight: K must be positive");
    return kPi / (2.0 * K);
}

KetEvolution kerr_free_flight_gate(double K, Truncation trunc, const Ket& psi0) {
    KerrCatParams p;
    p.K = K;
    const double T = kerr_free_flight_duration(K);
    return evolve_ket(psi0, kerr_cat_hamiltonian(p, trunc), uniform_times(T, 50),
                      {{"n", number_operator(trunc)}, {"parity", parity_operator(trunc)}});
}

ZRotationResult simulate_z_rotation(const KerrCatParams& params, double omega_z, double theta_z,
                                    double duration, Truncation trunc, const Ket& psi0, int samples) {
    if (!(duration > 0.0)) throw InputError("simulate_z_rotation: duration must be positive");
    ZRotationResult out;
    const double gap = 4.0 * params.K * params.cat_size();
    if (std::abs(omega_z) > 0.1 * gap) {
        out.warnings.push_back("drive amplitude exceeds 10% of the cat gap 4K|alpha|^2");
    }
    const CatFrame frame = cat_frame(params, trunc);
    const cplx c = 0.5 * omega_z * std::polar(1.0, theta_z);
    // The drive is static in the rotating frame, so it joins h0.
    const CMatrix a = annihilation(trunc).matrix();
    const CMatrix h = kerr_cat_hamiltonian(params, trunc).matrix() + c * a.adjoint() + std::conj(c) * a;
    const std::vector<NamedOperator> obs{{"X", frame.x}, {"Y", frame.y}, {"Z", frame.z}};
    const KetEvolution ev = evolve_ket(psi0, Operator((0.5 * (h + h.adjoint())).eval(), true),
                                       uniform_times(duration, samples), obs);
    out.times = ev.times;
    for (std::size_t k = 0; k < ev.times.size(); ++k) {
        out.bloch.push_back({ev.observables[0].second[k], ev.observables[1].second[k],
                             ev.observables[2].second[k]});
    }
    out.final_state = ev.final_state;
    return out;
}

double extract_rabi_rate(const std::vector<double>& times, const std::vector<Bloch>& bloch) {
    if (times.size() != bloch.size() || times.size() < 3) {
        throw InputError("extract_rabi_rate: need at least 3 matching samples");
    }
    std::vector<double> phi(times.size());
    double prev = 0.0;
    double shift = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double raw = std::atan2(bloch[k].y, bloch[k].x);
        if (k > 0) {
            double d = raw - prev;
            if (d > kPi) shift -= 2.0 * kPi;
            if (d < -kPi) shift += 2.0 * kPi;
        }
        prev = raw;
        phi[k] = raw + shift;
    }
    const double n = static_cast<double>(times.size());
    double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        st += times[k];
        sp += phi[k];
        stt += times[k] * times[k];
        stp += times[k] * phi[k];
    }
    return std::abs((n * stp - st * sp) / (n * stt - st * st));
}

double rabi_contrast(const std::vector<Bloch>& bloch) {
    if (bloch.empty()) return 0.0;
    double lo = bloch[0].x, hi = bloch[0].x;
    for (const auto& b : bloch) {
        lo = std::min(lo, b.x);
        hi = std::max(hi, b.x);
    }
    return 0.5 * (hi - lo);
}

double cat_size_from_rabi(double omega_c, double omega_z) {
    if (omega_z == 0.0) throw ZeroDrive("cat_size_from_rabi: omega_z must be nonzero");
    if (omega_z < 0.0) throw InputError("cat_size_from_rabi: omega_z must be positive");
    const double r = omega_c / (2.0 * omega_z);
    return r * r;
}

cplx ramp_profile(cplx eps2_target, double tau, RampShape shape, double t) {
    if (!(tau > 0.0)) throw InputError("ramp: tau_ramp must be positive");
    if (t >= tau) return eps2_target;
    if (t <= 0.0) return 0.0;
    const double u = t / tau;
    if (shape == RampShape::linear) return eps2_target * u;
    // Sigmoid (1 + tanh(k(2u - 1)))/2 sits at 99.9% for u = 1; shift and
    // rescale so the profile runs exactly from 0 to 1.
    static const double k = std::atanh(0.998);
    const double s0 = 0.5 * (1.0 + std::tanh(-k));
    const double s = 0.5 * (1.0 + std::tanh(k * (2.0 * u - 1.0)));
    return eps2_target * ((s - s0) / (1.0 - 2.0 * s0));
}

RampResult stabilization_ramp(cplx eps2_target, double tau_ramp, RampShape shape,
                              const KerrCatParams& params, const Ket& psi0, Truncation trunc) {
    if (!(tau_ramp > 0.0)) throw InputError("stabilization_ramp: tau_ramp must be positive");
    KerrCatParams target = params;
    target.eps2 = eps2_target;
    KerrCatParams bare = params;
    bare.eps2 = 0.0;
    const CMatrix ad = creation(trunc).matrix();
    std::vector<DriveTerm> terms{{ad * ad,
                                  [=](double t) { return ramp_profile(eps2_target, tau_ramp, shape, t); },
                                  true}};
    const TimeDependentHamiltonian h(kerr_cat_hamiltonian(bare, trunc), std::move(terms));
    RampResult out;
    out.evolution = evolve_ket(psi0, h, uniform_times(tau_ramp, 100),
                               {{"n", number_operator(trunc)}, {"parity", parity_operator(trunc)}});
    const CatFrame frame = cat_frame(target, trunc);
    const Ket& fin = out.evolution.final_state;
    out.fidelity_c_plus = fidelity(frame.c_plus, fin);
    out.fidelity_c_minus = fidelity(frame.c_minus, fin);
    out.p_plus_alpha = fidelity(frame.plus_z, fin);
    out.p_minus_alpha = fidelity(frame.minus_z, fin);
    return out;
}

FockPrepResult fock_to_cat_prep(double phase, const KerrCatParams& params, double tau_ramp,
                                Truncation trunc) {
    CVector v = CVector::Zero(trunc.dim());
    v(0) = 1.0 / std::sqrt(2.0);
    v(1) = cplx(0.0, -1.0) * std::polar(1.0 / std::sqrt(2.0), phase);
    const RampResult r =
        stabilization_ramp(params.eps2, tau_ramp, RampShape::tanh, params, Ket(v), trunc);
    return {phase, r.p_plus_alpha, r.p_minus_alpha};
}

}  // namespace kerrcat
