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


#ifndef KERRCAT_CONTROL_HPP
#define KERRCAT_CONTROL_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "kerrcat/dynamics.hpp"
#include "kerrcat/model.hpp"

namespace kerrcat {

/// Drive envelopes sampled on a uniform grid (default 1 ns).
struct PulseSchedule {
    double sample_period = 1e-3;
    std::vector<double> detuning;
    std::vector<cplx> drive;

    double duration() const { return sample_period * static_cast<double>(detuning.size()); }
    void validate() const;
};

struct XGateSpec {
    double Tg = 0.0;
    double delta0 = 0.0;
    /// 0 selects Tg / 4.
    double sigma = 0.0;

    double width() const { return sigma > 0.0 ? sigma : Tg / 4.0; }
};

/// delta_d(t): -delta0 sin(3 pi t / 2Tg) up to Tg/3, then the truncated
/// Gaussian tail -delta0 f (f - f(Tg)) / (1 - f(Tg)). Throws OutOfWindow.
double phase_modulation_pulse(const XGateSpec& spec, double t);
/// d delta_d / dt, analytic on both branches.
double phase_modulation_derivative(const XGateSpec& spec, double t);
/// -(delta_d + t d delta_d/dt) / 2
double effective_detuning(const XGateSpec& spec, double t);

/// Effective detuning sampled at 1 ns (drive column zero).
PulseSchedule x_gate_schedule(const XGateSpec& spec);

struct GateResult {
    std::vector<double> times;
    std::vector<Bloch> bloch;
    DensityMatrix final_state{CMatrix::Identity(1, 1), DensityMatrix::Unchecked{}};
    double min_purity = 1.0;
    /// Population of |-Z> at the end.
    double minus_z_population = 0.0;
    double plus_z_population = 0.0;
};

struct GateOptions {
    /// Number of back-to-back pulses.
    int repetitions = 1;
    /// Optional bath; closed-system evolution when null.
    const std::vector<JumpTerm>* jumps = nullptr;
    int samples_per_gate = 50;
};

/// H_KC + effective_detuning(t) a+ a, repeated back to back.
GateResult simulate_x_gate(const XGateSpec& spec, const KerrCatParams& params, Truncation trunc,
                           const DensityMatrix& rho0, GateOptions opts = {});

/// Population transferred |+Z> -> |-Z> by two consecutive pulses.
double x_gate_transfer(const XGateSpec& spec, const KerrCatParams& params, Truncation trunc);

struct ChevronMap {
    std::vector<double> Tg;
    std::vector<double> delta0_over_K;
    /// transfer[i * delta0_over_K.size() + j] for Tg[i], delta0_over_K[j].
    std::vector<double> transfer;

    double at(std::size_t i, std::size_t j) const { return transfer[i * delta0_over_K.size() + j]; }
};

ChevronMap x_gate_chevron(const KerrCatParams& params, Truncation trunc,
                          const std::vector<double>& Tg, const std::vector<double>& delta0_over_K);

/// Default lobe threshold on the transfer probability.
inline constexpr double kLobeThreshold = 0.5;

/// Number of 4-connected regions with transfer above threshold.
int count_lobes(const ChevronMap& map, double threshold = kLobeThreshold);

/// CSV "Tg_us,delta0_over_K,transfer_prob".
void write_chevron_csv(std::ostream& os, const ChevronMap& map);

/// Free Kerr evolution under -K a+^2 a^2 for pi / 2K.
double kerr_free_flight_duration(double K);
KetEvolution kerr_free_flight_gate(double K, Truncation trunc, const Ket& psi0);

struct ZRotationResult {
    std::vector<double> times;
    std::vector<Bloch> bloch;
    Ket final_state{CVector::Zero(1)};
    std::vector<std::string> warnings;
};

/// H_KC + (omega_z e^{i theta_z} / 2) a+ + h.c., closed system. Warns when
/// |omega_z| exceeds 10% of the cat gap.
ZRotationResult simulate_z_rotation(const KerrCatParams& params, double omega_z, double theta_z,
                                    double duration, Truncation trunc, const Ket& psi0,
                                    int samples = 200);

/// |d phi/dt| of phi = unwrap(atan2(y, x)), by least squares.
double extract_rabi_rate(const std::vector<double>& times, const std::vector<Bloch>& bloch);

/// (max - min) / 2 of the X component.
double rabi_contrast(const std::vector<Bloch>& bloch);

/// alpha^2 = (omega_c / 2 omega_z)^2. Throws ZeroDrive when omega_z = 0.
double cat_size_from_rabi(double omega_c, double omega_z);

enum class RampShape { linear, tanh };

struct RampResult {
    KetEvolution evolution;
    double fidelity_c_plus = 0.0;
    double fidelity_c_minus = 0.0;
    double p_plus_alpha = 0.0;
    double p_minus_alpha = 0.0;
};

/// eps2(t) for the ramp: linear, or a tanh sigmoid centred at tau_ramp/2
/// (99.9% of the target at tau_ramp before normalization) rescaled to run
/// exactly from 0 to eps2.
cplx ramp_profile(cplx eps2_target, double tau_ramp, RampShape shape, double t);

/// Closed-system ramp of the two-photon drive from 0 to eps2_target over
/// tau_ramp, starting from psi0 (K and detuning taken from params).
RampResult stabilization_ramp(cplx eps2_target, double tau_ramp, RampShape shape,
                              const KerrCatParams& params, const Ket& psi0, Truncation trunc);

struct FockPrepResult {
    double phase = 0.0;
    double p_plus_alpha = 0.0;
    double p_minus_alpha = 0.0;
};

/// X(pi/2) about the axis at angle phase in the {|0>, |1>} subspace, then a
/// tanh ramp to params.eps2; reports |+Z> and |-Z> populations.
FockPrepResult fock_to_cat_prep(double phase, const KerrCatParams& params, double tau_ramp,
                                Truncation trunc);

}  // namespace kerrcat

#endif  // KERRCAT_CONTROL_HPP
