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


#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "kerrcat/control.hpp"
#include "kerrcat/errors.hpp"
#include "kerrcat/units.hpp"

namespace kerrcat {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(PhaseModulationPulse, EndpointsAndContinuity) {
    for (double tg : {0.1, 0.32, 0.77}) {
        const XGateSpec s{tg, -8.2 * 7.54, 0.0};
        EXPECT_EQ(phase_modulation_pulse(s, 0.0), 0.0);
        EXPECT_NEAR(phase_modulation_pulse(s, tg / 3.0), -s.delta0, 1e-12 * std::abs(s.delta0));
        const double eps = 1e-13 * tg;
        EXPECT_LT(std::abs(phase_modulation_pulse(s, tg / 3.0 - eps) -
                           phase_modulation_pulse(s, tg / 3.0 + eps)),
                  1e-9 * std::abs(s.delta0));
        EXPECT_NEAR(phase_modulation_pulse(s, tg), 0.0, 1e-12 * std::abs(s.delta0));
        EXPECT_THROW(phase_modulation_pulse(s, 1.01 * tg), OutOfWindow);
        EXPECT_THROW(phase_modulation_pulse(s, -0.01), OutOfWindow);
    }
}

TEST(PhaseModulationPulse, DerivativeMatchesFiniteDifference) {
    const XGateSpec s{0.32, -60.0, 0.0};
    for (double t : {0.01, 0.05, 0.1, 0.2, 0.25, 0.3}) {
        const double h = 1e-6;
        const double fd = (phase_modulation_pulse(s, t + h) - phase_modulation_pulse(s, t - h)) / (2 * h);
        EXPECT_NEAR(phase_modulation_derivative(s, t), fd, 1e-5 * std::abs(s.delta0) / s.Tg) << t;
    }
}

TEST(EffectiveDetuning, ZeroDepthStartAndNetPhase) {
    const XGateSpec off{0.32, 0.0, 0.0};
    for (double t : {0.0, 0.1, 0.32}) EXPECT_EQ(effective_detuning(off, t), 0.0);
    const XGateSpec s{0.32, -61.8, 0.0};
    EXPECT_EQ(effective_detuning(s, 0.0), 0.0);
    // Composite Simpson rule on a fine grid; the exact integral is zero.
    const int n = 20000;
    const double h = s.Tg / n;
    double acc = effective_detuning(s, 0.0) + effective_detuning(s, s.Tg);
    for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * effective_detuning(s, k * h);
    EXPECT_NEAR(acc * h / 3.0, 0.0, 1e-6 * std::abs(s.delta0) * s.Tg);
}

TEST(PulseScheduleTest, SampledAtOneNanosecond) {
    const XGateSpec s{0.32, -61.8, 0.0};
    const PulseSchedule p = x_gate_schedule(s);
    EXPECT_EQ(p.detuning.size(), 320u);
    EXPECT_NEAR(p.duration(), 0.32, 1e-12);
    EXPECT_DOUBLE_EQ(p.detuning[100], effective_detuning(s, 0.1));
    PulseSchedule bad = p;
    bad.sample_period = 0.0;
    EXPECT_THROW(bad.validate(), InputError);
}

TEST(XGate, ZeroDepthKeepsCoherentState) {
    const KerrCatParams p = device_kerr_cat(4.0);
    const Truncation t = kerr_cat_truncation(p);
    const Ket alpha = coherent_state(p.alpha(), t);
    const auto r = simulate_x_gate({0.32, 0.0, 0.0}, p, t, DensityMatrix::pure(alpha));
    EXPECT_GT(fidelity(alpha, r.final_state), 1.0 - 1e-6);
}

TEST(XGate, TwoPulsesFlipZAtCalibrationPoint) {
    const KerrCatParams p = device_kerr_cat(4.0);
    const Truncation t = kerr_cat_truncation(p);
    const CatFrame f = cat_frame(p, t);
    const XGateSpec spec{0.32, -8.2 * p.K, 0.0};
    const auto r = simulate_x_gate(spec, p, t, DensityMatrix::pure(f.plus_z), {.repetitions = 2});
    EXPECT_GT(r.minus_z_population, 0.9);
    EXPECT_LT(std::abs(r.bloch.back().z - (-r.bloch.front().z)), 0.1);
    EXPECT_NEAR(x_gate_transfer(spec, p, t), r.minus_z_population, 1e-6);
}

TEST(XGate, ClosedDensityPathStaysPure) {
    const KerrCatParams p = device_kerr_cat(2.0);
    const Truncation t = kerr_cat_truncation(p);
    const CatFrame f = cat_frame(p, t);
    CMatrix rho = f.plus_z.amplitudes() * f.plus_z.amplitudes().adjoint();
    // Mix in an infinitesimal amount to force the density-matrix path.
    const std::vector<JumpTerm> none{{annihilation(t), 0.0, ""}};
    const auto r = simulate_x_gate({0.2, -5.0 * p.K, 0.0}, p, t, DensityMatrix(rho),
                                   {.jumps = &none, .samples_per_gate = 10});
    EXPECT_GT(r.min_purity, 1.0 - 1e-7);
}

TEST(XGate, TransferInvariantUnderCommonScaling) {
    const KerrCatParams p = device_kerr_cat(4.0);
    KerrCatParams q = p;
    const double s = 1.7;
    q.K *= s;
    q.eps2 *= s;
    const Truncation t = kerr_cat_truncation(p);
    const double base = x_gate_transfer({0.3, -7.0 * p.K, 0.0}, p, t);
    const double scaled = x_gate_transfer({0.3 / s, -7.0 * q.K, 0.0}, q, t);
    EXPECT_NEAR(base, scaled, 1e-6);
}

TEST(Chevron, LobeCountingAndCsv) {
    ChevronMap m{{0.1, 0.2, 0.3}, {-2.0, -1.0, 0.0}, {0.9, 0.1, 0.8, 0.2, 0.1, 0.9, 0.1, 0.1, 0.95}};
    EXPECT_EQ(count_lobes(m), 2);
    EXPECT_EQ(count_lobes(m, 0.05), 1);
    std::ostringstream os;
    write_chevron_csv(os, m);
    EXPECT_EQ(os.str().substr(0, 32), "Tg_us,delta0_over_K,transfer_pro");
}

TEST(FreeFlight, DurationAndYurkeStoler) {
    const double K = units::from_mhz(1.2);
    EXPECT_NEAR(kerr_free_flight_duration(K), 0.2083, 1e-4);
    const Truncation t(40);
    const auto vac = kerr_free_flight_gate(K, t, fock_state(0, t));
    EXPECT_GT(fidelity(fock_state(0, t), vac.final_state), 1.0 - 1e-12);

    const auto ev = kerr_free_flight_gate(K, t, coherent_state(2.0, t));
    const std::vector<cplx> pts{{0.0, 2.0}, {0.0, -2.0}, {2.0, 0.0}};
    const auto w = wigner(ev.final_state, pts);
    EXPECT_NEAR(w[0], w[1], 1e-6);
    EXPECT_NEAR(w[0], 1.0 / kPi, 1e-3);
    EXPECT_LT(std::abs(w[2]), 1e-3);
}

TEST(ZRotation, RecoversCatSizeAndSuppressesQuadrature) {
    const KerrCatParams p = device_kerr_cat(4.0);
    const Truncation t = kerr_cat_truncation(p);
    const CatFrame f = cat_frame(p, t);
    const double gap = 4.0 * p.K * 4.0;
    const double oz = 0.02 * gap;
    const double period = 2.0 * kPi / (4.0 * oz);
    const auto r0 = simulate_z_rotation(p, oz, 0.0, 2.0 * period, t, f.c_plus);
    EXPECT_TRUE(r0.warnings.empty());
    const double wc = extract_rabi_rate(r0.times, r0.bloch);
    EXPECT_NEAR(cat_size_from_rabi(wc, oz), 4.0, 0.2);
    const auto r90 = simulate_z_rotation(p, oz, kPi / 2.0, 2.0 * period, t, f.c_plus);
    EXPECT_LT(rabi_contrast(r90.bloch), 0.01 * rabi_contrast(r0.bloch));

    const auto still = simulate_z_rotation(p, 0.0, 0.0, period, t, f.c_plus);
    EXPECT_NEAR(still.bloch.back().x, 1.0, 1e-8);
    const auto strong = simulate_z_rotation(p, 0.2 * gap, 0.0, 0.05, t, f.c_plus);
    EXPECT_FALSE(strong.warnings.empty());
}

TEST(ZRotation, SplittingLinearInDrive) {
    const KerrCatParams p = device_kerr_cat(4.0);
    const Truncation t = kerr_cat_truncation(p);
    const CatFrame f = cat_frame(p, t);
    const double gap = 4.0 * p.K * 4.0;
    double ratio[2];
    const double amps[2] = {0.01 * gap, 0.05 * gap};
    for (int k = 0; k < 2; ++k) {
        const double period = 2.0 * kPi / (4.0 * amps[k]);
        const auto r = simulate_z_rotation(p, amps[k], 0.0, period, t, f.c_plus);
        ratio[k] = extract_rabi_rate(r.times, r.bloch) / amps[k];
    }
    EXPECT_NEAR(ratio[1] / ratio[0], 1.0, 0.01);
}

TEST(CatSizeFromRabi, Formula) {
    EXPECT_DOUBLE_EQ(cat_size_from_rabi(4.0, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(cat_size_from_rabi(0.0, 1.0), 0.0);
    EXPECT_THROW(cat_size_from_rabi(1.0, 0.0), ZeroDrive);
}

TEST(Ramp, ProfileShape) {
    const cplx e = 30.0;
    EXPECT_EQ(ramp_profile(e, 3.0, RampShape::tanh, 0.0), cplx(0.0));
    EXPECT_NEAR(std::abs(ramp_profile(e, 3.0, RampShape::tanh, 3.0) - e), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(ramp_profile(e, 3.0, RampShape::tanh, 1.5) - 0.5 * e), 0.0, 1e-12);
    EXPECT_NEAR(ramp_profile(e, 3.0, RampShape::linear, 1.0).real(), 10.0, 1e-12);
    EXPECT_THROW(ramp_profile(e, 0.0, RampShape::tanh, 1.0), InputError);
}

TEST(Ramp, AdiabaticAndInstantaneous) {
    const KerrCatParams p = device_kerr_cat(4.0);
    const Truncation t = kerr_cat_truncation(p);
    const auto slow = stabilization_ramp(p.eps2, 3.0, RampShape::tanh, p, fock_state(0, t), t);
    EXPECT_GT(slow.fidelity_c_plus, 0.99);
    const auto& parity = slow.evolution.series("parity");
    for (double v : parity) EXPECT_NEAR(v, 1.0, 1e-8);

    const auto fast = stabilization_ramp(p.eps2, 1e-5, RampShape::tanh, p, fock_state(0, t), t);
    const double overlap = 2.0 * std::exp(-4.0) / (1.0 + std::exp(-8.0));
    EXPECT_NEAR(fast.fidelity_c_plus, overlap, 2e-3);
}

TEST(FockPrep, PhaseControlsWell) {
    const KerrCatParams p = device_kerr_cat(4.0);
    const Truncation t = kerr_cat_truncation(p);
    double best = 0.0, best_phase = 0.0;
    for (int k = 0; k < 8; ++k) {
        const double ph = 2.0 * kPi * k / 8;
        const auto r = fock_to_cat_prep(ph, p, 3.0, t);
        if (r.p_plus_alpha > best) {
            best = r.p_plus_alpha;
            best_phase = ph;
        }
    }
    EXPECT_GT(best, 0.95);
    const auto flipped = fock_to_cat_prep(best_phase + kPi, p, 3.0, t);
    EXPECT_GT(flipped.p_minus_alpha, 0.95);
    const auto quad = fock_to_cat_prep(best_phase + kPi / 2.0, p, 3.0, t);
    EXPECT_NEAR(quad.p_plus_alpha, 0.5, 0.05);
}

}  // namespace
}  // namespace kerrcat
