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


// Lindblad master-equation integration, bath models and lifetime extraction.

#ifndef KERRCAT_DYNAMICS_HPP
#define KERRCAT_DYNAMICS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "kerrcat/fit.hpp"
#include "kerrcat/fock.hpp"
#include "kerrcat/model.hpp"

namespace kerrcat {

/// Dissipator rate * D[op]. Rates are in 1/us.
struct JumpTerm {
    Operator op;
    double rate = 0.0;
    std::string label;
};

/// Thermal baths at the half-pump (single photon) and pump (two photon)
/// frequencies plus white dephasing. Rates in 1/us, temperatures in mK.
struct BathSpec {
    double kappa_half = 0.0;
    double T_half = 0.0;
    double kappa_full = 0.0;
    double T_full = 0.0;
    double kappa_phi = 0.0;
    /// Pump frequency omega_d in rad/us; the single-photon bath sits at omega_d/2.
    double omega_d = 0.0;

    /// kappa_half = 1/38.5 us, T_half = 73.5 mK, kappa_full = 7/us,
    /// T_full = 515 mK, kappa_phi = 1e-4/us, omega_d/2pi = 11.8 GHz.
    static BathSpec fitted();
    /// fitted() with T_half raised so that the single-photon thermal
    /// population is 5%.
    static BathSpec second_plateau();
    /// Only single-photon loss at rate 1/t1_us.
    static BathSpec pure_loss(double t1_us);

    /// All rates multiplied by s; lifetimes scale as 1/s.
    BathSpec scaled(double s) const;
    void validate() const;
};

/// Static per-trial detuning offset drawn from N(mean, std).
struct DetuningNoise {
    double mean = 0.0;
    double std = 0.0;
    int trials = 1;
    std::uint64_t seed = 0;

    /// mean 0.03 K, std K/500.
    static DetuningNoise fitted(double K, int trials, std::uint64_t seed);
    std::vector<double> draws() const;
};

struct LindbladModel {
    std::vector<JumpTerm> jumps;
    DetuningNoise noise;
};

/// n = 1/(exp(hbar omega / k_B T) - 1), omega in rad/us, T in mK.
double bose_einstein(double omega, double T_mK);

std::vector<JumpTerm> build_rwa_dissipators(const BathSpec& bath, Truncation trunc);
std::vector<JumpTerm> build_nrwa_dissipators(const BathSpec& bath, const SnailParams& snail,
                                             cplx eps2, Truncation trunc);
/// Empty when kappa_phi = 0.
std::vector<JumpTerm> build_dephasing(const BathSpec& bath, Truncation trunc);
/// RWA + NRWA + dephasing.
std::vector<JumpTerm> build_full_bath(const BathSpec& bath, const SnailParams& snail, cplx eps2,
                                      Truncation trunc);

/// H(t) = h0 + sum_k [coeff_k(t) op_k (+ h.c. when add_conjugate)].
struct DriveTerm {
    CMatrix op;
    std::function<cplx(double)> coeff;
    bool add_conjugate = false;
};

class TimeDependentHamiltonian {
   public:
    TimeDependentHamiltonian(Operator h0);  // NOLINT: implicit on purpose
    TimeDependentHamiltonian(Operator h0, std::vector<DriveTerm> terms);

    int dim() const noexcept { return static_cast<int>(h0_.rows()); }
    bool is_static() const noexcept { return terms_.empty(); }
    const CMatrix& h0() const noexcept { return h0_; }
    CMatrix at(double t) const;

   private:
    CMatrix h0_;
    std::vector<DriveTerm> terms_;
};

struct NamedOperator {
    std::string name;
    Operator op;
};

enum class Integrator { automatic, rk45, propagator };

struct EvolveOptions {
    Integrator method = Integrator::automatic;
    double rtol = 1e-8;
    double atol = 1e-10;
    /// Upper bound on the RK45 step; 0 leaves it unbounded.
    double max_step = 0.0;
    double min_step = 1e-14;
};

struct EvolutionResult {
    std::vector<double> times;
    std::vector<std::pair<std::string, std::vector<double>>> observables;
    DensityMatrix final_state{CMatrix::Identity(1, 1), DensityMatrix::Unchecked{}};
    double max_trace_deviation = 0.0;
    double max_hermiticity_error = 0.0;

    const std::vector<double>& series(const std::string& name) const;
};

/// Integrates d rho/dt = -i[H, rho] + sum rate (L rho L+ - {L+L, rho}/2) and
/// samples Re Tr(O rho) at the requested (increasing) times. Static problems
/// may use the exact propagator exp(L dt); time-dependent ones use adaptive
/// Dormand-Prince 5(4). Throws StepSizeUnderflow or NonFiniteState.
EvolutionResult evolve(const DensityMatrix& rho0, const TimeDependentHamiltonian& h,
                       const std::vector<JumpTerm>& jumps, const std::vector<double>& times,
                       const std::vector<NamedOperator>& observables, EvolveOptions opts = {});

struct KetEvolution {
    std::vector<double> times;
    std::vector<std::pair<std::string, std::vector<double>>> observables;
    Ket final_state{CVector::Zero(1)};

    const std::vector<double>& series(const std::string& name) const;
};

/// Closed-system Schroedinger evolution with the same RK45 core.
KetEvolution evolve_ket(const Ket& psi0, const TimeDependentHamiltonian& h,
                        const std::vector<double>& times,
                        const std::vector<NamedOperator>& observables, EvolveOptions opts = {});

/// Column-stacked Liouvillian: vec(d rho/dt) = L vec(rho).
CMatrix liouvillian(const CMatrix& h, const std::vector<JumpTerm>& jumps);

/// Static evolution on a geometric grid: block_steps samples at spacing dt0,
/// then the spacing doubles (P <- P^2) for every following block, until t_max.
EvolutionResult evolve_static_doubling(const DensityMatrix& rho0, const CMatrix& h,
                                       const std::vector<JumpTerm>& jumps, double dt0,
                                       double t_max, int block_steps,
                                       const std::vector<NamedOperator>& observables);

/// T1 / (2 <n>), <n> = alpha^2 (1 + e^{-4 alpha^2}) / (1 - e^{-4 alpha^2}).
double tc_tradeoff(double T1, double alpha);

struct LifetimeOptions {
    double t_max = 0.0;
    /// Initial sampling step; 0 selects t_max / 2000.
    double dt0 = 0.0;
    int block_steps = 40;
    /// 0 selects kerr_cat_truncation(params).
    int dim = 0;
};

struct LifetimeResult {
    /// +infinity when the signal shows no decay (all rates zero).
    double tau = std::numeric_limits<double>::infinity();
    double tau_stderr = 0.0;
    ExpFit fit;
    std::vector<double> times;
    std::vector<double> signal;
    bool infinite() const { return !std::isfinite(tau); }
};

/// Bit-flip time: prepare |+Z>, track <Z_cat>, average over detuning-noise
/// trials, fit a single exponential.
LifetimeResult lifetime_T_alpha(const KerrCatParams& params, const BathSpec& bath,
                                const SnailParams& snail, const DetuningNoise& noise,
                                const LifetimeOptions& opts);

/// Phase-flip time: prepare |C+>, track <X_cat>, fit an exponential with
/// offset (the steady state keeps a small X bias at small cat sizes).
LifetimeResult lifetime_T_C(const KerrCatParams& params, const BathSpec& bath,
                            const SnailParams& snail, const LifetimeOptions& opts);

struct DetuningSweep {
    std::vector<double> detuning;
    std::vector<double> T_alpha;
    std::vector<int> local_maxima;
};

/// T_alpha over a detuning grid (offset added to params.detuning). Local
/// maxima are interior points strictly above both neighbours.
DetuningSweep detuning_lifetime_sweep(const KerrCatParams& params, const BathSpec& bath,
                                      const SnailParams& snail, const DetuningNoise& noise,
                                      const std::vector<double>& delta_grid,
                                      const LifetimeOptions& opts);

std::vector<int> local_maxima(const std::vector<double>& values);

/// CSV with header "t_us,<names>" and one row per sample.
void write_series_csv(std::ostream& os, const std::vector<double>& times,
                      const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace kerrcat

#endif  // KERRCAT_DYNAMICS_HPP
