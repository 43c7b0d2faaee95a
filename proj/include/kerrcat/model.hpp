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


#ifndef KERRCAT_MODEL_HPP
#define KERRCAT_MODEL_HPP

#include <vector>

#include "kerrcat/fock.hpp"

namespace kerrcat {

/// Circuit-level parameters of the driven SNAIL oscillator and its readout
/// mode. All frequencies are angular, in rad/us.
struct SnailParams {
    double omega_a0 = 0.0;
    double g3 = 0.0;
    double g4 = 0.0;
    double g_c = 0.0;
    double omega_b0 = 0.0;
    cplx eps_s0 = 0.0;
    double omega_s = 0.0;
    cplx eps_cqr0 = 0.0;
    double omega_cqr = 0.0;

    /// omega_a0 - omega_b0
    double mode_detuning() const { return omega_a0 - omega_b0; }
};

/// Device defaults: 5.9 GHz qubit, 7.1 GHz readout, g3/2pi = 15 MHz,
/// g4 = -K/6 with K/2pi = 1.2 MHz, g_c/2pi = 125 MHz, pump at 11.8 GHz and
/// readout tone at 1.2 GHz. Drive amplitudes default to zero.
SnailParams device_snail_params();

struct KerrCatParams {
    double K = 0.0;
    cplx eps2 = 0.0;
    double detuning = 0.0;
    /// -4 K |xi|^2, reported by effective_kerr_params; only enters the
    /// Hamiltonian when requested.
    double stark_shift = 0.0;

    double cat_size() const;  // |eps2| / K
    cplx alpha() const;       // sqrt(eps2 / K) with the phase of eps2 halved
};

/// K/2pi = 1.2 MHz with eps2 = alpha2 * K.
KerrCatParams device_kerr_cat(double alpha2);

struct HamiltonianOptions {
    bool include_stark = false;
};

/// H = -K a+^2 a^2 + eps2 a+^2 + eps2^* a^2 + detuning a+ a.
Operator kerr_cat_hamiltonian(const KerrCatParams& p, Truncation trunc,
                              HamiltonianOptions opts = {});

/// Truncation adequate for the wells of H (size |eps2|/K + detuning/2K).
Truncation kerr_cat_truncation(const KerrCatParams& p);

cplx effective_squeezing_amplitude(const SnailParams& p);
/// Same closed form evaluated at the readout tone.
cplx effective_cqr_amplitude(const SnailParams& p);

KerrCatParams effective_kerr_params(const SnailParams& p);

struct DressedModes {
    double lambda = 0.0;
    double omega_a = 0.0;
    double omega_b = 0.0;
};

DressedModes dressed_mode_params(const SnailParams& p);

/// 6 g3 (g_c/Delta) xi_cqr.
cplx cqr_coupling(const SnailParams& p, cplx xi_cqr_eff);
/// Inverse of cqr_coupling.
cplx cqr_drive_for_coupling(const SnailParams& p, cplx eps_cqr);

struct CqrShifts {
    double stark_a = 0.0;
    double stark_b = 0.0;
    double cross_kerr = 0.0;
};

CqrShifts cqr_stark_and_cross_kerr(const SnailParams& p, cplx xi_cqr_eff);

struct ZenoDrive {
    cplx coeff_z = 0.0;
    cplx coeff_y = 0.0;
};

/// Cat-manifold projection of (omega_z/2) a+ + h.c.
ZenoDrive zeno_projected_drive(cplx alpha, cplx omega_z);

enum class SpectrumOrder { ascending, descending };

struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<Ket> eigenvectors;
};

/// First k eigenpairs in the requested order. Throws NotHermitian.
Spectrum spectrum(const Operator& h, int k, SpectrumOrder order = SpectrumOrder::ascending);

/// Gap between the cat pair (top of the spectrum) and the next pair.
double cat_energy_gap(const Operator& h);

/// Groups sorted eigenvalues into near-degenerate clusters (|dE| < tol).
std::vector<std::vector<int>> degenerate_groups(const std::vector<double>& eigenvalues,
                                                double tol);

/// Logical frame of the cat qubit. c_plus / c_minus are the highest-energy
/// states of the even / odd parity blocks of H. The relative phase is fixed so
/// that <C+|a e^{-i arg alpha}|C-> is real and positive.
struct CatFrame {
    Ket c_plus;
    Ket c_minus;
    Ket plus_z;
    Ket minus_z;
    Operator x;
    Operator y;
    Operator z;
    cplx alpha;
};

CatFrame cat_frame(const KerrCatParams& p, Truncation trunc);

struct Bloch {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

Bloch bloch_vector(const CatFrame& frame, const DensityMatrix& rho);
Bloch bloch_vector(const CatFrame& frame, const Ket& psi);

}  // namespace kerrcat

#endif  // KERRCAT_MODEL_HPP
