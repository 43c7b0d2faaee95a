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


#include "kerrcat/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "kerrcat/errors.hpp"
#include "kerrcat/units.hpp"

namespace kerrcat {

namespace {

constexpr double kDeviceKerr = units::from_mhz(1.2);

void require_mode_detuning(const SnailParams& p) {
    if (p.mode_detuning() == 0.0) {
        throw DegenerateModes("SNAIL and readout modes are degenerate (Delta = 0)");
    }
}

// Top eigenvector of one parity block of h, embedded back in the full space.
Ket top_parity_state(const CMatrix& h, int start) {
    const int n = static_cast<int>(h.rows());
    std::vector<int> idx;
    for (int k = start; k < n; k += 2) idx.push_back(k);
    const int m = static_cast<int>(idx.size());
    CMatrix block(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) block(i, j) = h(idx[i], idx[j]);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(block);
    const CVector top = es.eigenvectors().col(m - 1);
    CVector full = CVector::Zero(n);
    for (int i = 0; i < m; ++i) full(idx[i]) = top(i);
    return Ket(full);
}

}  // namespace

SnailParams device_snail_params() {
    SnailParams p;
    p.omega_a0 = units::from_ghz(5.9);
    p.g3 = units::from_mhz(15.0);
    p.g4 = -kDeviceKerr / 6.0;
    p.g_c = units::from_mhz(125.0);
    p.omega_b0 = units::from_ghz(7.1);
    p.omega_s = units::from_ghz(11.8);
    p.omega_cqr = units::from_ghz(1.2);
    return p;
}

double KerrCatParams::cat_size() const { return std::abs(eps2) / K; }

cplx KerrCatParams::alpha() const {
    return std::polar(std::sqrt(cat_size()), 0.5 * std::arg(eps2));
}

KerrCatParams device_kerr_cat(double alpha2) {
    KerrCatParams p;
    p.K = kDeviceKerr;
    p.eps2 = alpha2 * kDeviceKerr;
    return p;
}

Truncation kerr_cat_truncation(const KerrCatParams& p) {
    const double well = std::max(0.0, (std::abs(p.eps2) + 0.5 * p.detuning) / p.K);
    return Truncation::for_amplitude(std::sqrt(well));
}

Operator kerr_cat_hamiltonian(const KerrCatParams& p, Truncation trunc, HamiltonianOptions opts) {
    if (!(p.K > 0.0)) throw InputError("kerr_cat_hamiltonian: K must be positive");
    const double well = std::max(0.0, (std::abs(p.eps2) + 0.5 * p.detuning) / p.K);
    if (coherent_tail_population(std::sqrt(well), trunc) > 1e-9) {
        throw TruncationTooSmall("kerr_cat_hamiltonian: dim " + std::to_string(trunc.dim()) +
                                 " too small for cat size " + std::to_string(well));
    }
    const CMatrix a = annihilation(trunc).matrix();
    const CMatrix ad = a.adjoint();
    const CMatrix a2 = a * a;
    const CMatrix ad2 = ad * ad;
    double harmonic = p.detuning;
    if (opts.include_stark) harmonic += p.stark_shift;
    CMatrix h = -p.K * ad2 * a2 + p.eps2 * ad2 + std::conj(p.eps2) * a2 + harmonic * ad * a;
    h = (0.5 * (h + h.adjoint())).eval();
    return Operator(std::move(h), true);
}

cplx effective_squeezing_amplitude(const SnailParams& p) {
    const double lo = p.omega_s - p.omega_a0;
    const double hi = p.omega_s + p.omega_a0;
    if (lo == 0.0 || hi == 0.0) {
        throw ResonantDriveSingularity("pump frequency equals +/- the oscillator frequency");
    }
    return -(p.eps_s0 / lo - p.eps_s0 / hi);
}

cplx effective_cqr_amplitude(const SnailParams& p) {
    const double lo = p.omega_cqr - p.omega_a0;
    const double hi = p.omega_cqr + p.omega_a0;
    if (lo == 0.0 || hi == 0.0) {
        throw ResonantDriveSingularity("readout tone equals +/- the oscillator frequency");
    }
    return -(p.eps_cqr0 / lo - p.eps_cqr0 / hi);
}

KerrCatParams effective_kerr_params(const SnailParams& p) {
    const cplx xi = effective_squeezing_amplitude(p);
    KerrCatParams k;
    k.K = -6.0 * p.g4;
    k.eps2 = 3.0 * p.g3 * xi;
    k.stark_shift = -4.0 * k.K * std::norm(xi);
    return k;
}

DressedModes dressed_mode_params(const SnailParams& p) {
    require_mode_detuning(p);
    const double delta = p.mode_detuning();
    const double root = std::sqrt(delta * delta + 4.0 * p.g_c * p.g_c);
    // The branch sign follows Delta so that omega_a stays adiabatically
    // connected to omega_a0 for either ordering of the bare modes.
    const double s = delta > 0.0 ? 1.0 : -1.0;
    DressedModes d;
    d.lambda = 0.5 * std::atan(2.0 * p.g_c / delta);
    d.omega_a = 0.5 * (p.omega_a0 + p.omega_b0 + s * root);
    d.omega_b = 0.5 * (p.omega_a0 + p.omega_b0 - s * root);
    return d;
}

cplx cqr_coupling(const SnailParams& p, cplx xi_cqr_eff) {
    require_mode_detuning(p);
    return 6.0 * p.g3 * (p.g_c / p.mode_detuning()) * xi_cqr_eff;
}

cplx cqr_drive_for_coupling(const SnailParams& p, cplx eps_cqr) {
    require_mode_detuning(p);
    if (p.g3 == 0.0 || p.g_c == 0.0) {
        throw InputError("cqr_drive_for_coupling: g3 and g_c must be nonzero");
    }
    return eps_cqr / (6.0 * p.g3 * (p.g_c / p.mode_detuning()));
}

CqrShifts cqr_stark_and_cross_kerr(const SnailParams& p, cplx xi_cqr_eff) {
    require_mode_detuning(p);
    const double r2 = std::pow(p.g_c / p.mode_detuning(), 2);
    const double x2 = std::norm(xi_cqr_eff);
    return {24.0 * p.g4 * x2, 24.0 * p.g4 * r2 * x2, 24.0 * p.g4 * r2};
}

ZenoDrive zeno_projected_drive(cplx alpha, cplx omega_z) {
    // P a P = alpha Z - i alpha e^{-2|alpha|^2} Y and its adjoint.
    const cplx w = omega_z * std::conj(alpha);
    const double supp = std::exp(-2.0 * std::norm(alpha));
    return {cplx(w.real(), 0.0), cplx(-supp * w.imag(), 0.0)};
}

Spectrum spectrum(const Operator& h, int k, SpectrumOrder order) {
    if (h.hermiticity_error() >= 1e-10 * std::max(1.0, h.matrix().cwiseAbs().maxCoeff())) {
        throw NotHermitian("spectrum: operator is not Hermitian");
    }
    const int n = h.dim();
    k = std::clamp(k, 0, n);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h.matrix() + h.matrix().adjoint()));
    Spectrum s;
    for (int i = 0; i < k; ++i) {
        const int col = (order == SpectrumOrder::ascending) ? i : n - 1 - i;
        s.eigenvalues.push_back(es.eigenvalues()(col));
        s.eigenvectors.emplace_back(es.eigenvectors().col(col));
    }
    return s;
}

double cat_energy_gap(const Operator& h) {
    const Spectrum s = spectrum(h, 3, SpectrumOrder::descending);
    return s.eigenvalues[1] - s.eigenvalues[2];
}

std::vector<std::vector<int>> degenerate_groups(const std::vector<double>& eigenvalues,
                                                double tol) {
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(eigenvalues.size()); ++i) {
        if (!groups.empty() &&
            std::abs(eigenvalues[i] - eigenvalues[groups.back().back()]) < tol) {
            groups.back().push_back(i);
        } else {
            groups.push_back({i});
        }
    }
    return groups;
}

CatFrame cat_frame(const KerrCatParams& p, Truncation trunc) {
    const CMatrix h = kerr_cat_hamiltonian(p, trunc).matrix();
    const cplx alpha = p.alpha();
    CVector cp = top_parity_state(h, 0).amplitudes();
    CVector cm = top_parity_state(h, 1).amplitudes();
    if (std::abs(cp(0)) > 0.0) cp *= std::conj(cp(0)) / std::abs(cp(0));
    const CMatrix a = annihilation(trunc).matrix();
    const cplx m = cp.dot(std::polar(1.0, -std::arg(alpha)) * (a * cm));
    if (std::abs(m) > 0.0) cm *= std::conj(m) / std::abs(m);

    const CVector pz = (cp + cm) / std::sqrt(2.0);
    const CVector mz = (cp - cm) / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    CMatrix x = cp * cp.adjoint() - cm * cm.adjoint();
    CMatrix y = i * (cp * cm.adjoint()) - i * (cm * cp.adjoint());
    CMatrix z = pz * pz.adjoint() - mz * mz.adjoint();
    return CatFrame{Ket(cp),           Ket(cm),           Ket(pz),
                    Ket(mz),           Operator(x, true), Operator(0.5 * (y + y.adjoint()), true),
                    Operator(z, true), alpha};
}

Bloch bloch_vector(const CatFrame& f, const DensityMatrix& rho) {
    return {expectation(f.x, rho).real(), expectation(f.y, rho).real(),
            expectation(f.z, rho).real()};
}

Bloch bloch_vector(const CatFrame& f, const Ket& psi) {
    return {expectation(f.x, psi).real(), expectation(f.y, psi).real(),
            expectation(f.z, psi).real()};
}

}  // namespace kerrcat
