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


#include "kerrcat/fock.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "kerrcat/errors.hpp"
#include "kerrcat/units.hpp"

namespace kerrcat {

namespace {

constexpr double kTailLimit = 1e-9;

void check_finite(const CMatrix& m, const char* what) {
    if (!m.allFinite()) {
        throw InputError(std::string(what) + ": non-finite entries");
    }
}

double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        throw DimMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                          " vs " + std::to_string(b));
    }
}

Truncation::Truncation(int dim) : dim_(dim) {
    if (dim < 2) {
        throw InputError("Truncation: dim must be >= 2, got " + std::to_string(dim));
    }
}

int default_truncation(double abs_alpha) {
    const double a = std::abs(abs_alpha);
    return static_cast<int>(std::ceil(a * a + 7.0 * a + 10.0));
}

Truncation Truncation::for_amplitude(double abs_alpha) {
    return Truncation(default_truncation(abs_alpha));
}

double coherent_tail_population(cplx alpha, Truncation trunc) {
    const double r2 = std::norm(alpha);
    if (r2 == 0.0) return 0.0;
    const int n = trunc.dim() - 1;
    // log of e^{-|a|^2} |a|^{2n} / n!
    const double log_p = -r2 + n * std::log(r2) - std::lgamma(n + 1.0);
    return std::exp(log_p);
}

// ---------------------------------------------------------------- Ket

Ket::Ket(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (!amps_.allFinite()) throw InputError("Ket: non-finite amplitude");
}

Ket Ket::normalized() const {
    const double n = amps_.norm();
    if (n == 0.0) throw InputError("Ket: cannot normalize the zero vector");
    return Ket(amps_ / n);
}

cplx Ket::inner(const Ket& other) const {
    require_same_dim(dim(), other.dim(), "Ket::inner");
    return amps_.dot(other.amps_);
}

// ----------------------------------------------------------- Operator

Operator::Operator(CMatrix matrix, bool hermitian_hint)
    : m_(std::move(matrix)), hermitian_(hermitian_hint) {
    if (m_.rows() != m_.cols()) {
        throw DimMismatch("Operator: matrix must be square");
    }
    check_finite(m_, "Operator");
    if (hermitian_ && hermiticity_error() >= 1e-10) {
        throw NotHermitian("Operator: hermitian_hint set but |M - M^dagger| = " +
                           std::to_string(hermiticity_error()));
    }
}

Operator Operator::adjoint() const { return Operator(m_.adjoint(), hermitian_); }

double Operator::hermiticity_error() const { return max_abs(m_ - m_.adjoint()); }

Ket Operator::apply(const Ket& ket) const {
    require_same_dim(dim(), ket.dim(), "Operator::apply");
    return Ket(m_ * ket.amplitudes());
}

Operator operator+(const Operator& a, const Operator& b) {
    require_same_dim(a.dim(), b.dim(), "Operator +");
    return Operator(a.m_ + b.m_, a.hermitian_ && b.hermitian_);
}

Operator operator-(const Operator& a, const Operator& b) {
    require_same_dim(a.dim(), b.dim(), "Operator -");
    return Operator(a.m_ - b.m_, a.hermitian_ && b.hermitian_);
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_dim(a.dim(), b.dim(), "Operator *");
    return Operator(a.m_ * b.m_);
}

Operator operator*(cplx s, const Operator& a) { return Operator(s * a.m_); }

Operator operator*(double s, const Operator& a) { return Operator(s * a.m_, a.hermitian_); }

// ------------------------------------------------------ DensityMatrix

DensityMatrix::DensityMatrix(CMatrix matrix) : m_(std::move(matrix)) {
    if (m_.rows() != m_.cols()) throw DimMismatch("DensityMatrix: matrix must be square");
    check_finite(m_, "DensityMatrix");
    if (hermiticity_error() >= 1e-10) {
        throw NotHermitian("DensityMatrix: not Hermitian");
    }
    if (std::abs(trace() - 1.0) > 1e-9) {
        throw InputError("DensityMatrix: trace " + std::to_string(trace()) + " != 1");
    }
    if (min_eigenvalue() < -1e-8) {
        throw InputError("DensityMatrix: negative eigenvalue " +
                         std::to_string(min_eigenvalue()));
    }
}

DensityMatrix DensityMatrix::pure(const Ket& ket) {
    const Ket k = ket.normalized();
    CMatrix m = k.amplitudes() * k.amplitudes().adjoint();
    return DensityMatrix(std::move(m), Unchecked{});
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
    const CMatrix h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_error() const { return max_abs(m_ - m_.adjoint()); }

// ---------------------------------------------------------- operators

Operator identity_operator(Truncation trunc) {
    return Operator(CMatrix::Identity(trunc.dim(), trunc.dim()), true);
}

Operator annihilation(Truncation trunc) {
    const int n = trunc.dim();
    CMatrix a = CMatrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return Operator(std::move(a));
}

Operator creation(Truncation trunc) { return annihilation(trunc).adjoint(); }

Operator number_operator(Truncation trunc) {
    const int n = trunc.dim();
    CMatrix m = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = static_cast<double>(k);
    return Operator(std::move(m), true);
}

Operator parity_operator(Truncation trunc) {
    const int n = trunc.dim();
    CMatrix m = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    return Operator(std::move(m), true);
}

Operator displacement(cplx alpha, Truncation trunc) {
    if (coherent_tail_population(alpha, trunc) > kTailLimit) {
        throw TruncationTooSmall("displacement: |alpha|=" + std::to_string(std::abs(alpha)) +
                                 " does not fit dim " + std::to_string(trunc.dim()));
    }
    const CMatrix a = annihilation(trunc).matrix();
    const CMatrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return Operator(expm(gen));
}

CMatrix displacement_elements(cplx gamma, int rows, int cols) {
    CMatrix d = CMatrix::Zero(rows, cols);
    const double x = std::norm(gamma);
    const double r = std::abs(gamma);
    const double phase_arg = std::arg(gamma);
    const int nmax = std::max(rows, cols);
    std::vector<double> lag(nmax);
    // <m|D|n> = sqrt(n!/m!) gamma^(m-n) e^{-x/2} L_n^(m-n)(x) for m >= n, and
    // <m|D|n> = sqrt(m!/n!) (-gamma*)^(n-m) e^{-x/2} L_m^(n-m)(x) for m < n.
    for (int k = 0; k < nmax; ++k) {
        const int len = nmax - k;
        lag[0] = 1.0;
        if (len > 1) lag[1] = 1.0 + k - x;
        for (int j = 1; j + 1 < len; ++j) {
            lag[j + 1] = ((2.0 * j + 1.0 + k - x) * lag[j] - (j + k) * lag[j - 1]) / (j + 1.0);
        }
        for (int j = 0; j < len; ++j) {
            const int lo = j;
            const int hi = j + k;
            double log_mag = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0)) - 0.5 * x;
            if (k > 0) {
                if (r == 0.0) continue;
                log_mag += k * std::log(r);
            }
            const double mag = std::exp(log_mag) * lag[j];
            if (hi < rows && lo < cols) {
                d(hi, lo) = mag * std::polar(1.0, k * phase_arg);
            }
            if (k > 0 && lo < rows && hi < cols) {
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                d(lo, hi) = sign * mag * std::polar(1.0, -k * phase_arg);
            }
        }
    }
    return d;
}

// ------------------------------------------------------------- states

Ket fock_state(int n, Truncation trunc) {
    if (n < 0 || n >= trunc.dim()) {
        throw InputError("fock_state: level " + std::to_string(n) + " outside truncation");
    }
    CVector v = CVector::Zero(trunc.dim());
    v(n) = 1.0;
    return Ket(std::move(v));
}

Ket coherent_state(cplx alpha, Truncation trunc) {
    const int n = trunc.dim();
    CVector v(n);
    v(0) = std::exp(-0.5 * std::norm(alpha));
    for (int k = 1; k < n; ++k) v(k) = v(k - 1) * alpha / std::sqrt(static_cast<double>(k));
    if (std::norm(v(n - 1)) > kTailLimit) {
        throw TruncationTooSmall("coherent_state: tail population " +
                                 std::to_string(std::norm(v(n - 1))) + " at dim " +
                                 std::to_string(n));
    }
    v /= v.norm();
    return Ket(std::move(v));
}

Ket cat_state(cplx alpha, Parity parity, Truncation trunc) {
    if (parity == Parity::odd && std::abs(alpha) == 0.0) {
        throw DegenerateCat("cat_state: odd cat with alpha = 0 is the zero vector");
    }
    const CVector plus = coherent_state(alpha, trunc).amplitudes();
    const CVector minus = coherent_state(-alpha, trunc).amplitudes();
    CVector v = (parity == Parity::even) ? CVector(plus + minus) : CVector(plus - minus);
    // Project exactly onto the parity sector to remove rounding leakage.
    for (int k = (parity == Parity::even) ? 1 : 0; k < v.size(); k += 2) v(k) = 0.0;
    v /= v.norm();
    return Ket(std::move(v));
}

cplx expectation(const Operator& op, const Ket& state) {
    require_same_dim(op.dim(), state.dim(), "expectation");
    return state.amplitudes().dot(op.matrix() * state.amplitudes());
}

cplx expectation(const Operator& op, const DensityMatrix& state) {
    require_same_dim(op.dim(), state.dim(), "expectation");
    return (op.matrix() * state.matrix()).trace();
}

double fidelity(const Ket& target, const DensityMatrix& state) {
    require_same_dim(target.dim(), state.dim(), "fidelity");
    const CVector& v = target.amplitudes();
    return v.dot(state.matrix() * v).real();
}

double fidelity(const Ket& target, const Ket& state) {
    return std::norm(target.inner(state));
}

std::vector<double> wigner(const DensityMatrix& state, std::span<const cplx> grid) {
    const int n = state.dim();
    const CMatrix& rho = state.matrix();
    std::vector<double> out;
    out.reserve(grid.size());
    for (const cplx& beta : grid) {
        if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
            throw InputError("wigner: non-finite grid point");
        }
        // Tr[D(-b) rho D(b) P] = Tr[rho D(2b) P].
        const CMatrix d = displacement_elements(2.0 * beta, n, n);
        cplx acc = 0.0;
        for (int row = 0; row < n; ++row) {
            const double sign = (row % 2 == 0) ? 1.0 : -1.0;
            acc += sign * rho.row(row).transpose().cwiseProduct(d.col(row)).sum();
        }
        out.push_back(2.0 / units::kPi * acc.real());
    }
    return out;
}

std::vector<double> wigner(const Ket& state, std::span<const cplx> grid) {
    return wigner(DensityMatrix::pure(state), grid);
}

CMatrix expm(const CMatrix& m) {
    if (m.rows() != m.cols()) throw DimMismatch("expm: matrix must be square");
    return m.exp();
}

}  // namespace kerrcat
