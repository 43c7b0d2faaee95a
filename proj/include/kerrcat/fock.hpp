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


// Truncated Fock-space linear algebra. Everything here is dense: the
// largest spaces used by the experiments stay below ~120 levels.

#ifndef KERRCAT_FOCK_HPP
#define KERRCAT_FOCK_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace kerrcat {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Fock cutoff N: the space is spanned by |0>..|N-1>.
class Truncation {
   public:
    explicit Truncation(int dim);

    /// Default cutoff for states of amplitude |alpha|: ceil(|alpha|^2 + 7|alpha| + 10).
    static Truncation for_amplitude(double abs_alpha);

    int dim() const noexcept { return dim_; }
    bool operator==(const Truncation&) const = default;

   private:
    int dim_;
};

int default_truncation(double abs_alpha);

/// Population of the top level |N-1> of the untruncated coherent state |alpha>.
double coherent_tail_population(cplx alpha, Truncation trunc);

class Ket {
   public:
    explicit Ket(CVector amplitudes);

    const CVector& amplitudes() const noexcept { return amps_; }
    int dim() const noexcept { return static_cast<int>(amps_.size()); }
    double norm() const { return amps_.norm(); }
    Ket normalized() const;
    /// <this|other>
    cplx inner(const Ket& other) const;

   private:
    CVector amps_;
};

class Operator {
   public:
    explicit Operator(CMatrix matrix, bool hermitian_hint = false);

    const CMatrix& matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    bool hermitian_hint() const noexcept { return hermitian_; }

    Operator adjoint() const;
    /// max |M - M^dagger| entry.
    double hermiticity_error() const;

    Ket apply(const Ket& ket) const;

    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(cplx s, const Operator& a);
    friend Operator operator*(double s, const Operator& a);

   private:
    CMatrix m_;
    bool hermitian_;
};

class DensityMatrix {
   public:
    struct Unchecked {};

    /// Validates Hermiticity (1e-10), unit trace (1e-9) and positivity (-1e-8).
    explicit DensityMatrix(CMatrix matrix);
    DensityMatrix(CMatrix matrix, Unchecked) : m_(std::move(matrix)) {}

    static DensityMatrix pure(const Ket& ket);

    const CMatrix& matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    double trace() const { return m_.trace().real(); }
    double purity() const;
    double min_eigenvalue() const;
    double hermiticity_error() const;

   private:
    CMatrix m_;
};

enum class Parity { even, odd };

Operator identity_operator(Truncation trunc);
Operator annihilation(Truncation trunc);
Operator creation(Truncation trunc);
Operator number_operator(Truncation trunc);
Operator parity_operator(Truncation trunc);

/// exp(alpha a^dagger - alpha^* a) of the truncated generator. Throws
/// TruncationTooSmall when |alpha> does not fit the truncation.
Operator displacement(cplx alpha, Truncation trunc);

/// Exact matrix elements <m|D(gamma)|n> for m < rows, n < cols (no truncation
/// of the generator).
CMatrix displacement_elements(cplx gamma, int rows, int cols);

Ket fock_state(int n, Truncation trunc);

/// Coherent state renormalized after truncation. Throws TruncationTooSmall
/// when the pre-normalization population of |N-1> exceeds 1e-9.
Ket coherent_state(cplx alpha, Truncation trunc);

/// (|alpha> +/- |-alpha>) normalized. Throws DegenerateCat for an odd cat at alpha = 0.
Ket cat_state(cplx alpha, Parity parity, Truncation trunc);

cplx expectation(const Operator& op, const Ket& state);
cplx expectation(const Operator& op, const DensityMatrix& state);

/// <psi|rho|psi> for a normalized ket.
double fidelity(const Ket& target, const DensityMatrix& state);
double fidelity(const Ket& target, const Ket& state);

/// W(beta) = (2/pi) Tr[D(-beta) rho D(beta) P] on each grid point.
std::vector<double> wigner(const DensityMatrix& state, std::span<const cplx> grid);
std::vector<double> wigner(const Ket& state, std::span<const cplx> grid);

/// Dense matrix exponential (scaling and squaring with a Pade approximant).
CMatrix expm(const CMatrix& m);

/// Throws DimMismatch unless both dimensions agree.
void require_same_dim(int a, int b, const char* what);

}  // namespace kerrcat

#endif  // KERRCAT_FOCK_HPP
