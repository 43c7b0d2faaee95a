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


#ifndef KERRCAT_MEASUREMENT_HPP
#define KERRCAT_MEASUREMENT_HPP

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kerrcat/fock.hpp"
#include "kerrcat/model.hpp"

namespace kerrcat {

/// Cat quadrature readout settings. Rates in rad/us, duration in us.
struct ReadoutParams {
    double eps_cqr = 0.0;
    double kappa_r = 0.0;
    double duration = 0.0;
    double efficiency = 1.0;
    /// Standard deviation of the Gaussian noise added to each IQ coordinate.
    double noise_sigma = 0.0;

    /// eps_CQR/2pi = 0.05 MHz, kappa_R/2pi = 0.4 MHz, 4 us, efficiency 0.6,
    /// noise 0.5.
    static ReadoutParams device();
    void validate() const;
};

struct IQShot {
    double i = 0.0;
    double q = 0.0;
    int label_true = 1;
};

/// Line through the origin orthogonal to `axis`; shots on the +axis side
/// are assigned +1.
struct DiscriminationLine {
    cplx axis{0.0, -1.0};
};

/// Steady pointer amplitude for the |+alpha> well, -2i alpha eps / kappa.
/// The |-alpha> pointer is its negative.
cplx cqr_steady_amplitude(const ReadoutParams& r, double alpha);

/// Mean integrated signal along the pointer axis, |beta| sqrt(eta kappa tau).
double pointer_separation(const ReadoutParams& r, double alpha);

DiscriminationLine discrimination_line(const ReadoutParams& r, double alpha);

/// Ties (projection exactly zero) resolve to +1.
int discriminate(const IQShot& shot, const DiscriminationLine& line);

/// Shots for a qubit starting in sign `state_sign`. The well flips as a
/// Poisson process at `flip_rate` (1/us) while the signal integrates.
std::vector<IQShot> simulate_readout(int state_sign, const ReadoutParams& r, double alpha,
                                     double flip_rate, std::size_t shots, std::uint64_t seed);

/// Gaussian-overlap assignment error with no flips.
double misassignment_probability(const ReadoutParams& r, double alpha);

struct QndResult {
    double q = 0.0;
    double p_plus_plus = 0.0;
    double p_minus_minus = 0.0;
    /// Fraction of first readouts that disagree with the prepared sign.
    double first_error = 0.0;
    std::size_t pairs = 0;
};

/// Monte-Carlo QNDness from back-to-back readout pairs. Half of the pairs
/// start in each well.
QndResult qnd_analysis(const ReadoutParams& r, double alpha, double flip_rate, std::size_t pairs,
                       std::uint64_t seed);
double qndness(const ReadoutParams& r, double alpha, double flip_rate, std::size_t pairs,
               std::uint64_t seed);

void write_shots_csv(std::ostream& os, std::span<const IQShot> shots,
                     const DiscriminationLine& line);

// Qubit-level tomography in the cat frame. Two-level matrices use the
// basis {|+Z>, |-Z>}, so X, Y, Z are the Pauli matrices.

using QubitMatrix = Eigen::Matrix2cd;

enum class Axis { x, y, z };

QubitMatrix pauli(int k);
/// exp(-i angle sigma / 2)
QubitMatrix qubit_rotation(Axis axis, double angle);

/// (I + xX + yY + zZ) / 2 with negative eigenvalues clipped and the trace
/// renormalized.
DensityMatrix state_tomography(const Bloch& b);
Bloch qubit_bloch(const DensityMatrix& rho);

struct PTM {
    Eigen::Matrix4d matrix = Eigen::Matrix4d::Identity();

    /// First row (1, 0, 0, 0) and entries in [-1 - eps, 1 + eps].
    bool is_valid(double eps = 0.05) const;
};

PTM ptm_from_unitary(const QubitMatrix& u);

/// Least-squares R with R [1; in_k] = [1; out_k]. Needs at least four
/// pairs whose inputs span the Bloch space; throws SingularDesign otherwise.
PTM ptm_estimate(std::span<const Bloch> inputs, std::span<const Bloch> outputs);

/// (Tr(R_ideal^T R_exp) / 2 + 1) / 3
double gate_fidelity(const PTM& r_exp, const PTM& r_ideal);

void write_ptm_json(std::ostream& os, const PTM& ptm);

struct SpamModel {
    /// Probability that initialization lands in the intended well.
    double p_alpha = 1.0;
    /// Symmetric readout assignment error.
    double meas_error = 0.0;

    static SpamModel none() { return {}; }
    /// P_alpha = 0.93 and the default readout overlap at alpha^2 = 4.
    static SpamModel device();
};

/// Gate duration and the Z / XY lifetimes acting during it. Zero lifetimes
/// mean no decay.
struct GateNoise {
    double duration = 0.0;
    double T_alpha = 0.0;
    double T_C = 0.0;
};

struct ProcessTomography {
    std::array<Bloch, 4> inputs;
    std::array<Bloch, 4> outputs;
    PTM estimate;
    PTM ideal;
    double fidelity = 0.0;
};

/// Canonical inputs +Z, +X, +Y, -Z from I, Y(90), X(270), X(180) on |+Z>.
std::array<Bloch, 4> canonical_inputs();

/// Prepares the canonical inputs with SPAM, applies the gate and decay,
/// reads out with SPAM and fits the PTM against the ideal inputs.
ProcessTomography simulate_process_tomography(const QubitMatrix& gate, const GateNoise& noise,
                                              const SpamModel& spam);

}  // namespace kerrcat

#endif  // KERRCAT_MEASUREMENT_HPP
