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


#include "kerrcat/measurement.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "kerrcat/errors.hpp"
#include "kerrcat/parallel.hpp"
#include "kerrcat/units.hpp"

namespace kerrcat {

namespace {

constexpr std::size_t kShotChunk = 4096;

std::mt19937_64 chunk_engine(std::uint64_t seed, std::size_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
}

struct ShotOutcome {
    IQShot shot;
    int final_sign;
};

// One integration window. The time-averaged sign scales the pointer signal.
ShotOutcome integrate_window(int sign, double mu, cplx axis, double duration, double flip_rate,
                             double sigma, std::mt19937_64& rng) {
    const int start = sign;
    double weighted = 0.0;
    double t = 0.0;
    if (flip_rate > 0.0) {
        std::exponential_distribution<double> wait(flip_rate);
        for (double next = wait(rng); next < duration; next += wait(rng)) {
            weighted += sign * (next - t);
            t = next;
            sign = -sign;
        }
    }
    weighted += sign * (duration - t);
    const cplx mean = axis * (mu * weighted / duration);
    IQShot shot{mean.real(), mean.imag(), start};
    if (sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, sigma);
        shot.i += noise(rng);
        shot.q += noise(rng);
    }
    return {shot, sign};
}

std::size_t chunk_count(std::size_t n) { return (n + kShotChunk - 1) / kShotChunk; }

}  // namespace

ReadoutParams ReadoutParams::device() {
    return {units::from_mhz(0.05), units::from_mhz(0.4), 4.0, 0.6, 0.5};
}

void ReadoutParams::validate() const {
    if (!(duration > 0.0)) throw InputError("readout duration must be positive");
    if (!(kappa_r > 0.0)) throw InputError("readout linewidth must be positive");
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw InputError("readout efficiency must lie in (0, 1]");
    if (!(noise_sigma >= 0.0)) throw InputError("readout noise must be non-negative");
    if (!std::isfinite(eps_cqr)) throw InputError("readout drive must be finite");
}

cplx cqr_steady_amplitude(const ReadoutParams& r, double alpha) {
    r.validate();
    return cplx(0.0, -2.0 * alpha * r.eps_cqr / r.kappa_r);
}

double pointer_separation(const ReadoutParams& r, double alpha) {
    return std::abs(cqr_steady_amplitude(r, alpha)) *
           std::sqrt(r.efficiency * r.kappa_r * r.duration);
}

DiscriminationLine discrimination_line(const ReadoutParams& r, double alpha) {
    const cplx beta = cqr_steady_amplitude(r, alpha);
    if (std::abs(beta) == 0.0) return {};
    return {beta / std::abs(beta)};
}

int discriminate(const IQShot& shot, const DiscriminationLine& line) {
    const double proj = std::real(std::conj(line.axis) * cplx(shot.i, shot.q));
    return proj >= 0.0 ? 1 : -1;
}

std::vector<IQShot> simulate_readout(int state_sign, const ReadoutParams& r, double alpha,
                                     double flip_rate, std::size_t shots, std::uint64_t seed) {
    r.validate();
    if (shots < 1) throw InputError("simulate_readout needs at least one shot");
    if (state_sign != 1 && state_sign != -1) throw InputError("state sign must be +1 or -1");
    if (!(flip_rate >= 0.0)) throw InputError("flip rate must be non-negative");
    const double mu = pointer_separation(r, alpha);
    const cplx axis = discrimination_line(r, alpha).axis;
    std::vector<IQShot> out(shots);
    parallel_for(static_cast<int>(chunk_count(shots)), [&](int c) {
        auto rng = chunk_engine(seed, static_cast<std::size_t>(c));
        const std::size_t end = std::min(shots, (c + 1) * kShotChunk);
        for (std::size_t k = c * kShotChunk; k < end; ++k)
            out[k] = integrate_window(state_sign, mu, axis, r.duration, flip_rate, r.noise_sigma, rng).shot;
    });
    return out;
}

double misassignment_probability(const ReadoutParams& r, double alpha) {
    const double mu = pointer_separation(r, alpha);
    if (r.noise_sigma == 0.0) return mu > 0.0 ? 0.0 : 0.5;
    return 0.5 * std::erfc(mu / (r.noise_sigma * std::numbers::sqrt2));
}

QndResult qnd_analysis(const ReadoutParams& r, double alpha, double flip_rate, std::size_t pairs,
                       std::uint64_t seed) {
    r.validate();
    if (pairs < 2) throw InputError("qndness needs at least two readout pairs");
    if (!(flip_rate >= 0.0)) throw InputError("flip rate must be non-negative");
    const double mu = pointer_separation(r, alpha);
    const DiscriminationLine line = discrimination_line(r, alpha);

    struct Counts {
        std::size_t plus = 0, plus_plus = 0, minus = 0, minus_minus = 0, first_wrong = 0;
    };
    std::vector<Counts> counts(chunk_count(pairs));
    parallel_for(static_cast<int>(counts.size()), [&](int c) {
        auto rng = chunk_engine(seed, static_cast<std::size_t>(c));
        Counts& n = counts[static_cast<std::size_t>(c)];
        const std::size_t end = std::min(pairs, (c + 1) * kShotChunk);
        for (std::size_t k = c * kShotChunk; k < end; ++k) {
            const int prepared = (k % 2 == 0) ? 1 : -1;
            const auto first =
                integrate_window(prepared, mu, line.axis, r.duration, flip_rate, r.noise_sigma, rng);
            const auto second = integrate_window(first.final_sign, mu, line.axis, r.duration,
                                                 flip_rate, r.noise_sigma, rng);
            const int m1 = discriminate(first.shot, line);
            const int m2 = discriminate(second.shot, line);
            if (m1 != prepared) ++n.first_wrong;
            if (m1 == 1) {
                ++n.plus;
                if (m2 == 1) ++n.plus_plus;
            } else {
                ++n.minus;
                if (m2 == -1) ++n.minus_minus;
            }
        }
    });
    Counts total;
    for (const auto& n : counts) {
        total.plus += n.plus;
        total.plus_plus += n.plus_plus;
        total.minus += n.minus;
        total.minus_minus += n.minus_minus;
        total.first_wrong += n.first_wrong;
    }
    if (total.plus == 0 || total.minus == 0)
        throw NumericalError("qndness: one readout outcome never occurred");
    QndResult res;
    res.pairs = pairs;
    res.p_plus_plus = static_cast<double>(total.plus_plus) / static_cast<double>(total.plus);
    res.p_minus_minus = static_cast<double>(total.minus_minus) / static_cast<double>(total.minus);
    res.q = 0.5 * (res.p_plus_plus + res.p_minus_minus);
    res.first_error = static_cast<double>(total.first_wrong) / static_cast<double>(pairs);
    return res;
}

double qndness(const ReadoutParams& r, double alpha, double flip_rate, std::size_t pairs,
               std::uint64_t seed) {
    return qnd_analysis(r, alpha, flip_rate, pairs, seed).q;
}

void write_shots_csv(std::ostream& os, std::span<const IQShot> shots,
                     const DiscriminationLine& line) {
    os << "i,q,label_true,label_assigned\n";
    char buf[96];
    for (const auto& s : shots) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%d,%d\n", s.i, s.q, s.label_true,
                      discriminate(s, line));
        os << buf;
    }
}

QubitMatrix pauli(int k) {
    QubitMatrix m;
    switch (k) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw InputError("Pauli index must be 0..3");
    }
    return m;
}

QubitMatrix qubit_rotation(Axis axis, double angle) {
    const int k = axis == Axis::x ? 1 : axis == Axis::y ? 2 : 3;
    return std::cos(angle / 2) * pauli(0) - cplx(0, 1) * std::sin(angle / 2) * pauli(k);
}

DensityMatrix state_tomography(const Bloch& b) {
    for (double v : {b.x, b.y, b.z})
        if (!std::isfinite(v)) throw InputError("Bloch components must be finite");
    const QubitMatrix raw = 0.5 * (pauli(0) + b.x * pauli(1) + b.y * pauli(2) + b.z * pauli(3));
    Eigen::SelfAdjointEigenSolver<QubitMatrix> es(raw);
    Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0);
    ev /= ev.sum();
    const QubitMatrix rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    return DensityMatrix(CMatrix(0.5 * (rho + rho.adjoint())));
}

Bloch qubit_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw DimMismatch("qubit_bloch expects a two-level density matrix");
    const QubitMatrix m = rho.matrix();
    return {(pauli(1) * m).trace().real(), (pauli(2) * m).trace().real(),
            (pauli(3) * m).trace().real()};
}

bool PTM::is_valid(double eps) const {
    const Eigen::Vector4d first(1, 0, 0, 0);
    if ((matrix.row(0).transpose() - first).cwiseAbs().maxCoeff() > eps) return false;
    return matrix.cwiseAbs().maxCoeff() <= 1.0 + eps;
}

PTM ptm_from_unitary(const QubitMatrix& u) {
    PTM r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r.matrix(i, j) = 0.5 * (pauli(i) * u * pauli(j) * u.adjoint()).trace().real();
    return r;
}

PTM ptm_estimate(std::span<const Bloch> inputs, std::span<const Bloch> outputs) {
    if (inputs.size() != outputs.size())
        throw DimMismatch("ptm_estimate needs one output per input");
    if (inputs.size() < 4) throw SingularDesign("ptm_estimate needs at least four input states");
    const auto n = static_cast<Eigen::Index>(inputs.size());
    Eigen::MatrixXd a(4, n), b(4, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& in = inputs[static_cast<std::size_t>(k)];
        const auto& out = outputs[static_cast<std::size_t>(k)];
        a.col(k) << 1.0, in.x, in.y, in.z;
        b.col(k) << 1.0, out.x, out.y, out.z;
    }
    // R A = B in the least-squares sense: solve A^T R^T = B^T.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) < 1e-9 * s(0))
        throw SingularDesign("input states do not span the Bloch space");
    PTM r;
    r.matrix = svd.solve(b.transpose()).transpose();
    return r;
}

double gate_fidelity(const PTM& r_exp, const PTM& r_ideal) {
    return ((r_ideal.matrix.transpose() * r_exp.matrix).trace() / 2.0 + 1.0) / 3.0;
}

void write_ptm_json(std::ostream& os, const PTM& ptm) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < 4; ++j) row.push_back(ptm.matrix(i, j));
        rows.push_back(row);
    }
    nlohmann::json doc{{"basis", {"I", "X", "Y", "Z"}}, {"matrix", rows}};
    os << doc.dump(2) << '\n';
}

SpamModel SpamModel::device() {
    return {0.93, misassignment_probability(ReadoutParams::device(), 2.0)};
}

std::array<Bloch, 4> canonical_inputs() {
    const Ket up(CVector::Unit(2, 0));
    const QubitMatrix preps[4] = {pauli(0), qubit_rotation(Axis::y, std::numbers::pi / 2),
                                  qubit_rotation(Axis::x, 3 * std::numbers::pi / 2),
                                  qubit_rotation(Axis::x, std::numbers::pi)};
    std::array<Bloch, 4> out;
    for (int k = 0; k < 4; ++k) {
        const CVector psi = preps[k] * up.amplitudes();
        out[static_cast<std::size_t>(k)] =
            qubit_bloch(DensityMatrix(CMatrix(psi * psi.adjoint()), DensityMatrix::Unchecked{}));
    }
    return out;
}

ProcessTomography simulate_process_tomography(const QubitMatrix& gate, const GateNoise& noise,
                                              const SpamModel& spam) {
    if (!(spam.p_alpha >= 0.5 && spam.p_alpha <= 1.0))
        throw InputError("preparation probability must lie in [0.5, 1]");
    if (!(spam.meas_error >= 0.0 && spam.meas_error <= 0.5))
        throw InputError("measurement error must lie in [0, 0.5]");
    if (!(noise.duration >= 0.0 && noise.T_alpha >= 0.0 && noise.T_C >= 0.0))
        throw InputError("gate duration and lifetimes must be non-negative");
    auto decay = [&](double T) { return T > 0.0 ? std::exp(-noise.duration / T) : 1.0; };
    const double prep = 2.0 * spam.p_alpha - 1.0;
    const double meas = 1.0 - 2.0 * spam.meas_error;
    const double dz = decay(noise.T_alpha);
    const double dxy = decay(noise.T_C);

    ProcessTomography res;
    res.inputs = canonical_inputs();
    res.ideal = ptm_from_unitary(gate);
    for (std::size_t k = 0; k < 4; ++k) {
        const Bloch& in = res.inputs[k];
        const CMatrix rho_in =
            state_tomography({prep * in.x, prep * in.y, prep * in.z}).matrix();
        const DensityMatrix rho_gate(CMatrix(gate * rho_in * gate.adjoint()),
                                     DensityMatrix::Unchecked{});
        const Bloch out = qubit_bloch(rho_gate);
        res.outputs[k] = qubit_bloch(
            state_tomography({meas * dxy * out.x, meas * dxy * out.y, meas * dz * out.z}));
    }
    res.estimate = ptm_estimate(res.inputs, res.outputs);
    res.fidelity = gate_fidelity(res.estimate, res.ideal);
    return res;
}

}  // namespace kerrcat
