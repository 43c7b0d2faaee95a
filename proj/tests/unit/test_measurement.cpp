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
#include <cstdlib>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "kerrcat/errors.hpp"
#include "kerrcat/measurement.hpp"
#include "kerrcat/units.hpp"

namespace kerrcat {
namespace {

constexpr double kPi = std::numbers::pi;

ReadoutParams quiet() {
    ReadoutParams r = ReadoutParams::device();
    r.noise_sigma = 0.0;
    return r;
}

TEST(CqrAmplitude, Formula) {
    ReadoutParams r = ReadoutParams::device();
    EXPECT_NEAR(std::abs(cqr_steady_amplitude(r, 2.0)), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(cqr_steady_amplitude(r, 4.0)), 1.0, 1e-12);
    r.eps_cqr = 0.0;
    EXPECT_EQ(std::abs(cqr_steady_amplitude(r, 2.0)), 0.0);
    r.kappa_r = 0.0;
    EXPECT_THROW(cqr_steady_amplitude(r, 2.0), InputError);
}

TEST(Readout, PerfectSeparationWithoutNoiseOrFlips) {
    const ReadoutParams r = quiet();
    const auto line = discrimination_line(r, 2.0);
    for (int sign : {1, -1}) {
        const auto shots = simulate_readout(sign, r, 2.0, 0.0, 5000, 3);
        for (const auto& s : shots) ASSERT_EQ(discriminate(s, line), sign);
    }
}

TEST(Readout, FlipProbabilityIsPoisson) {
    const ReadoutParams r = quiet();
    const double mu = pointer_separation(r, 2.0);
    const auto line = discrimination_line(r, 2.0);
    const std::size_t n = 200000;
    const auto shots = simulate_readout(1, r, 2.0, 1.0 / 600.0, n, 11);
    std::size_t flipped = 0;
    for (const auto& s : shots) {
        const double proj = std::real(std::conj(line.axis) * cplx(s.i, s.q));
        if (proj < mu * (1.0 - 1e-12)) ++flipped;
    }
    const double p = 1.0 - std::exp(-4.0 / 600.0);
    const double sd = std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR(static_cast<double>(flipped) / n, p, 3 * sd);
}

TEST(Readout, SeparationLinearInAlpha) {
    const ReadoutParams r = ReadoutParams::device();
    EXPECT_NEAR(pointer_separation(r, 4.0) / pointer_separation(r, 2.0), 2.0, 1e-12);
}

TEST(Discriminate, CentroidTieAndSwap) {
    const ReadoutParams r = ReadoutParams::device();
    const auto line = discrimination_line(r, 2.0);
    const cplx beta = cqr_steady_amplitude(r, 2.0);
    EXPECT_EQ(discriminate({beta.real(), beta.imag(), 1}, line), 1);
    EXPECT_EQ(discriminate({-beta.real(), -beta.imag(), -1}, line), -1);
    EXPECT_EQ(discriminate({0.0, 0.0, 1}, line), 1);
    const DiscriminationLine swapped{-line.axis};
    EXPECT_EQ(discriminate({beta.real(), beta.imag(), 1}, swapped), -1);
}

TEST(Readout, MisassignmentMatchesGaussianOverlap) {
    const ReadoutParams r = ReadoutParams::device();
    const auto line = discrimination_line(r, 2.0);
    const std::size_t n = 400000;
    const auto shots = simulate_readout(1, r, 2.0, 0.0, n, 5);
    std::size_t wrong = 0;
    for (const auto& s : shots) wrong += discriminate(s, line) != 1;
    const double p = 0.5 * std::erfc(pointer_separation(r, 2.0) / (r.noise_sigma * std::sqrt(2.0)));
    EXPECT_NEAR(misassignment_probability(r, 2.0), p, 1e-15);
    EXPECT_NEAR(static_cast<double>(wrong) / n, p, 3 * std::sqrt(p * (1 - p) / n));
}

TEST(Readout, SeedDeterminesShotsIndependentOfThreads) {
    const ReadoutParams r = ReadoutParams::device();
    ::setenv("KERRCAT_THREADS", "1", 1);
    const auto a = simulate_readout(1, r, 2.0, 0.01, 20000, 42);
    const double qa = qndness(r, 2.0, 0.01, 20000, 42);
    ::setenv("KERRCAT_THREADS", "3", 1);
    const auto b = simulate_readout(1, r, 2.0, 0.01, 20000, 42);
    const double qb = qndness(r, 2.0, 0.01, 20000, 42);
    ::unsetenv("KERRCAT_THREADS");
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        ASSERT_EQ(a[k].i, b[k].i);
        ASSERT_EQ(a[k].q, b[k].q);
    }
    EXPECT_EQ(qa, qb);
    const auto c = simulate_readout(1, r, 2.0, 0.01, 20000, 43);
    EXPECT_NE(a[0].i, c[0].i);
}

TEST(Qnd, PerfectWithoutFlipsAtHighSnr) {
    ReadoutParams r = ReadoutParams::device();
    r.noise_sigma = 0.05;
    EXPECT_GT(qndness(r, 2.0, 0.0, 20000, 1), 0.9999);
}

TEST(Qnd, DecreasesWithFlipRate) {
    const ReadoutParams r = ReadoutParams::device();
    double prev = 2.0;
    for (double rate : {0.0, 1e-3, 1e-2, 3e-2, 1e-1}) {
        const double q = qndness(r, 2.0, rate, 100000, 9);
        EXPECT_LT(q, prev) << rate;
        prev = q;
    }
}

TEST(Qnd, BracketsMeasuredValuesAtDefaults) {
    const ReadoutParams r = ReadoutParams::device();
    const double q4 = qndness(r, 2.0, 1.0 / 600.0, 100000, 2026);
    const double q8 = qndness(r, std::sqrt(8.0), 1.0 / 950.0, 100000, 2026);
    EXPECT_GE(q4, 0.975);
    EXPECT_LE(q4, 0.995);
    EXPECT_GT(q8, q4);
}

TEST(Qnd, ShotsCsv) {
    const ReadoutParams r = ReadoutParams::device();
    const auto shots = simulate_readout(-1, r, 2.0, 0.0, 3, 1);
    std::ostringstream os;
    write_shots_csv(os, shots, discrimination_line(r, 2.0));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "i,q,label_true,label_assigned");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, 3);
}

TEST(StateTomography, PoleStatesAndProjection) {
    const auto z = state_tomography({0, 0, 1}).matrix();
    EXPECT_NEAR(std::abs(z(0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(z.cwiseAbs().sum(), 1.0, 1e-12);

    const auto x = state_tomography({1, 0, 0}).matrix();
    CVector c_plus(2);
    c_plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    EXPECT_NEAR((x - c_plus * c_plus.adjoint()).norm(), 0.0, 1e-12);

    // Out-of-ball estimate maps to the pure state along the same direction.
    const Bloch b{0.9, 0.5, 0.5};
    const double n = std::sqrt(0.81 + 0.25 + 0.25);
    const auto rho = state_tomography(b);
    EXPECT_GE(rho.min_eigenvalue(), -1e-12);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
    const Bloch got = qubit_bloch(rho);
    EXPECT_NEAR(got.x, 0.9 / n, 1e-10);
    EXPECT_NEAR(got.y, 0.5 / n, 1e-10);
    EXPECT_NEAR(got.z, 0.5 / n, 1e-10);
}

std::array<Bloch, 4> apply_ptm(const std::array<Bloch, 4>& in, const Eigen::Matrix4d& r) {
    std::array<Bloch, 4> out;
    for (std::size_t k = 0; k < 4; ++k) {
        const Eigen::Vector4d v = r * Eigen::Vector4d(1, in[k].x, in[k].y, in[k].z);
        out[k] = {v(1), v(2), v(3)};
    }
    return out;
}

TEST(PtmEstimate, KnownChannels) {
    const auto in = canonical_inputs();
    EXPECT_NEAR((ptm_estimate(in, in).matrix - Eigen::Matrix4d::Identity()).norm(), 0.0, 1e-12);

    Eigen::Matrix4d zrot = Eigen::Matrix4d::Zero();
    zrot(0, 0) = 1;
    zrot(3, 3) = 1;
    zrot(2, 1) = 1;
    zrot(1, 2) = -1;
    EXPECT_NEAR((ptm_from_unitary(qubit_rotation(Axis::z, kPi / 2)).matrix - zrot).norm(), 0.0, 1e-12);
    EXPECT_NEAR((ptm_estimate(in, apply_ptm(in, zrot)).matrix - zrot).norm(), 0.0, 1e-10);

    const double p = 0.3;
    std::array<Bloch, 4> dep;
    for (std::size_t k = 0; k < 4; ++k) dep[k] = {(1 - p) * in[k].x, (1 - p) * in[k].y, (1 - p) * in[k].z};
    const Eigen::Vector4d diag(1, 1 - p, 1 - p, 1 - p);
    EXPECT_NEAR((ptm_estimate(in, dep).matrix - Eigen::Matrix4d(diag.asDiagonal())).norm(), 0.0, 1e-10);
}

TEST(PtmEstimate, CoplanarInputsAreSingular) {
    const std::array<Bloch, 4> in{{{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}}};
    EXPECT_THROW(ptm_estimate(in, in), SingularDesign);
    EXPECT_THROW(ptm_estimate(std::span(in).first(3), std::span(in).first(3)), SingularDesign);
}

TEST(GateFidelity, ReferenceValues) {
    const PTM id;
    EXPECT_DOUBLE_EQ(gate_fidelity(id, id), 1.0);
    PTM dep;
    dep.matrix = Eigen::Matrix4d::Zero();
    dep.matrix(0, 0) = 1;
    EXPECT_DOUBLE_EQ(gate_fidelity(dep, id), 0.5);
    EXPECT_TRUE(dep.is_valid());
}

TEST(GateFidelity, InvariantUnderCommonFrameRotation) {
    const PTM ideal = ptm_from_unitary(qubit_rotation(Axis::x, kPi / 2));
    PTM exp = ideal;
    exp.matrix.bottomRightCorner<3, 3>() *= 0.9;
    const Eigen::Matrix4d o = ptm_from_unitary(qubit_rotation(Axis::y, 0.7) *
                                               qubit_rotation(Axis::z, 1.3)).matrix;
    PTM ideal_r, exp_r;
    ideal_r.matrix = o * ideal.matrix * o.transpose();
    exp_r.matrix = o * exp.matrix * o.transpose();
    EXPECT_NEAR(gate_fidelity(exp_r, ideal_r), gate_fidelity(exp, ideal), 1e-12);
}

TEST(ProcessTomography, NoiselessRecovery) {
    for (const QubitMatrix& g : {qubit_rotation(Axis::z, 0.0), qubit_rotation(Axis::x, kPi / 2),
                                 qubit_rotation(Axis::z, kPi / 2)}) {
        const auto res = simulate_process_tomography(g, {}, SpamModel::none());
        EXPECT_LT((res.estimate.matrix - res.ideal.matrix).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_NEAR(res.fidelity, 1.0, 1e-12);
    }
}

TEST(ProcessTomography, SpamLimitedFidelities) {
    const SpamModel spam = SpamModel::device();
    const double fx = simulate_process_tomography(qubit_rotation(Axis::x, kPi / 2), {0.32, 600.0, 5.0}, spam).fidelity;
    const double fz = simulate_process_tomography(qubit_rotation(Axis::z, kPi / 2), {0.12, 600.0, 5.0}, spam).fidelity;
    const auto fi = simulate_process_tomography(qubit_rotation(Axis::z, 0.0), {0.0, 600.0, 5.0}, spam);
    for (double f : {fx, fz, fi.fidelity}) {
        EXPECT_GE(f, 0.85);
        EXPECT_LE(f, 0.97);
    }
    EXPECT_LT(fx, fz);
    EXPECT_LT(fz, fi.fidelity);
    EXPECT_TRUE(fi.estimate.is_valid());
}

TEST(ProcessTomography, PtmJson) {
    const PTM r = ptm_from_unitary(qubit_rotation(Axis::x, kPi / 2));
    std::ostringstream os;
    write_ptm_json(os, r);
    const auto doc = nlohmann::json::parse(os.str());
    EXPECT_EQ(doc["basis"].size(), 4u);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(doc["matrix"][i][j].get<double>(), r.matrix(i, j));
}

}  // namespace
}  // namespace kerrcat
