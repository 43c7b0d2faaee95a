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


#include "kerrcat/fit.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "kerrcat/errors.hpp"

namespace kerrcat {

namespace {

constexpr double kLogThreshold = 0.05;

struct LinearSolve {
    double amplitude;
    double offset;
    double ssr;
};

LinearSolve solve_linear(std::span<const double> t, std::span<const double> y, double tau,
                         bool with_offset) {
    const std::size_t n = t.size();
    double see = 0.0, se = 0.0, sey = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::exp(-t[i] / tau);
        see += e * e;
        se += e;
        sey += e * y[i];
        sy += y[i];
    }
    double a = 0.0, c = 0.0;
    if (with_offset) {
        const double det = see * n - se * se;
        if (std::abs(det) < 1e-300) {
            a = see > 0.0 ? sey / see : 0.0;
        } else {
            a = (sey * n - se * sy) / det;
            c = (see * sy - se * sey) / det;
        }
    } else {
        a = see > 0.0 ? sey / see : 0.0;
    }
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - a * std::exp(-t[i] / tau) - c;
        ssr += r * r;
    }
    return {a, c, ssr};
}

}  // namespace

ExpFit fit_exponential(std::span<const double> t, std::span<const double> y, bool with_offset) {
    if (t.size() != y.size()) throw DimMismatch("fit_exponential: length mismatch");

    // Log-linear start on the window where the signal is clearly positive.
    double s1 = 0.0, st = 0.0, stt = 0.0, sl = 0.0, stl = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(y[i] > kLogThreshold)) continue;
        const double l = std::log(y[i]);
        s1 += 1.0;
        st += t[i];
        stt += t[i] * t[i];
        sl += l;
        stl += t[i] * l;
        ++used;
    }
    if (used < 3) throw FitDiverged("fit_exponential: fewer than 3 samples above threshold");
    const double det = s1 * stt - st * st;
    const double slope = det != 0.0 ? (s1 * stl - st * sl) / det : 0.0;
    const double span = t.back() - t.front();
    double tau0 = slope < 0.0 ? -1.0 / slope : 10.0 * span;
    if (!std::isfinite(tau0) || tau0 <= 0.0) tau0 = span;

    const double lo = std::log(tau0 / 200.0);
    const double hi = std::log(tau0 * 200.0);
    auto objective = [&](double log_tau) {
        return solve_linear(t, y, std::exp(log_tau), with_offset).ssr;
    };
    const auto [log_tau, ssr] =
        boost::math::tools::brent_find_minima(objective, lo, hi, std::numeric_limits<double>::digits / 2);
    const double edge = 1e-3 * (hi - lo);
    if (log_tau - lo < edge || hi - log_tau < edge) {
        throw FitDiverged("fit_exponential: time constant ran to the edge of its bracket");
    }

    ExpFit fit;
    fit.tau = std::exp(log_tau);
    const LinearSolve lin = solve_linear(t, y, fit.tau, with_offset);
    fit.amplitude = lin.amplitude;
    fit.offset = lin.offset;
    const int params = with_offset ? 3 : 2;
    const double n = static_cast<double>(t.size());
    fit.rms_residual = std::sqrt(ssr / n);

    // Standard error of tau from the curvature of the profiled SSR.
    const double h = 1e-3 * fit.tau;
    const double f0 = solve_linear(t, y, fit.tau, with_offset).ssr;
    const double fp = solve_linear(t, y, fit.tau + h, with_offset).ssr;
    const double fm = solve_linear(t, y, fit.tau - h, with_offset).ssr;
    const double curv = (fp - 2.0 * f0 + fm) / (h * h);
    if (n > params && curv > 0.0) {
        fit.tau_stderr = std::sqrt(2.0 * (f0 / (n - params)) / curv);
    }
    return fit;
}

}  // namespace kerrcat
