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


#include "kerrcat/filter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <nlohmann/json.hpp>

#include "kerrcat/errors.hpp"
#include "kerrcat/parallel.hpp"

namespace kerrcat::filter {

namespace {

constexpr cplx kJ{0.0, 1.0};

double to_db(cplx s) {
    const double m = std::abs(s);
    return m > 0.0 ? 20.0 * std::log10(m) : -std::numeric_limits<double>::infinity();
}

}  // namespace

void NetworkElement::validate() const {
    if (!(impedance > 0.0)) throw InputError("element impedance must be positive");
    if (!(f_ref > 0.0)) throw InputError("element reference frequency must be positive");
    if (!std::isfinite(electrical_length_at_ref) || electrical_length_at_ref < 0.0)
        throw InputError("electrical length must be finite and non-negative");
}

TwoPortABCD abcd_of(const NetworkElement& element, double f_ghz) {
    element.validate();
    if (!(f_ghz > 0.0)) throw InputError("frequency must be positive");
    const double theta = element.electrical_length(f_ghz);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if (element.kind == ElementKind::line_segment) {
        const double z = element.impedance;
        return {c, kJ * z * s, kJ * s / z, c};
    }
    // Open stub: shunt Y = j tan(theta) / Z_s, capped near resonance.
    double y = std::abs(c) < 1e-12 ? std::copysign(kMaxStubAdmittance, s * c)
                                   : s / (c * element.impedance);
    y = std::clamp(y, -kMaxStubAdmittance, kMaxStubAdmittance);
    return {1.0, 0.0, kJ * y, 1.0};
}

TwoPortABCD cascade(std::span<const NetworkElement> elements, double f_ghz) {
    TwoPortABCD net;
    for (const auto& e : elements) net = net * abcd_of(e, f_ghz);
    return net;
}

cplx s21(const TwoPortABCD& net, double z0) {
    if (!(z0 > 0.0)) throw InputError("reference impedance must be positive");
    return 2.0 / (net.a + net.b / z0 + net.c * z0 + net.d);
}

cplx s11(const TwoPortABCD& net, double z0) {
    if (!(z0 > 0.0)) throw InputError("reference impedance must be positive");
    return (net.a + net.b / z0 - net.c * z0 - net.d) / (net.a + net.b / z0 + net.c * z0 + net.d);
}

void NotchDesign::validate() const {
    if (!(f_notch > 0.0)) throw InputError("notch frequency must be positive");
    if (n_stubs < 1) throw InputError("filter needs at least one stub");
    if (!(spacing >= 0.0)) throw InputError("stub spacing must be non-negative");
    if (!(z_stub > 0.0) || !(z_line > 0.0)) throw InputError("filter impedances must be positive");
}

std::vector<NetworkElement> design_notch_filter(const NotchDesign& design) {
    design.validate();
    std::vector<NetworkElement> out;
    const NetworkElement stub{ElementKind::open_stub, std::numbers::pi / 2, design.z_stub, design.f_notch};
    const NetworkElement line{ElementKind::line_segment, design.spacing, design.z_line, design.f_notch};
    for (int k = 0; k < design.n_stubs; ++k) {
        if (k > 0) out.push_back(line);
        out.push_back(stub);
    }
    return out;
}

std::vector<SweepPoint> sweep(std::span<const NetworkElement> elements, double f_lo, double f_hi,
                              int points, double z0) {
    if (points < 2) throw InputError("sweep needs at least two points");
    if (!(f_lo > 0.0) || !(f_hi > f_lo)) throw InputError("sweep needs 0 < f_lo < f_hi");
    std::vector<SweepPoint> out(static_cast<std::size_t>(points));
    const double step = (f_hi - f_lo) / (points - 1);
    parallel_for(points, [&](int k) {
        const double f = f_lo + step * k;
        const TwoPortABCD net = cascade(elements, f);
        const cplx t = s21(net, z0);
        const cplx r = s11(net, z0);
        out[static_cast<std::size_t>(k)] = {f, to_db(t), to_db(r), std::norm(t) + std::norm(r) - 1.0};
    });
    return out;
}

double stopband_width(std::span<const SweepPoint> points, double f_center, double level_db) {
    if (points.empty()) return 0.0;
    const auto nearest = std::min_element(points.begin(), points.end(), [&](const auto& l, const auto& r) {
        return std::abs(l.f_ghz - f_center) < std::abs(r.f_ghz - f_center);
    });
    if (nearest->s21_db > level_db) return 0.0;
    auto lo = nearest;
    auto hi = nearest;
    while (lo != points.begin() && std::prev(lo)->s21_db <= level_db) --lo;
    while (std::next(hi) != points.end() && std::next(hi)->s21_db <= level_db) ++hi;
    return hi->f_ghz - lo->f_ghz;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> points) {
    os << "f_GHz,S21_dB,S11_dB\n";
    char buf[96];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", p.f_ghz, p.s21_db, p.s11_db);
        os << buf;
    }
}

void write_design_json(std::ostream& os, const NotchDesign& design,
                       std::span<const NetworkElement> elements) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : elements) {
        list.push_back({{"kind", e.kind == ElementKind::open_stub ? "open_stub" : "line_segment"},
                        {"electrical_length_rad", e.electrical_length_at_ref},
                        {"impedance_ohm", e.impedance},
                        {"f_ref_GHz", e.f_ref}});
    }
    const nlohmann::json doc{{"f_notch_GHz", design.f_notch},
                             {"n_stubs", design.n_stubs},
                             {"spacing_rad", design.spacing},
                             {"z_stub_ohm", design.z_stub},
                             {"z_line_ohm", design.z_line},
                             {"elements", list}};
    os << doc.dump(2) << '\n';
}

}  // namespace kerrcat::filter
