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


#ifndef KERRCAT_FILTER_HPP
#define KERRCAT_FILTER_HPP

#include <complex>
#include <numbers>
#include <ostream>
#include <span>
#include <vector>

namespace kerrcat::filter {

using cplx = std::complex<double>;

enum class ElementKind { line_segment, open_stub };

/// Lossless TEM element. The electrical length (radians) is quoted at
/// f_ref (GHz) and scales linearly with frequency.
struct NetworkElement {
    ElementKind kind = ElementKind::line_segment;
    double electrical_length_at_ref = 0.0;
    double impedance = 50.0;
    double f_ref = 1.0;

    double electrical_length(double f_ghz) const { return electrical_length_at_ref * f_ghz / f_ref; }
    void validate() const;
};

struct TwoPortABCD {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    TwoPortABCD operator*(const TwoPortABCD& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    cplx determinant() const { return a * d - b * c; }
};

/// Shunt admittance magnitude cap at stub resonance (siemens).
inline constexpr double kMaxStubAdmittance = 1e12;

TwoPortABCD abcd_of(const NetworkElement& element, double f_ghz);
TwoPortABCD cascade(std::span<const NetworkElement> elements, double f_ghz);

cplx s21(const TwoPortABCD& net, double z0);
cplx s11(const TwoPortABCD& net, double z0);

struct NotchDesign {
    double f_notch = 5.9;
    int n_stubs = 3;
    /// Line length between stubs, radians at f_notch.
    double spacing = std::numbers::pi / 2;
    double z_stub = 50.0;
    double z_line = 90.0;

    void validate() const;
};

/// stub, line, stub, ..., stub with every stub a quarter wave at f_notch.
std::vector<NetworkElement> design_notch_filter(const NotchDesign& design);

struct SweepPoint {
    double f_ghz = 0.0;
    double s21_db = 0.0;
    double s11_db = 0.0;
    /// |S11|^2 + |S21|^2 - 1
    double power_error = 0.0;
};

/// Uniform grid of `points` frequencies in [f_lo, f_hi] GHz.
std::vector<SweepPoint> sweep(std::span<const NetworkElement> elements, double f_lo, double f_hi,
                              int points, double z0 = 50.0);

/// Width (GHz) of the contiguous run of points at or below `level_db`
/// that contains the point nearest `f_center`; zero if that point is above.
double stopband_width(std::span<const SweepPoint> points, double f_center, double level_db);

void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> points);
void write_design_json(std::ostream& os, const NotchDesign& design,
                       std::span<const NetworkElement> elements);

}  // namespace kerrcat::filter

#endif  // KERRCAT_FILTER_HPP
