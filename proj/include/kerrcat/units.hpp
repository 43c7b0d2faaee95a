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

#ifndef KERRCAT_UNITS_HPP
#define KERRCAT_UNITS_HPP

#include <numbers>

// Internal units: hbar = 1, angular frequencies in rad/us, times in us,
// temperatures in mK. Decay rates (kappa) are in 1/us.
namespace kerrcat::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// hbar / k_B expressed in mK * us / rad: hbar*omega/(k_B*T) equals
/// kThermalFactor * omega[rad/us] / T[mK].
inline constexpr double kThermalFactor = 1.054571817e-34 / 1.380649e-23 * 1e6 / 1e-3;

/// Cyclic frequency in MHz -> angular frequency in rad/us.
constexpr double from_mhz(double f_mhz) { return kTwoPi * f_mhz; }
/// Cyclic frequency in GHz -> angular frequency in rad/us.
constexpr double from_ghz(double f_ghz) { return kTwoPi * 1e3 * f_ghz; }
/// Cyclic frequency in kHz -> angular frequency in rad/us.
constexpr double from_khz(double f_khz) { return kTwoPi * 1e-3 * f_khz; }

constexpr double to_mhz(double omega) { return omega / kTwoPi; }
constexpr double to_ghz(double omega) { return omega / (kTwoPi * 1e3); }

/// Decay rate quoted in Hz (events per second) -> 1/us.
constexpr double rate_from_hz(double hz) { return hz * 1e-6; }

}  // namespace kerrcat::units

#endif  // KERRCAT_UNITS_HPP
