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


#ifndef KERRCAT_FIT_HPP
#define KERRCAT_FIT_HPP

#include <span>

namespace kerrcat {

struct ExpFit {
    double amplitude = 0.0;
    double tau = 0.0;
    double offset = 0.0;
    double tau_stderr = 0.0;
    double rms_residual = 0.0;
};

/// Fits y = A exp(-t/tau) (+ C when with_offset). The starting value comes
/// from a linear fit of log(y) over the samples with y > 0.05; tau is then
/// refined by a 1-D minimization with A (and C) solved linearly at each tau.
/// Throws FitDiverged when fewer than three samples clear the threshold or
/// the minimizer ends on its bracket.
ExpFit fit_exponential(std::span<const double> t, std::span<const double> y, bool with_offset);

}  // namespace kerrcat

#endif  // KERRCAT_FIT_HPP
