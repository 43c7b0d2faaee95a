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

#ifndef KERRCAT_ERRORS_HPP
#define KERRCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kerrcat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when a configuration or input parameter set is unusable. The CLI
/// maps this family to exit code 2.
class InputError : public Error {
   public:
    using Error::Error;
};

/// Raised when a numerical procedure cannot produce a trustworthy result.
/// The CLI maps this family to exit code 3.
class NumericalError : public Error {
   public:
    using Error::Error;
};

#define KERRCAT_DEFINE_ERROR(Name, Base) \
    class Name : public Base {           \
       public:                           \
        using Base::Base;                \
    }

KERRCAT_DEFINE_ERROR(DimMismatch, InputError);
KERRCAT_DEFINE_ERROR(TruncationTooSmall, InputError);
KERRCAT_DEFINE_ERROR(DegenerateCat, InputError);
KERRCAT_DEFINE_ERROR(NotHermitian, InputError);
KERRCAT_DEFINE_ERROR(ResonantDriveSingularity, InputError);
KERRCAT_DEFINE_ERROR(DegenerateModes, InputError);
KERRCAT_DEFINE_ERROR(ZeroG3, InputError);
KERRCAT_DEFINE_ERROR(NonPositiveTemperature, InputError);
KERRCAT_DEFINE_ERROR(OutOfWindow, InputError);
KERRCAT_DEFINE_ERROR(ZeroDrive, InputError);
KERRCAT_DEFINE_ERROR(SingularDesign, InputError);
KERRCAT_DEFINE_ERROR(ConfigInvalid, InputError);

KERRCAT_DEFINE_ERROR(StepSizeUnderflow, NumericalError);
KERRCAT_DEFINE_ERROR(NonFiniteState, NumericalError);
KERRCAT_DEFINE_ERROR(FitDiverged, NumericalError);
KERRCAT_DEFINE_ERROR(ExperimentFailed, NumericalError);

#undef KERRCAT_DEFINE_ERROR

}  // namespace kerrcat

#endif  // KERRCAT_ERRORS_HPP
