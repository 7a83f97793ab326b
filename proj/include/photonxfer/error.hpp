// Copyright 2026 The photonxfer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace photonxfer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (non-unitary S, unnormalized
/// coefficients, non-Hurwitz drift, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An algorithm did not converge or its result failed a residual check.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// The requested evaluation point lies within tolerance of a pole.
class PoleProximityError : public Error {
 public:
  using Error::Error;
};

/// Arguments too large for a finite double-precision result.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A configuration or data file is malformed. The message names the field.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A time integrator produced a non-finite state.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A time step exceeds the stability bound of the integrator.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, double dt_max)
      : Error(what), dt_max_(dt_max) {}
  double dt_max() const noexcept { return dt_max_; }

 private:
  double dt_max_;
};

}  // namespace photonxfer
