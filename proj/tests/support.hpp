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

// Test-only oracles. Nothing here calls the library routine it is used to
// check: matrix exponentials come from a Taylor series, Lyapunov solutions
// from the Kronecker-product linear system, integrals from Simpson sums over
// exact step propagators.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "photonxfer/pulses.hpp"
#include "photonxfer/simulate.hpp"

namespace photonxfer::testing {

/// Entries uniform in the unit square of the complex plane.
ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows,
                            Eigen::Index cols);

/// Haar-like unitary from the QR factors of a Gaussian matrix.
ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index size);

ComplexVector random_unit_vector(std::mt19937_64& rng, Eigen::Index size);

struct EnsembleOptions {
  Eigen::Index max_modes = 5;
  Eigen::Index max_channels = 3;
  /// Rejection bounds: -max Re lambda(A) >= min_margin and
  /// max |lambda(A)| <= max_stiffness * min |Re lambda(A)|.
  double min_margin = 0.05;
  double max_stiffness = 40.0;
};

/// Random valid passive system with the given sizes, rejection-sampled
/// against the ensemble bounds.
PassiveSystem random_system(std::mt19937_64& rng, Eigen::Index modes,
                            Eigen::Index channels,
                            const EnsembleOptions& opts = {});

/// `count` systems with sizes drawn uniformly from 1..max_modes and
/// 1..max_channels. Deterministic in `seed`.
std::vector<PassiveSystem> random_ensemble(std::uint64_t seed, int count,
                                           const EnsembleOptions& opts = {});

/// e^{M t} by scaling and squaring of a 30-term Taylor series.
ComplexMatrix taylor_expm(const ComplexMatrix& m, double t);

/// Solves A X + X A^H + Q = 0 through the n^2 x n^2 Kronecker system.
ComplexMatrix kronecker_lyapunov(const ComplexMatrix& a,
                                 const ComplexMatrix& q);

/// int_{t0}^0 Xi(t) Xi(t)^H dt by composite Simpson with `intervals` (even)
/// sub-intervals.
ComplexMatrix gram_quadrature(const PassiveSystem& sys, double t0,
                              int intervals);

/// int_{t0}^0 ||plan(t)||^2 dt by composite Simpson.
double pulse_energy(const PulsePlan& plan, double t0, int intervals);

/// Dense Eigen RK4 of the amplitude equations on the grid t0 + k dt with
/// the input evaluated through PulsePlan::at. Returns psi(0).
ComplexVector reference_rk4(const PassiveSystem& sys, const PulsePlan& plan,
                            double t0, int steps);

/// sqrt(1 - |<a, b>|^2 / (|a| |b|)^2), the sine of the angle between rays.
double ray_angle(const ComplexVector& a, const ComplexVector& b);

}  // namespace photonxfer::testing
