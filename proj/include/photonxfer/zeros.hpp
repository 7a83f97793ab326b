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

// Transfer function and zero structure of a passive network.
//
// For a Hurwitz passive realization every transmission zero is an eigenvalue
// z of -A^H, and the annihilated input direction is u = S^H C v where v is the
// matching eigenvector. Zeros are therefore enumerated from eig(-A^H); the
// rank drop of G(z) is used only as a residual check.

#pragma once

#include <vector>

#include "photonxfer/model.hpp"

namespace photonxfer {

/// Relative distance below which an evaluation point is treated as a pole.
inline constexpr double kPoleTol = 1e-10;
/// Relative threshold on ||G(z)||_F (and ||G(z) u||) for exact zeros.
inline constexpr double kBlockingTol = 1e-8;

struct ZeroOptions {
  double blocking_tol = kBlockingTol;
  double pole_tol = kPoleTol;
  double structural_tol = kStructuralTol;
};

struct ZeroRecord {
  Complex z;
  /// Unit-norm input direction with G(z) u = 0; the first component of
  /// largest magnitude is real and nonnegative.
  ComplexVector u;
  /// Eigenvector of -A^H scaled so that u = S^H C v holds exactly.
  ComplexVector v;
  /// Unit eigenvector of -A^H as returned by eig().
  ComplexVector v_unit;
  /// S^H C v_unit, before normalization.
  ComplexVector u_raw;
  /// ||G(z) u||_2.
  double residual = 0.0;
  bool is_blocking = false;
};

/// G(s) = [I - C (sI - A)^{-1} C^H] S, via an LU solve. Throws
/// PoleProximityError when s is within pole_tol * max(1, ||A||_F) of an
/// eigenvalue of A.
ComplexMatrix transfer_at(const PassiveSystem& sys, Complex s,
                          double pole_tol = kPoleTol);

/// V = (zI - A)^{-1} C^H S (n x m). At a blocking zero C V = S.
ComplexMatrix v_matrix(const PassiveSystem& sys, Complex z,
                       double pole_tol = kPoleTol);

/// One record per eigenpair of -A^H (n records counting multiplicity), in
/// the eigenvalue order of eig(). Throws PreconditionError for systems that
/// fail validation and NumericalFailure if a record misses its residual
/// bound.
std::vector<ZeroRecord> transmission_zeros(const PassiveSystem& sys,
                                           const ZeroOptions& opts = {});

/// The records of transmission_zeros() at which G(z) vanishes entirely.
std::vector<ZeroRecord> blocking_zeros(const PassiveSystem& sys,
                                       const ZeroOptions& opts = {});

}  // namespace photonxfer
