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

#include <string>
#include <vector>

#include "photonxfer/numerics.hpp"

namespace photonxfer {

/// Required distance of the drift spectrum from the imaginary axis.
inline constexpr double kHurwitzMargin = 1e-12;

/// A passive linear quantum network with n internal modes and m field
/// channels,
///
///   da/dt = A a - C^H S b,    b_out = C a + S b,    A = -i Omega - C^H C / 2.
///
/// Shapes: omega is n x n, coupling (C) is m x n with one row per channel and
/// one column per mode, scattering (S) is m x m. The constructor checks shapes
/// only; structural properties are reported by validate().
class PassiveSystem {
 public:
  PassiveSystem(ComplexMatrix omega, ComplexMatrix coupling,
                ComplexMatrix scattering);

  /// Builds the system whose drift matrix is `drift`, i.e.
  /// Omega = i (A + C^H C / 2). Throws PreconditionError when that Omega is
  /// not Hermitian within tol (the drift is not passive for this C).
  static PassiveSystem from_drift(const ComplexMatrix& drift,
                                  ComplexMatrix coupling,
                                  ComplexMatrix scattering,
                                  double tol = kStructuralTol);

  Eigen::Index modes() const noexcept { return omega_.rows(); }
  Eigen::Index channels() const noexcept { return scattering_.rows(); }

  const ComplexMatrix& omega() const noexcept { return omega_; }
  const ComplexMatrix& coupling() const noexcept { return coupling_; }
  const ComplexMatrix& scattering() const noexcept { return scattering_; }
  /// A = -i Omega - C^H C / 2, computed once at construction.
  const ComplexMatrix& drift() const noexcept { return drift_; }

 private:
  ComplexMatrix omega_;
  ComplexMatrix coupling_;
  ComplexMatrix scattering_;
  ComplexMatrix drift_;
};

/// A = -i Omega - C^H C / 2.
ComplexMatrix drift_matrix(const PassiveSystem& sys);

struct ValidationReport {
  double hermiticity_defect = 0.0;  // ||Omega - Omega^H||_F
  double unitarity_defect = 0.0;    // ||S^H S - I||_F
  double hurwitz_margin_found = 0.0;  // -max Re lambda(A)
  bool passed = false;
  std::vector<std::string> messages;
};

ValidationReport validate(const PassiveSystem& sys,
                          double tol = kStructuralTol,
                          double hurwitz_margin = kHurwitzMargin);

/// Throws PreconditionError carrying the report messages unless validate()
/// passes.
void require_valid(const PassiveSystem& sys, double tol = kStructuralTol);

/// Block-diagonal composition of two independent networks.
PassiveSystem direct_sum(const PassiveSystem& first,
                         const PassiveSystem& second);

/// Places a static unitary in front of the inputs: S <- S * s_static. A and C
/// are unchanged, so G_new(s) = G_old(s) * s_static.
PassiveSystem prepend_scattering(const PassiveSystem& sys,
                                 const ComplexMatrix& s_static,
                                 double tol = kStructuralTol);

/// Real two-port beam splitter [[alpha, beta], [beta, -alpha]] with
/// transmissivity alpha and reflectivity beta, alpha^2 + beta^2 = 1.
ComplexMatrix beam_splitter(double alpha, double beta,
                            double tol = kStructuralTol);

}  // namespace photonxfer
