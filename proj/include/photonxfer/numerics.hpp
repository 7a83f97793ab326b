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

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace photonxfer {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Tolerance for structural checks (Hermiticity, unitarity, residuals).
inline constexpr double kStructuralTol = 1e-9;
/// Tolerance for comparisons against independent oracles.
inline constexpr double kOracleTol = 1e-6;
/// Eigenvalues closer than this are treated as one degenerate group.
inline constexpr double kDegenerateGroupTol = 1e-8;

/// ||a - b||_F <= tol. Shapes must agree, otherwise false.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// Multiplies v by a unit phase so that its first component of largest
/// magnitude is real and nonnegative. Returns the applied phase factor.
/// Components within a relative 1e-12 of the maximum count as ties.
Complex align_phase(ComplexVector& v);

/// Eigenpairs of a square complex matrix.
///
/// Values are sorted by real part descending, then imaginary part ascending.
/// Each vector has unit 2-norm and its largest-magnitude component rotated to
/// the positive real axis. Vectors that belong to one degenerate group are
/// orthonormalized against each other.
struct EigenDecomposition {
  std::vector<Complex> values;
  std::vector<ComplexVector> vectors;

  std::size_t size() const noexcept { return values.size(); }
};

/// Full eigendecomposition. Throws DimensionError for non-square input and
/// NumericalFailure when the QR iteration does not converge or the matrix is
/// defective (a degenerate group has fewer independent vectors than members).
EigenDecomposition eig(const ComplexMatrix& m,
                       double group_tol = kDegenerateGroupTol);

/// Largest real part over the spectrum; negative iff the matrix is Hurwitz.
double spectral_abscissa(const ComplexMatrix& m);

/// e^{M t}. Throws RangeError when the result is not representable.
ComplexMatrix expm(const ComplexMatrix& m, double t);

/// e^{M t} v.
ComplexVector expm_action(const ComplexMatrix& m, double t,
                          const ComplexVector& v);

/// Solves A X + X A^H + Q = 0 for Hermitian X (Bartels-Stewart on the
/// complex Schur form of A). A must be Hurwitz and Q Hermitian within tol.
ComplexMatrix solve_lyapunov(const ComplexMatrix& a, const ComplexMatrix& q,
                             double tol = kStructuralTol);

/// Solves A X + X B = C (Bartels-Stewart on the complex Schur forms of A and
/// B). Throws NumericalFailure when A and -B share an eigenvalue within tol.
ComplexMatrix solve_sylvester(const ComplexMatrix& a, const ComplexMatrix& b,
                              const ComplexMatrix& c,
                              double tol = kStructuralTol);

/// Right-hand side of dy/dt = f(t, y).
using OdeRhs = std::function<ComplexVector(double, const ComplexVector&)>;

struct OdeTrajectory {
  std::vector<double> times;
  std::vector<ComplexVector> states;
};

/// Classical fixed-step RK4 from t0 to t1. Samples are taken at
/// t0, t0 + dt, ..., t1; the last step is shortened to land on t1.
OdeTrajectory integrate_ode(const OdeRhs& f, const ComplexVector& y0,
                            double t0, double t1, double dt);

}  // namespace photonxfer
