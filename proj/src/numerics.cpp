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

#include "photonxfer/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "photonxfer/error.hpp"
#include "photonxfer/kernels.hpp"

namespace photonxfer {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x"
       << m.cols();
    throw DimensionError(os.str());
  }
}

bool all_finite(const ComplexMatrix& m) {
  return m.array().isFinite().all();
}

bool eigen_order(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() < b.imag();
}

}  // namespace

Complex align_phase(ComplexVector& v) {
  if (v.size() == 0) return Complex(1.0, 0.0);
  const double top = v.cwiseAbs().maxCoeff();
  if (!(top > 0.0)) return Complex(1.0, 0.0);
  Eigen::Index k = 0;
  while (std::abs(v(k)) < top * (1.0 - 1e-12)) ++k;
  const Complex phase = std::conj(v(k)) / std::abs(v(k));
  v *= phase;
  v(k) = Complex(v(k).real(), 0.0);
  return phase;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).norm() <= tol;
}

EigenDecomposition eig(const ComplexMatrix& m, double group_tol) {
  require_square(m, "eig");
  EigenDecomposition out;
  const Eigen::Index n = m.rows();
  if (n == 0) return out;
  if (!all_finite(m)) throw PreconditionError("eig: matrix has non-finite entries");

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, true);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eig: QR iteration did not converge (||M||_F = " << m.norm()
       << ", iteration limit " << 30 * n << ")";
    throw NumericalFailure(os.str());
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
    return eigen_order(vals(i), vals(j));
  });

  for (auto idx : order) {
    out.values.push_back(vals(idx));
    ComplexVector v = solver.eigenvectors().col(idx);
    v.normalize();
    align_phase(v);
    out.vectors.push_back(std::move(v));
  }

  // Group near-equal eigenvalues and orthonormalize within each group.
  std::size_t start = 0;
  while (start < out.size()) {
    std::size_t stop = start + 1;
    while (stop < out.size() &&
           std::abs(out.values[stop] - out.values[start]) <= group_tol) {
      ++stop;
    }
    for (std::size_t i = start + 1; i < stop; ++i) {
      ComplexVector v = out.vectors[i];
      for (std::size_t j = start; j < i; ++j) {
        v -= out.vectors[j].dot(v) * out.vectors[j];
      }
      const double kept = v.norm();
      if (kept < 1e-6) {
        std::ostringstream os;
        os << "eig: matrix is defective at eigenvalue " << out.values[start]
           << " (group of " << stop - start
           << " has linearly dependent eigenvectors)";
        throw NumericalFailure(os.str());
      }
      v /= kept;
      align_phase(v);
      out.vectors[i] = std::move(v);
    }
    start = stop;
  }

  const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double res =
        (m * out.vectors[i] - out.values[i] * out.vectors[i]).norm();
    if (!(res <= kStructuralTol * scale)) {
      std::ostringstream os;
      os << "eig: residual " << res << " for eigenvalue " << out.values[i]
         << " exceeds " << kStructuralTol << " * ||M||_F (||M||_F = "
         << m.norm() << ")";
      throw NumericalFailure(os.str());
    }
  }
  return out;
}

double spectral_abscissa(const ComplexMatrix& m) {
  require_square(m, "spectral_abscissa");
  if (m.rows() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("spectral_abscissa: eigenvalue iteration failed");
  }
  return solver.eigenvalues().real().maxCoeff();
}

ComplexMatrix expm(const ComplexMatrix& m, double t) {
  require_square(m, "expm");
  if (m.rows() == 0) return m;
  const ComplexMatrix scaled = m * t;
  if (!all_finite(scaled)) throw RangeError("expm: M t is not finite");
  ComplexMatrix result = scaled.exp();
  if (!all_finite(result)) {
    std::ostringstream os;
    os << "expm: e^{Mt} overflows double precision (||Mt||_F = "
       << scaled.norm() << "); shorten the time window";
    throw RangeError(os.str());
  }
  return result;
}

ComplexVector expm_action(const ComplexMatrix& m, double t,
                          const ComplexVector& v) {
  if (m.cols() != v.size()) {
    throw DimensionError("expm_action: matrix and vector sizes differ");
  }
  return expm(m, t) * v;
}

ComplexMatrix solve_lyapunov(const ComplexMatrix& a, const ComplexMatrix& q,
                             double tol) {
  require_square(a, "solve_lyapunov");
  require_square(q, "solve_lyapunov");
  if (a.rows() != q.rows()) {
    throw DimensionError("solve_lyapunov: A and Q sizes differ");
  }
  const Eigen::Index n = a.rows();
  if (n == 0) return q;
  const double q_norm = q.norm();
  if ((q - q.adjoint()).norm() > tol * std::max(1.0, q_norm)) {
    throw PreconditionError("solve_lyapunov: Q is not Hermitian");
  }

  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  if (schur.info() != Eigen::Success) {
    throw NumericalFailure("solve_lyapunov: Schur decomposition failed");
  }
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const double abscissa = t.diagonal().real().maxCoeff();
  if (!(abscissa < 0.0)) {
    std::ostringstream os;
    os << "solve_lyapunov: A is not Hurwitz (max Re lambda = " << abscissa
       << ")";
    throw PreconditionError(os.str());
  }

  // T Y + Y T^H = -U^H Q U, solved one column at a time from the right.
  const ComplexMatrix rhs = -(u.adjoint() * q * u);
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    ComplexVector col = rhs.col(j);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      col -= std::conj(t(j, k)) * y.col(k);
    }
    ComplexMatrix shifted = t;
    shifted.diagonal().array() += std::conj(t(j, j));
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(col);
  }
  ComplexMatrix x = u * y * u.adjoint();
  x = (0.5 * (x + x.adjoint())).eval();

  const double residual = (a * x + x * a.adjoint() + q).norm();
  if (residual > 1e-10 * std::max(q_norm, std::numeric_limits<double>::min())) {
    std::ostringstream os;
    os << "solve_lyapunov: residual " << residual << " exceeds 1e-10 * ||Q||_F";
    throw NumericalFailure(os.str());
  }
  return x;
}

ComplexMatrix solve_sylvester(const ComplexMatrix& a, const ComplexMatrix& b,
                              const ComplexMatrix& c, double tol) {
  require_square(a, "solve_sylvester");
  require_square(b, "solve_sylvester");
  if (c.rows() != a.rows() || c.cols() != b.rows()) {
    throw DimensionError("solve_sylvester: C must be rows(A) x rows(B)");
  }
  const Eigen::Index n = a.rows();
  const Eigen::Index r = b.rows();
  if (n == 0 || r == 0) return ComplexMatrix::Zero(n, r);

  Eigen::ComplexSchur<ComplexMatrix> schur_a(a);
  Eigen::ComplexSchur<ComplexMatrix> schur_b(b);
  if (schur_a.info() != Eigen::Success || schur_b.info() != Eigen::Success) {
    throw NumericalFailure("solve_sylvester: Schur decomposition failed");
  }
  const ComplexMatrix& ta = schur_a.matrixT();
  const ComplexMatrix& ua = schur_a.matrixU();
  const ComplexMatrix& tb = schur_b.matrixT();
  const ComplexMatrix& ub = schur_b.matrixU();
  const double scale = std::max({1.0, ta.norm(), tb.norm()});

  // Ta Y + Y Tb = Ua^H C Ub, solved one column at a time from the left.
  const ComplexMatrix rhs = ua.adjoint() * c * ub;
  ComplexMatrix y = ComplexMatrix::Zero(n, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    ComplexVector col = rhs.col(j);
    for (Eigen::Index k = 0; k < j; ++k) col -= tb(k, j) * y.col(k);
    ComplexMatrix shifted = ta;
    shifted.diagonal().array() += tb(j, j);
    if (shifted.diagonal().cwiseAbs().minCoeff() <= tol * scale) {
      throw NumericalFailure(
          "solve_sylvester: A and -B share an eigenvalue; no unique solution");
    }
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(col);
  }
  return ua * y * ub.adjoint();
}

OdeTrajectory integrate_ode(const OdeRhs& f, const ComplexVector& y0,
                            double t0, double t1, double dt) {
  if (!(t0 < t1)) throw PreconditionError("integrate_ode: requires t0 < t1");
  if (!(dt > 0.0)) throw PreconditionError("integrate_ode: requires dt > 0");

  const auto& k = kernels::active();
  const std::size_t n = static_cast<std::size_t>(y0.size());
  OdeTrajectory traj;
  traj.times.push_back(t0);
  traj.states.push_back(y0);

  ComplexVector y = y0;
  ComplexVector stage(y0.size());
  double t = t0;
  const double span = t1 - t0;
  std::size_t step = 0;
  while (t < t1) {
    ++step;
    double next = t0 + static_cast<double>(step) * dt;
    // Snap to t1 when the remainder is below rounding noise.
    if (next >= t1 || t1 - next <= 1e-12 * span) next = t1;
    const double h = next - t;

    const ComplexVector k1 = f(t, y);
    if (k1.size() != y.size()) {
      throw DimensionError("integrate_ode: derivative size differs from state");
    }
    stage = y;
    k.axpy(n, 0.5 * h, k1.data(), stage.data());
    const ComplexVector k2 = f(t + 0.5 * h, stage);
    stage = y;
    k.axpy(n, 0.5 * h, k2.data(), stage.data());
    const ComplexVector k3 = f(t + 0.5 * h, stage);
    stage = y;
    k.axpy(n, h, k3.data(), stage.data());
    const ComplexVector k4 = f(t + h, stage);

    k.axpy(n, h / 6.0, k1.data(), y.data());
    k.axpy(n, h / 3.0, k2.data(), y.data());
    k.axpy(n, h / 3.0, k3.data(), y.data());
    k.axpy(n, h / 6.0, k4.data(), y.data());

    if (!y.array().isFinite().all()) {
      std::ostringstream os;
      os << "integrate_ode: state became non-finite at t = " << next;
      throw DivergenceError(os.str(), next);
    }
    t = next;
    traj.times.push_back(t);
    traj.states.push_back(y);
  }
  return traj;
}

}  // namespace photonxfer
