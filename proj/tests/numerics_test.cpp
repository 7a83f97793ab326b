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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "photonxfer/error.hpp"
#include "support.hpp"

using namespace photonxfer;
using photonxfer::testing::kronecker_lyapunov;
using photonxfer::testing::random_matrix;
using photonxfer::testing::random_unitary;
using photonxfer::testing::taylor_expm;

namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix hurwitz_matrix(std::mt19937_64& rng, Eigen::Index n) {
  ComplexMatrix m = random_matrix(rng, n, n);
  const double shift = -spectral_abscissa(m) - 0.5;
  return m + shift * ComplexMatrix::Identity(n, n);
}

}  // namespace

TEST(Numerics, approx_equal_checks_shape_and_norm) {
  const ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  ComplexMatrix b = a;
  b(0, 1) = 1e-12;
  EXPECT_TRUE(approx_equal(a, b, 1e-11));
  EXPECT_FALSE(approx_equal(a, b, 1e-13));
  EXPECT_FALSE(approx_equal(a, ComplexMatrix::Identity(3, 3), 1.0));
}

TEST(Numerics, align_phase_makes_largest_component_real) {
  ComplexVector v(3);
  v << Complex(0.1, 0.0), Complex(0.0, -2.0), Complex(1.0, 1.0);
  const ComplexVector before = v;
  const Complex phase = align_phase(v);
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-15);
  EXPECT_NEAR(v(1).real(), 2.0, 1e-15);
  EXPECT_NEAR(v(1).imag(), 0.0, 1e-15);
  EXPECT_TRUE(approx_equal(v, phase * before, 1e-15));
}

TEST(Numerics, align_phase_prefers_first_of_tied_components) {
  ComplexVector v(2);
  v << Complex(0.0, 1.0), Complex(-1.0, 0.0);
  align_phase(v);
  EXPECT_NEAR(v(0).real(), 1.0, 1e-15);
  EXPECT_NEAR(v(1).imag(), 1.0, 1e-15);
}

TEST(Numerics, eig_of_diagonal_is_sorted) {
  ComplexMatrix d = ComplexMatrix::Zero(4, 4);
  d.diagonal() << Complex(-1.0, 0.0), Complex(2.0, 1.0), Complex(2.0, -1.0),
      Complex(0.5, 3.0);
  const EigenDecomposition e = eig(d);
  ASSERT_EQ(e.size(), 4u);
  EXPECT_EQ(e.values[0], Complex(2.0, -1.0));
  EXPECT_EQ(e.values[1], Complex(2.0, 1.0));
  EXPECT_EQ(e.values[2], Complex(0.5, 3.0));
  EXPECT_EQ(e.values[3], Complex(-1.0, 0.0));
  EXPECT_NEAR(std::abs(e.vectors[0](2)), 1.0, 1e-15);
}

TEST(Numerics, eig_pairs_satisfy_residual_and_normalization) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const ComplexMatrix m = random_matrix(rng, n, n);
    const EigenDecomposition e = eig(m);
    ASSERT_EQ(e.size(), static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < e.size(); ++k) {
      const ComplexVector& v = e.vectors[k];
      EXPECT_NEAR(v.norm(), 1.0, 1e-12);
      EXPECT_LT((m * v - e.values[k] * v).norm(), 1e-10 * m.norm());
      Eigen::Index big = 0;
      v.cwiseAbs().maxCoeff(&big);
      EXPECT_NEAR(v(big).imag(), 0.0, 1e-12);
      EXPECT_GE(v(big).real(), 0.0);
    }
    for (std::size_t k = 1; k < e.size(); ++k) {
      const Complex a = e.values[k - 1];
      const Complex b = e.values[k];
      EXPECT_TRUE(a.real() > b.real() ||
                  (a.real() == b.real() && a.imag() <= b.imag()));
    }
  }
}

TEST(Numerics, eig_orthonormalizes_degenerate_groups) {
  std::mt19937_64 rng(5);
  const ComplexMatrix u = random_unitary(rng, 3);
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 2.0, 2.0, -1.0;
  const ComplexMatrix m = u * d * u.adjoint();
  const EigenDecomposition e = eig(m);
  EXPECT_NEAR(std::abs(e.vectors[0].dot(e.vectors[1])), 0.0, 1e-10);
  for (int k = 0; k < 2; ++k) {
    EXPECT_LT((m * e.vectors[k] - 2.0 * e.vectors[k]).norm(), 1e-10);
  }
}

TEST(Numerics, eig_rejects_defective_and_non_square) {
  ComplexMatrix jordan(2, 2);
  jordan << 1.0, 1.0, 0.0, 1.0;
  EXPECT_THROW(eig(jordan), NumericalFailure);
  EXPECT_THROW(eig(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST(Numerics, spectral_abscissa_of_shifted_rotation) {
  ComplexMatrix m(2, 2);
  m << -0.3, 1.0, -1.0, -0.3;
  EXPECT_NEAR(spectral_abscissa(m), -0.3, 1e-14);
}

TEST(Numerics, expm_matches_taylor_oracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    const ComplexMatrix m = random_matrix(rng, n, n);
    for (double t : {-3.0, -0.25, 0.0, 0.7, 2.0}) {
      const ComplexMatrix oracle = taylor_expm(m, t);
      EXPECT_LT((expm(m, t) - oracle).norm(), 1e-11 * (1.0 + oracle.norm()));
    }
  }
}

TEST(Numerics, expm_of_diagonal_is_elementwise) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d.diagonal() << Complex(-0.5, 1.0), Complex(0.25, 0.0);
  const ComplexMatrix e = expm(d, 2.0);
  EXPECT_NEAR(std::abs(e(0, 0) - std::exp(Complex(-1.0, 2.0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e(1, 1) - std::exp(0.5)), 0.0, 1e-14);
  EXPECT_EQ(e(0, 1), Complex(0.0, 0.0));
}

TEST(Numerics, expm_overflow_is_a_range_error) {
  ComplexMatrix big = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(expm(big, 1e4), RangeError);
}

TEST(Numerics, expm_action_matches_dense_product) {
  std::mt19937_64 rng(8);
  const ComplexMatrix m = random_matrix(rng, 4, 4);
  const ComplexVector v = random_matrix(rng, 4, 1);
  EXPECT_LT((expm_action(m, -1.5, v) - taylor_expm(m, -1.5) * v).norm(),
            1e-12);
}

TEST(Numerics, lyapunov_matches_kronecker_oracle) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 15; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    const ComplexMatrix a = hurwitz_matrix(rng, n);
    const ComplexMatrix c = random_matrix(rng, 2, n);
    const ComplexMatrix q = c.adjoint() * c;
    const ComplexMatrix x = solve_lyapunov(a, q);
    const ComplexMatrix oracle = kronecker_lyapunov(a, q);
    EXPECT_LT((x - oracle).norm(), 1e-10 * (1.0 + oracle.norm()));
    EXPECT_LT((x - x.adjoint()).norm(), 1e-14 * (1.0 + x.norm()));
    EXPECT_LT((a * x + x * a.adjoint() + q).norm(), 1e-10 * q.norm());
  }
}

TEST(Numerics, lyapunov_identity_for_passive_drift) {
  std::mt19937_64 rng(10);
  const ComplexMatrix h = random_matrix(rng, 3, 3);
  const ComplexMatrix omega = 0.5 * (h + h.adjoint());
  const ComplexMatrix c = random_matrix(rng, 2, 3);
  const ComplexMatrix a = -kI * omega - 0.5 * c.adjoint() * c;
  EXPECT_TRUE(approx_equal(solve_lyapunov(a, c.adjoint() * c),
                           ComplexMatrix::Identity(3, 3), 1e-10));
}

TEST(Numerics, lyapunov_preconditions) {
  const ComplexMatrix unstable = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix q = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(solve_lyapunov(unstable, q), PreconditionError);
  ComplexMatrix skew = q;
  skew(0, 1) = 1.0;
  EXPECT_THROW(solve_lyapunov(-q, skew), PreconditionError);
  EXPECT_THROW(solve_lyapunov(-q, ComplexMatrix::Identity(3, 3)),
               DimensionError);
}

TEST(Numerics, sylvester_matches_kronecker_oracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    const Eigen::Index r = 1 + (trial / 4) % 3;
    const ComplexMatrix a = hurwitz_matrix(rng, n);
    const ComplexMatrix b = -hurwitz_matrix(rng, r).adjoint();
    const ComplexMatrix c = random_matrix(rng, n, r);
    const ComplexMatrix x = solve_sylvester(-a, b, c);
    // Column-major vec: vec(A X + X B) = (I (x) A + B^T (x) I) vec X.
    ComplexMatrix big = ComplexMatrix::Zero(n * r, n * r);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < r; ++j) {
        if (i == j) big.block(i * n, j * n, n, n) -= a;
        big.block(i * n, j * n, n, n) +=
            b(j, i) * ComplexMatrix::Identity(n, n);
      }
    }
    const ComplexVector vec_x = big.fullPivLu().solve(
        Eigen::Map<const ComplexVector>(c.data(), n * r).eval());
    const ComplexMatrix oracle =
        Eigen::Map<const ComplexMatrix>(vec_x.data(), n, r);
    EXPECT_LT((x - oracle).norm(), 1e-10 * (1.0 + oracle.norm()));
  }
}

TEST(Numerics, sylvester_preconditions) {
  const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(solve_sylvester(eye, -eye, eye), NumericalFailure);
  EXPECT_THROW(solve_sylvester(eye, eye, ComplexMatrix::Zero(3, 2)),
               DimensionError);
  EXPECT_EQ(solve_sylvester(ComplexMatrix::Zero(0, 0), eye,
                            ComplexMatrix::Zero(0, 2))
                .size(),
            0);
}

TEST(Numerics, rk4_solves_linear_ode) {
  std::mt19937_64 rng(12);
  const ComplexMatrix m = hurwitz_matrix(rng, 3);
  const ComplexVector y0 = random_matrix(rng, 3, 1);
  const OdeTrajectory traj = integrate_ode(
      [&](double, const ComplexVector& y) { return ComplexVector(m * y); }, y0,
      0.0, 2.0, 0.01);
  ASSERT_EQ(traj.times.size(), traj.states.size());
  EXPECT_DOUBLE_EQ(traj.times.back(), 2.0);
  EXPECT_LT((traj.states.back() - taylor_expm(m, 2.0) * y0).norm(), 1e-9);
}

TEST(Numerics, rk4_is_fourth_order) {
  // Forced oscillator y' = i y + cos t; errors measured against a fine run.
  auto f = [](double t, const ComplexVector& y) {
    ComplexVector out(1);
    out(0) = kI * y(0) + std::cos(t);
    return out;
  };
  ComplexVector y0(1);
  y0(0) = 1.0;
  auto final_value = [&](double dt) {
    return integrate_ode(f, y0, 0.0, 4.0, dt).states.back()(0);
  };
  const Complex ref = final_value(1e-4);
  const double e1 = std::abs(final_value(0.2) - ref);
  const double e2 = std::abs(final_value(0.1) - ref);
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(Numerics, rk4_shortens_last_step) {
  ComplexVector y0(1);
  y0(0) = 1.0;
  const OdeTrajectory traj = integrate_ode(
      [](double, const ComplexVector& y) { return ComplexVector(-y); }, y0,
      0.0, 1.05, 0.1);
  ASSERT_EQ(traj.times.size(), 12u);
  EXPECT_DOUBLE_EQ(traj.times.back(), 1.05);
  // RK4 applied to y' = -y multiplies by the degree-4 Taylor polynomial of
  // e^{-h}: ten full steps and one half step.
  auto factor = [](double h) {
    return 1.0 - h + h * h / 2.0 - h * h * h / 6.0 + h * h * h * h / 24.0;
  };
  const double expect = std::pow(factor(0.1), 10) * factor(0.05);
  EXPECT_NEAR(traj.states.back()(0).real(), expect, 1e-14);
  EXPECT_NEAR(std::abs(traj.states.back()(0) - std::exp(-1.05)), 0.0, 1e-6);
}

TEST(Numerics, rk4_reports_bad_input) {
  ComplexVector y0(2);
  y0 << 1.0, 1.0;
  EXPECT_THROW(integrate_ode(
                   [](double, const ComplexVector&) {
                     return ComplexVector(ComplexVector::Zero(3));
                   },
                   y0, 0.0, 1.0, 0.1),
               DimensionError);
  EXPECT_THROW(integrate_ode(
                   [](double, const ComplexVector& y) {
                     return ComplexVector(y * 1e300);
                   },
                   y0, 0.0, 10.0, 0.5),
               DivergenceError);
  EXPECT_THROW(integrate_ode(
                   [](double, const ComplexVector& y) { return y; }, y0, 0.0,
                   1.0, 0.0),
               PreconditionError);
}
