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

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace photonxfer::testing {

ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows,
                            Eigen::Index cols) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = {unit(rng), unit(rng)};
  }
  return m;
}

ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> gauss;
  ComplexMatrix g(size, size);
  for (Eigen::Index c = 0; c < size; ++c) {
    for (Eigen::Index r = 0; r < size; ++r) g(r, c) = {gauss(rng), gauss(rng)};
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(size, size);
  // Fix the phases of R's diagonal so the distribution is uniform.
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < size; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

ComplexVector random_unit_vector(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> gauss;
  ComplexVector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = {gauss(rng), gauss(rng)};
  return v.normalized();
}

PassiveSystem random_system(std::mt19937_64& rng, Eigen::Index modes,
                            Eigen::Index channels,
                            const EnsembleOptions& opts) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const ComplexMatrix h = random_matrix(rng, modes, modes);
    const ComplexMatrix omega = 0.5 * (h + h.adjoint());
    const ComplexMatrix coupling = random_matrix(rng, channels, modes);
    const ComplexMatrix drift =
        Complex(0.0, -1.0) * omega - 0.5 * coupling.adjoint() * coupling;
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(drift, false);
    const auto& values = solver.eigenvalues();
    double slowest = std::numeric_limits<double>::infinity();
    double fastest = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      slowest = std::min(slowest, -values(i).real());
      fastest = std::max(fastest, std::abs(values(i)));
    }
    if (slowest < opts.min_margin) continue;
    if (fastest > opts.max_stiffness * slowest) continue;
    return PassiveSystem(omega, coupling, random_unitary(rng, channels));
  }
  throw std::runtime_error("random_system: rejection sampling gave up");
}

std::vector<PassiveSystem> random_ensemble(std::uint64_t seed, int count,
                                           const EnsembleOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> modes(1, opts.max_modes);
  std::uniform_int_distribution<Eigen::Index> channels(1, opts.max_channels);
  std::vector<PassiveSystem> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const Eigen::Index n = modes(rng);
    const Eigen::Index m = channels(rng);
    out.push_back(random_system(rng, n, m, opts));
  }
  return out;
}

ComplexMatrix taylor_expm(const ComplexMatrix& m, double t) {
  const ComplexMatrix mt = m * t;
  const double norm = mt.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix scaled = mt / std::ldexp(1.0, squarings);
  const Eigen::Index n = m.rows();
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  ComplexMatrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

ComplexMatrix kronecker_lyapunov(const ComplexMatrix& a,
                                 const ComplexMatrix& q) {
  const Eigen::Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  // Column-major vec: vec(A X) = (I (x) A) vec X, vec(X A^H) = (A# (x) I) vec X.
  ComplexMatrix big = ComplexMatrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      big.block(i * n, j * n, n, n) += id(i, j) * a;
      big.block(i * n, j * n, n, n) += std::conj(a(i, j)) * id;
    }
  }
  const ComplexVector rhs =
      -Eigen::Map<const ComplexVector>(q.data(), n * n);
  const ComplexVector x = big.fullPivLu().solve(rhs);
  return Eigen::Map<const ComplexMatrix>(x.data(), n, n);
}

ComplexMatrix gram_quadrature(const PassiveSystem& sys, double t0,
                              int intervals) {
  const double h = -t0 / intervals;
  // Xi(t - h) = e^{conj(A) h} Xi(t): march back from t = 0, where the step
  // propagator contracts.
  const ComplexMatrix step = taylor_expm(sys.drift().conjugate(), h);
  ComplexMatrix xi = -sys.coupling().transpose() * sys.scattering().conjugate();
  ComplexMatrix sum = ComplexMatrix::Zero(sys.modes(), sys.modes());
  for (int k = 0; k <= intervals; ++k) {
    const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    sum += w * xi * xi.adjoint();
    xi = step * xi;
  }
  return sum * (h / 3.0);
}

double pulse_energy(const PulsePlan& plan, double t0, int intervals) {
  const double h = -t0 / intervals;
  double sum = 0.0;
  for (int k = 0; k <= intervals; ++k) {
    const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    // The last sample sits exactly at t = 0, inside the support.
    const double t = k == intervals ? 0.0 : t0 + k * h;
    sum += w * plan.at(t).squaredNorm();
  }
  return sum * h / 3.0;
}

ComplexVector reference_rk4(const PassiveSystem& sys, const PulsePlan& plan,
                            double t0, int steps) {
  const double dt = -t0 / steps;
  const ComplexMatrix a = sys.drift();
  const ComplexMatrix b = -sys.coupling().adjoint() * sys.scattering();
  auto rhs = [&](double t, const ComplexVector& psi) -> ComplexVector {
    return a * psi + b * plan.at(std::min(t, 0.0));
  };
  ComplexVector psi = ComplexVector::Zero(sys.modes());
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    const ComplexVector k1 = rhs(t, psi);
    const ComplexVector k2 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k1);
    const ComplexVector k3 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k2);
    const ComplexVector k4 = rhs(t + dt, psi + dt * k3);
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

double ray_angle(const ComplexVector& a, const ComplexVector& b) {
  const double overlap = std::abs(a.dot(b)) / (a.norm() * b.norm());
  return std::asin(std::min(1.0, std::sqrt(std::max(0.0, 1.0 - overlap * overlap))));
}

}  // namespace photonxfer::testing
