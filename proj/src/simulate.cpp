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

#include "photonxfer/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "photonxfer/error.hpp"
#include "photonxfer/kernels.hpp"

namespace photonxfer {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double simpson_weight(std::size_t k, std::size_t intervals) {
  if (k == 0 || k == intervals) return 1.0 / 3.0;
  return (k % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
}

}  // namespace

double dt_max(const PassiveSystem& sys, const PulsePlan& plan) {
  double fastest = 0.0;
  if (sys.modes() > 0) {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(sys.drift(), false);
    if (solver.info() != Eigen::Success) {
      throw NumericalFailure("dt_max: drift spectrum did not converge");
    }
    fastest = solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  // Decaying (time-reversed) pulses are resolved the same way as rising ones.
  for (const auto& r : plan.rates()) fastest = std::max(fastest, std::abs(r.real()));
  if (!(fastest > 0.0)) {
    throw PreconditionError("dt_max: system and pulse have no time scale");
  }
  return 0.1 / fastest;
}

double default_dt(const PassiveSystem& sys, const PulsePlan& plan) {
  return dt_max(sys, plan) / 10.0;
}

ExcitationTrajectory propagate(const PassiveSystem& sys, const PulsePlan& plan,
                               double dt) {
  if (plan.channels() != sys.channels()) {
    std::ostringstream os;
    os << "propagate: pulse has " << plan.channels()
       << " channels, system has " << sys.channels();
    throw DimensionError(os.str());
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw PreconditionError("propagate: dt must be positive and finite");
  }
  const double limit = dt_max(sys, plan);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "propagate: dt = " << dt << " exceeds the RK4 stability bound "
       << "dt_max = " << limit;
    throw StabilityError(os.str(), limit);
  }

  // The grid spans [T0, 0] exactly, so a pulse that switches on at T0 does
  // not put a jump inside a quadrature panel. The step shrinks to fit an even
  // number of intervals.
  const double t_start = plan.window_start();
  auto steps = static_cast<std::size_t>(std::ceil(-t_start / dt - 1e-9));
  steps = std::max<std::size_t>(steps, 2);
  if (steps % 2 == 1) ++steps;
  dt = -t_start / static_cast<double>(steps);

  const std::size_t n = static_cast<std::size_t>(sys.modes());
  const std::size_t m = static_cast<std::size_t>(sys.channels());
  const RowMajorMatrix a = sys.drift();
  const RowMajorMatrix b = -(sys.coupling().adjoint() * sys.scattering());
  const RowMajorMatrix c = sys.coupling();
  const RowMajorMatrix s = sys.scattering();
  // Column j holds the input at t_start + j dt / 2.
  const ComplexMatrix drive = plan.sample(t_start, 0.5 * dt, 2 * steps + 1);
  auto input = [&](std::size_t half_step) {
    return drive.data() + half_step * m;
  };

  const auto& kern = kernels::active();
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(n));
  ComplexVector stage(psi.size()), k1(psi.size()), k2(psi.size()),
      k3(psi.size()), k4(psi.size());
  auto rhs = [&](const ComplexVector& state, std::size_t half_step,
                 ComplexVector& out) {
    kern.matvec(n, n, a.data(), state.data(), out.data());
    kern.matvec_add(n, m, b.data(), input(half_step), out.data());
  };

  ExcitationTrajectory traj;
  traj.dt = dt;
  traj.truncated_mass = plan.truncated_mass();
  traj.times.reserve(steps + 1);
  traj.psi.reserve(steps + 1);
  traj.eta.reserve(steps + 1);

  for (std::size_t i = 0;; ++i) {
    ComplexVector eta(static_cast<Eigen::Index>(m));
    kern.matvec(m, n, c.data(), psi.data(), eta.data());
    kern.matvec_add(m, m, s.data(), input(2 * i), eta.data());

    const double w = simpson_weight(i, steps) * dt;
    traj.input_norm_sq += w * kern.norm_sq(m, input(2 * i));
    traj.output_norm_sq += w * kern.norm_sq(m, eta.data());
    traj.times.push_back(t_start + static_cast<double>(i) * dt);
    traj.psi.push_back(psi);
    traj.eta.push_back(std::move(eta));
    if (i == steps) break;

    rhs(psi, 2 * i, k1);
    stage = psi;
    kern.axpy(n, 0.5 * dt, k1.data(), stage.data());
    rhs(stage, 2 * i + 1, k2);
    stage = psi;
    kern.axpy(n, 0.5 * dt, k2.data(), stage.data());
    rhs(stage, 2 * i + 1, k3);
    stage = psi;
    kern.axpy(n, dt, k3.data(), stage.data());
    rhs(stage, 2 * i + 2, k4);
    kern.axpy(n, dt / 6.0, k1.data(), psi.data());
    kern.axpy(n, dt / 3.0, k2.data(), psi.data());
    kern.axpy(n, dt / 3.0, k3.data(), psi.data());
    kern.axpy(n, dt / 6.0, k4.data(), psi.data());

    if (!std::isfinite(kern.norm_sq(n, psi.data()))) {
      const double t = t_start + static_cast<double>(i + 1) * dt;
      std::ostringstream os;
      os << "propagate: state diverged at t = " << t;
      throw DivergenceError(os.str(), t);
    }
  }
  traj.times.back() = 0.0;
  traj.final_norm_sq = psi.squaredNorm();
  return traj;
}

ComplexVector closed_form_final_state(const PassiveSystem& sys,
                                      const PulsePlan& plan, double t_start) {
  if (plan.channels() != sys.channels()) {
    throw DimensionError("closed_form_final_state: channel count mismatch");
  }
  if (!(t_start < 0.0)) {
    throw PreconditionError("closed_form_final_state: t_start must be < 0");
  }
  const Eigen::Index n = sys.modes();
  const Eigen::Index r = plan.generator().rows();
  if (r == 0) return ComplexVector::Zero(n);
  if (!plan.infinite_tail()) t_start = std::max(t_start, plan.window_start());

  const ComplexMatrix& gen = plan.generator();
  const ComplexMatrix drive =
      -(sys.coupling().adjoint() * sys.scattering()) * plan.directions();
  auto weights_at = [&](double t) {
    return expm_action(gen, t - plan.anchor(), plan.weights());
  };
  if (spectral_abscissa(-gen) < 0.0) {
    // Rising pulse: psi(t) = X g(t) - e^{A (t - t_start)} X g(t_start) with
    // A X - X M = -drive. Only decaying exponentials are formed.
    const ComplexMatrix x = solve_sylvester(sys.drift(), -gen, -drive);
    return x * weights_at(0.0) -
           expm_action(sys.drift(), -t_start, x * weights_at(t_start));
  }
  ComplexMatrix block = ComplexMatrix::Zero(n + r, n + r);
  block.topLeftCorner(n, n) = sys.drift();
  block.topRightCorner(n, r) = drive;
  block.bottomRightCorner(r, r) = gen;
  ComplexVector init = ComplexVector::Zero(n + r);
  init.tail(r) = weights_at(t_start);
  return expm_action(block, -t_start, init).head(n);
}

TransferReport assess(const ExcitationTrajectory& trajectory,
                      const PulsePlan& plan, const Thresholds& thresholds) {
  if (trajectory.psi.empty()) {
    throw PreconditionError("assess: empty trajectory");
  }
  if (plan.predicted_target().size() != trajectory.modes() ||
      plan.channels() != trajectory.channels()) {
    std::ostringstream os;
    os << "assess: plan (" << plan.channels() << " channels, target of size "
       << plan.predicted_target().size() << ") does not match trajectory ("
       << trajectory.channels() << " channels, " << trajectory.modes()
       << " modes)";
    throw DimensionError(os.str());
  }

  TransferReport rep;
  rep.thresholds = thresholds;
  rep.predicted_target = plan.predicted_target();
  rep.achieved_target = trajectory.final_state();
  rep.input_norm_sq = trajectory.input_norm_sq;
  rep.output_norm_sq = trajectory.output_norm_sq;
  rep.final_norm_sq = trajectory.final_norm_sq;
  rep.truncated_mass = trajectory.truncated_mass;
  rep.window_start = trajectory.window_start();
  rep.dt = trajectory.dt;

  const double achieved_norm = rep.achieved_target.norm();
  const double predicted_norm = rep.predicted_target.norm();
  if (achieved_norm > 0.0 && predicted_norm > 0.0) {
    const Complex overlap =
        rep.predicted_target.dot(rep.achieved_target) /
        (achieved_norm * predicted_norm);
    rep.fidelity = std::min(1.0, std::norm(overlap));
  } else {
    rep.fidelity = 0.0;
    rep.messages.push_back(
        "final mode state is zero; fidelity is undefined and reported as 0");
  }

  if (rep.input_norm_sq > 0.0) {
    rep.leakage = rep.output_norm_sq / rep.input_norm_sq;
    if (predicted_norm > 0.0) {
      rep.transfer_fidelity =
          std::norm(rep.predicted_target.dot(rep.achieved_target)) /
          (predicted_norm * predicted_norm * rep.input_norm_sq);
    }
  } else {
    rep.leakage = 0.0;
    rep.messages.push_back("input pulse carries no photon");
  }
  rep.conservation_defect = std::abs(
      rep.input_norm_sq - (rep.final_norm_sq + rep.output_norm_sq));

  {
    std::ostringstream os;
    os << "input window starts at t = " << rep.window_start
       << "; input mass outside the window = " << rep.truncated_mass;
    rep.messages.push_back(os.str());
  }

  rep.pass = rep.fidelity >= 1.0 - thresholds.fid_tol &&
             rep.leakage <= thresholds.leak_tol &&
             rep.conservation_defect <= thresholds.cons_tol;
  return rep;
}

}  // namespace photonxfer
