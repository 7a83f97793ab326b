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

#include <gtest/gtest.h>

#include <cmath>

#include "photonxfer/error.hpp"
#include "photonxfer/scenarios.hpp"
#include "support.hpp"

using namespace photonxfer;
using photonxfer::testing::random_unit_vector;

namespace {

PulsePlan blocking_plan(const PassiveSystem& sys) {
  const SeparableResult found = separable_transfer_plan(sys);
  return *found.plan;
}

}  // namespace

TEST(Simulate, step_above_stability_bound_is_rejected) {
  const PassiveSystem sys = build(default_spec(ScenarioName::kExample3));
  const PulsePlan plan = blocking_plan(sys);
  const double limit = dt_max(sys, plan);
  // |lambda(A)| = 0.5 and the rising rate is 0.5.
  EXPECT_NEAR(limit, 0.2, 1e-14);
  EXPECT_NEAR(default_dt(sys, plan), 0.02, 1e-15);
  try {
    propagate(sys, plan, 1.5 * limit);
    FAIL() << "expected StabilityError";
  } catch (const StabilityError& e) {
    EXPECT_NEAR(e.dt_max(), limit, 1e-15);
  }
  EXPECT_THROW(propagate(sys, plan, 0.0), PreconditionError);
  EXPECT_THROW(propagate(sys, plan, std::nan("")), PreconditionError);
}

TEST(Simulate, channel_mismatch_is_rejected) {
  const PassiveSystem sys = build(default_spec(ScenarioName::kExample3));
  const PulsePlan other =
      blocking_plan(build(default_spec(ScenarioName::kExample3)));
  const PassiveSystem three = direct_sum(
      sys, PassiveSystem(ComplexMatrix::Zero(1, 1),
                         ComplexMatrix::Ones(1, 1),
                         ComplexMatrix::Identity(1, 1)));
  EXPECT_THROW(propagate(three, other, 0.01), DimensionError);
  EXPECT_THROW(closed_form_final_state(three, other, -1.0), DimensionError);
}

TEST(Simulate, grid_ends_at_zero_with_even_step_count) {
  const PassiveSystem sys = build(default_spec(ScenarioName::kExample3));
  const PulsePlan plan = blocking_plan(sys);
  const ExcitationTrajectory traj = propagate(sys, plan, 0.07);
  EXPECT_EQ(traj.times.back(), 0.0);
  EXPECT_EQ((traj.times.size() - 1) % 2, 0u);
  EXPECT_EQ(traj.window_start(), plan.window_start());
  EXPECT_LE(traj.dt, 0.07);
  EXPECT_NEAR(traj.dt * static_cast<double>(traj.times.size() - 1),
              -plan.window_start(), 1e-12);
  EXPECT_EQ(traj.psi.front().norm(), 0.0);
  EXPECT_EQ(traj.modes(), 2);
  EXPECT_EQ(traj.channels(), 2);
}

TEST(Simulate, matches_closed_form_and_reference_integrator) {
  std::mt19937_64 rng(31);
  for (const auto& sys : photonxfer::testing::random_ensemble(31, 12)) {
    const PulsePlan plan =
        pulse_for_target(sys, random_unit_vector(rng, sys.modes()));
    const double dt = default_dt(sys, plan);
    const ExcitationTrajectory traj = propagate(sys, plan, dt);
    const ComplexVector exact =
        closed_form_final_state(sys, plan, traj.window_start());
    EXPECT_LT((traj.final_state() - exact).norm(), 1e-8);
    const int steps = static_cast<int>(traj.times.size()) - 1;
    const ComplexVector ref =
        photonxfer::testing::reference_rk4(sys, plan, traj.window_start(), steps);
    EXPECT_LT((traj.final_state() - ref).norm(), 1e-12);
  }
}

TEST(Simulate, reversed_multi_rate_pulse_matches_closed_form) {
  std::mt19937_64 rng(34);
  for (const auto& sys : photonxfer::testing::random_ensemble(34, 8)) {
    const PulsePlan plan =
        pulse_for_target(sys, random_unit_vector(rng, sys.modes()))
            .time_reversed();
    const ExcitationTrajectory traj =
        propagate(sys, plan, default_dt(sys, plan));
    const ComplexVector exact =
        closed_form_final_state(sys, plan, traj.window_start());
    EXPECT_LT((traj.final_state() - exact).norm(), 1e-8);
    const int steps = static_cast<int>(traj.times.size()) - 1;
    const ComplexVector ref = photonxfer::testing::reference_rk4(
        sys, plan, traj.window_start(), steps);
    EXPECT_LT((traj.final_state() - ref).norm(), 1e-12);
    const TransferReport rep = assess(traj, plan);
    EXPECT_LT(rep.conservation_defect, 1e-6);
  }
}

TEST(Simulate, photon_number_is_conserved) {
  std::mt19937_64 rng(32);
  for (const auto& sys : photonxfer::testing::random_ensemble(32, 12)) {
    const PulsePlan plan =
        pulse_for_target(sys, random_unit_vector(rng, sys.modes()));
    const TransferReport rep =
        assess(propagate(sys, plan, default_dt(sys, plan)), plan);
    EXPECT_LT(rep.conservation_defect, 1e-6);
    EXPECT_GT(rep.fidelity, 1.0 - 1e-5);
    EXPECT_LT(rep.leakage, 1e-5);
    EXPECT_TRUE(rep.pass);
  }
}

TEST(Simulate, runge_kutta_is_fourth_order) {
  const PassiveSystem sys = build(default_spec(ScenarioName::kExample3));
  const PulsePlan plan = blocking_plan(sys);
  const double h = dt_max(sys, plan);
  double err[3];
  for (int k = 0; k < 3; ++k) {
    const ExcitationTrajectory traj = propagate(sys, plan, h / (1 << k));
    const ComplexVector exact =
        closed_form_final_state(sys, plan, traj.window_start());
    err[k] = (traj.final_state() - exact).norm();
  }
  for (int k = 0; k < 2; ++k) {
    const double ratio = err[k] / err[k + 1];
    EXPECT_GE(ratio, 12.0);
    EXPECT_LE(ratio, 20.0);
  }
}

TEST(Simulate, runs_are_bitwise_deterministic) {
  const PassiveSystem sys = build(default_spec(ScenarioName::kExample1));
  std::mt19937_64 rng(33);
  const PulsePlan plan = pulse_for_target(sys, random_unit_vector(rng, 2));
  const double dt = default_dt(sys, plan);
  const ExcitationTrajectory a = propagate(sys, plan, dt);
  const ExcitationTrajectory b = propagate(sys, plan, dt);
  ASSERT_EQ(a.psi.size(), b.psi.size());
  for (std::size_t i = 0; i < a.psi.size(); ++i) {
    EXPECT_EQ(a.psi[i], b.psi[i]);
    EXPECT_EQ(a.eta[i], b.eta[i]);
  }
  EXPECT_EQ(a.output_norm_sq, b.output_norm_sq);
}

TEST(Simulate, zero_input_reports_zero_fidelity) {
  const PassiveSystem sys = build(default_spec(ScenarioName::kExample3));
  ComplexMatrix gen(1, 1);
  gen(0, 0) = 1.0;
  const PulsePlan silent(Construction::kCustom, ComplexMatrix::Zero(2, 1), gen,
                         ComplexVector::Ones(1), ComplexVector::Unit(2, 0),
                         -20.0, true, {Complex(1.0, 0.0)}, {});
  const TransferReport rep =
      assess(propagate(sys, silent, 0.05), silent);
  EXPECT_EQ(rep.fidelity, 0.0);
  EXPECT_EQ(rep.transfer_fidelity, 0.0);
  EXPECT_EQ(rep.leakage, 0.0);
  EXPECT_FALSE(rep.pass);
  ASSERT_GE(rep.messages.size(), 2u);
  EXPECT_NE(rep.messages[0].find("undefined"), std::string::npos);
}

TEST(Simulate, assess_checks_dimensions) {
  const PassiveSystem sys = build(default_spec(ScenarioName::kExample3));
  const PulsePlan plan = blocking_plan(sys);
  const ExcitationTrajectory traj = propagate(sys, plan, 0.05);
  const PassiveSystem single(ComplexMatrix::Zero(1, 1),
                             ComplexMatrix::Ones(2, 1),
                             ComplexMatrix::Identity(2, 2));
  const SeparableResult other = separable_transfer_plan(single);
  ASSERT_TRUE(other.entangled_alternative.has_value() ||
              other.plan.has_value());
  const PulsePlan& mismatched =
      other.plan ? *other.plan : *other.entangled_alternative;
  EXPECT_THROW(assess(traj, mismatched), DimensionError);
  EXPECT_THROW(assess(ExcitationTrajectory{}, plan), PreconditionError);
}

TEST(Simulate, blocking_transfer_is_complete) {
  const PassiveSystem sys = build(default_spec(ScenarioName::kExample3));
  const PulsePlan plan = blocking_plan(sys);
  const TransferReport rep =
      assess(propagate(sys, plan, default_dt(sys, plan)), plan);
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.transfer_fidelity, 1.0, 1e-5);
  EXPECT_NEAR(std::abs(rep.achieved_target(0)), 0.6, 1e-5);
  EXPECT_NEAR(std::abs(rep.achieved_target(1)), 0.8, 1e-5);
}

TEST(Simulate, time_reversed_pulse_is_reflected) {
  const PassiveSystem sys = build(default_spec(ScenarioName::kExample3));
  const PulsePlan plan = blocking_plan(sys).time_reversed();
  const TransferReport rep =
      assess(propagate(sys, plan, default_dt(sys, plan)), plan);
  EXPECT_FALSE(rep.pass);
  EXPECT_LT(rep.transfer_fidelity, 0.9);
  EXPECT_GT(rep.leakage, 0.1);
  EXPECT_LT(rep.conservation_defect, 1e-6);
}
