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

// Canned networks with closed-form answers, used as regression fixtures.
//
//   example1  two single-mode cavities (A1, C1), (A2, C2) behind a beam
//             splitter, driven by the two-channel pulse Xi(t)^T x.
//   example2  the same network driven by rising exponentials at its two
//             distinct zeros z_j = A_j + |C_j|^2.
//   example3  identical cavities: a blocking zero lets one channel carry the
//             photon, ending in alpha|1,0> + beta|0,1>.
//   example4  a single-mode ring resonator coupled to two waveguides
//             (rates gamma1, gamma2) behind a beam splitter.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "photonxfer/simulate.hpp"

namespace photonxfer {

enum class ScenarioName { kExample1, kExample2, kExample3, kExample4 };

std::string_view to_string(ScenarioName name) noexcept;
std::optional<ScenarioName> scenario_from_string(std::string_view s);

/// Named parameters. Examples 1-3 use A1, A2, C1, C2, alpha, beta, x1, x2;
/// example 4 uses gamma1, gamma2, alpha, beta. A mode may be given by its
/// frequency Omega1 / Omega2 instead of its drift entry. Missing entries fall
/// back to the defaults of default_spec().
struct ScenarioSpec {
  ScenarioName name = ScenarioName::kExample3;
  std::map<std::string, Complex> parameters;

  Complex get(const std::string& key) const;
  /// get(key) after checking that its imaginary part vanishes.
  double real(const std::string& key) const;
};

/// Cavities A = -1/2, C = 1 (examples 1 and 2 use A2 = -1, C2 = sqrt 2 for
/// the second one), alpha = 0.6, beta = 0.8, x = (1/sqrt 2, 1/sqrt 2),
/// gamma1 = 1, gamma2 = 2.
ScenarioSpec default_spec(ScenarioName name);

/// Throws PreconditionError naming the violated constraint.
PassiveSystem build(const ScenarioSpec& spec);

/// Values the closed-form analysis predicts for a scenario.
struct ScenarioExpectation {
  std::vector<Complex> zeros;          // in eig() order
  std::vector<ComplexVector> u;        // up to scale, same order
  std::vector<ComplexVector> v;        // up to scale, same order
  bool has_blocking_zero = false;
  bool separable = false;              // single-channel input suffices
  ComplexVector target;                // psi(0) for a unit-norm input
  bool target_phase_exact = false;     // false: global phase is free
};

ScenarioExpectation expected_values(const ScenarioSpec& spec);

/// One checked quantity: ok == (value <= limit), or value > limit when
/// `above` is set.
struct ComparisonRow {
  std::string quantity;
  double value = 0.0;
  double limit = 0.0;
  bool above = false;
  bool ok = false;
};

struct RegressionOptions {
  double dt = 0.0;  // <= 0 selects default_dt()
  double eps_trunc = kTruncationEps;
  Eigen::Index channel = 0;
  Thresholds thresholds{};
};

struct RegressionResult {
  ScenarioSpec spec;
  std::vector<ZeroRecord> zeros;
  std::optional<PulsePlan> plan;
  std::optional<TransferReport> report;
  std::optional<ExcitationTrajectory> trajectory;
  std::vector<ComparisonRow> comparisons;
  std::vector<std::string> notes;
  bool entangled_input_required = false;

  bool pass() const;
};

/// Builds the network, computes its zeros, synthesizes the scenario's
/// unit-norm plan, propagates it and compares against expected_values().
/// With simulate set to false the plan is synthesized but not propagated.
/// Library errors are rethrown with the scenario name prepended.
RegressionResult run_regression(const ScenarioSpec& spec,
                                const RegressionOptions& opts = {},
                                bool simulate = true);

}  // namespace photonxfer
