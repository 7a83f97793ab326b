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

// Single-excitation simulator.
//
// With one photon shared between field and modes, the joint state is fully
// described by the mode amplitudes psi(t) (n entries) and the channel
// amplitudes. For an input pulse phi(t) the amplitudes obey
//
//   dpsi/dt = A psi - C^H S phi(t),     eta(t) = C psi(t) + S phi(t),
//
// starting from psi(T0) = 0, and eta is the outgoing photon amplitude.

#pragma once

#include <string>
#include <vector>

#include "photonxfer/pulses.hpp"

namespace photonxfer {

struct ExcitationTrajectory {
  std::vector<double> times;         // uniform grid on [T0, 0]
  std::vector<ComplexVector> psi;    // mode amplitudes per sample
  std::vector<ComplexVector> eta;    // output amplitudes per sample
  double dt = 0.0;
  double input_norm_sq = 0.0;
  double output_norm_sq = 0.0;
  double final_norm_sq = 0.0;
  double truncated_mass = 0.0;  // input mass before T0

  Eigen::Index modes() const { return psi.empty() ? 0 : psi.front().size(); }
  Eigen::Index channels() const {
    return eta.empty() ? 0 : eta.front().size();
  }
  double window_start() const { return times.empty() ? 0.0 : times.front(); }
  const ComplexVector& final_state() const { return psi.back(); }
};

/// Largest admissible RK4 step: 0.1 / max(max |lambda(A)|, max |Re rate|).
double dt_max(const PassiveSystem& sys, const PulsePlan& plan);

/// dt_max / 10.
double default_dt(const PassiveSystem& sys, const PulsePlan& plan);

/// Integrates the amplitude equations with classical RK4 on the uniform grid
/// t_k = T0 + k h, k = 0..N, where T0 = plan.window_start(), N is the
/// smallest even count with h = -T0 / N <= dt, and h is stored as the
/// trajectory's dt.
/// The input is evaluated exactly at full and half steps. Norm integrals use
/// composite Simpson on the same grid. Throws StabilityError when
/// dt > dt_max, DimensionError on a channel-count mismatch and
/// DivergenceError if the state stops being finite.
ExcitationTrajectory propagate(const PassiveSystem& sys, const PulsePlan& plan,
                               double dt);

/// Exact psi(0) for the pulse switched on at t_start. Rising pulses use the
/// Sylvester solution A X - X M = C^H S K; other pulses use the exponential
/// of the block generator [[A, -C^H S K], [0, M]].
ComplexVector closed_form_final_state(const PassiveSystem& sys,
                                      const PulsePlan& plan, double t_start);

struct Thresholds {
  double fid_tol = 1e-5;
  double leak_tol = 1e-5;
  double cons_tol = 1e-6;
};

struct TransferReport {
  double fidelity = 0.0;
  /// |<p, psi(0)>|^2 / input_norm_sq for the normalized prediction p: the
  /// probability that the photon ends in the predicted state. Unlike
  /// `fidelity` it drops when the modes are only partly excited.
  double transfer_fidelity = 0.0;
  double leakage = 0.0;
  ComplexVector predicted_target;
  ComplexVector achieved_target;  // psi(0) as integrated
  double conservation_defect = 0.0;
  double input_norm_sq = 0.0;
  double output_norm_sq = 0.0;
  double final_norm_sq = 0.0;
  double truncated_mass = 0.0;
  double window_start = 0.0;
  double dt = 0.0;
  Thresholds thresholds;
  bool pass = false;
  std::vector<std::string> messages;
};

/// Fidelity |<p, a>|^2 of the normalized predicted and achieved targets,
/// transfer fidelity, leakage output/input and conservation
/// |input - final - output|.
TransferReport assess(const ExcitationTrajectory& trajectory,
                      const PulsePlan& plan, const Thresholds& thresholds = {});

}  // namespace photonxfer
