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

// Single-photon input pulse synthesis.
//
// Every pulse produced here is a finite sum of (matrix) exponentials that is
// switched off at t = 0:
//
//   shape(t) = K e^{M (t - a)} w   for t <= 0,   shape(t) = 0   for t > 0,
//
// with K (channels x r) the output directions, M (r x r) the generator, w
// the r weights and a the anchor time (0 unless time reversed). Rising pulses (spectrum of M in the right half plane) extend
// to t -> -infinity and are sampled on a truncated window [T0, 0]; other
// pulses are defined on [T0, 0] only.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "photonxfer/zeros.hpp"

namespace photonxfer {

/// Default truncation level of the tail of rising pulses.
inline constexpr double kTruncationEps = 1e-10;
/// Default tolerance of ||u - e_k|| for a single-channel zero direction.
inline constexpr double kBasisAlignTol = 1e-8;

enum class Construction {
  kXiRowCombination,
  kZeroMode,
  kSeparableBlocking,
  kSeparableBasis,
  kTimeReversed,
  kCustom,
};

std::string_view to_string(Construction c) noexcept;
std::optional<Construction> construction_from_string(std::string_view s);

/// Window start T0 = ln(eps) / min Re(rate) for a pulse whose slowest
/// rising rate is `slowest_rate` > 0; the tail beyond T0 has mass O(eps^2).
double truncation_window(double slowest_rate, double eps = kTruncationEps);

class PulsePlan {
 public:
  /// shape(t) = directions * e^{generator (t - anchor)} * weights on the
  /// support. `predicted_target` is normalized on construction. `rates` and
  /// `coefficients` are carried for reporting only.
  PulsePlan(Construction construction, ComplexMatrix directions,
            ComplexMatrix generator, ComplexVector weights,
            ComplexVector predicted_target, double window_start,
            bool infinite_tail, std::vector<Complex> rates,
            std::vector<Complex> coefficients, double anchor = 0.0);

  Construction construction() const noexcept { return construction_; }
  Eigen::Index channels() const noexcept { return directions_.rows(); }
  const ComplexMatrix& directions() const noexcept { return directions_; }
  const ComplexMatrix& generator() const noexcept { return generator_; }
  const ComplexVector& weights() const noexcept { return weights_; }
  const ComplexVector& predicted_target() const noexcept { return target_; }
  double window_start() const noexcept { return window_start_; }
  /// Time at which the exponential factor equals the identity.
  double anchor() const noexcept { return anchor_; }
  bool infinite_tail() const noexcept { return infinite_tail_; }
  const std::vector<Complex>& rates() const noexcept { return rates_; }
  const std::vector<Complex>& coefficients() const noexcept {
    return coefficients_;
  }

  /// sqrt(int ||shape(t)||^2 dt) over the full support.
  double l2_norm() const noexcept { return l2_norm_; }
  /// Input mass left out of [window_start, 0] (zero for finite pulses).
  double truncated_mass() const noexcept { return truncated_mass_; }

  /// Amplitudes at time t (zero outside the support).
  ComplexVector at(double t) const;

  /// channels x count table of amplitudes at t_start + k * step. Consecutive
  /// samples are advanced with a single precomputed step propagator, run in
  /// the direction in which it contracts.
  ComplexMatrix sample(double t_start, double step, std::size_t count) const;

  /// Same pulse scaled by 1 / l2_norm. Throws PreconditionError for a zero
  /// pulse.
  PulsePlan normalized() const;

  /// The mirror image on its window, shape_rev(t) = shape(T0 - t). Rising
  /// exponentials become decaying ones anchored at T0.
  PulsePlan time_reversed() const;

 private:
  Construction construction_;
  ComplexMatrix directions_;
  ComplexMatrix generator_;
  ComplexVector weights_;
  ComplexVector target_;
  double window_start_;
  bool infinite_tail_;
  double anchor_ = 0.0;
  std::vector<Complex> rates_;
  std::vector<Complex> coefficients_;
  double l2_norm_ = 0.0;
  double truncated_mass_ = 0.0;
};

/// The n x m pulse matrix Xi(t) = -e^{-A# t} C^T S# for t <= 0 (# denotes
/// elementwise conjugation), zero for t > 0.
ComplexMatrix xi_at(const PassiveSystem& sys, double t);

/// Input pulse Xi(t)^T x, which writes the unit vector x into the modes.
PulsePlan pulse_for_target(const PassiveSystem& sys, const ComplexVector& x,
                           double eps_trunc = kTruncationEps,
                           double tol = kStructuralTol);

/// -sum_k x_k u_k e^{z_k t}. With use_raw_u the directions are the raw
/// S^H C v_unit and the predicted target is sum_k x_k v_unit_k; otherwise the
/// unit directions u_k are used and the target is sum_k x_k v_k.
PulsePlan zero_mode_pulse(const std::vector<ZeroRecord>& zeros,
                          const std::vector<Complex>& x, bool use_raw_u,
                          double eps_trunc = kTruncationEps);

/// zeta(t) = -sqrt(z + z*) e^{z t} on t <= 0, unit L2 norm.
struct RisingExponential {
  Complex z;
  Complex operator()(double t) const;
};

RisingExponential normalized_rising_exponential(Complex z);

struct SeparableOptions {
  Eigen::Index channel = 0;  // zero-based, used by the blocking route
  double basis_align_tol = kBasisAlignTol;
  double eps_trunc = kTruncationEps;
  ZeroOptions zero_options{};
};

struct SeparableResult {
  std::optional<PulsePlan> plan;
  /// Human-readable reason for the chosen route or for its absence.
  std::string justification;
  /// The zero the plan is built on, or the one the entangled alternative uses.
  std::optional<ZeroRecord> zero;
  /// When no separable plan exists: the zero-mode plan on the first zero.
  std::optional<PulsePlan> entangled_alternative;
};

/// Looks for a single-channel rising exponential that is absorbed perfectly:
/// first through a blocking zero, then through a zero whose direction is a
/// standard basis vector.
SeparableResult separable_transfer_plan(const PassiveSystem& sys,
                                        const SeparableOptions& opts = {});

}  // namespace photonxfer
