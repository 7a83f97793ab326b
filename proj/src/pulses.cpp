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

#include "photonxfer/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "photonxfer/error.hpp"

namespace photonxfer {

namespace {

// Grid points within this relative distance of a support edge count as
// inside it.
constexpr double kEdgeSlack = 1e-12;

std::vector<Complex> sorted_spectrum(const ComplexMatrix& m) {
  std::vector<Complex> out;
  if (m.rows() == 0) return out;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("pulse generator spectrum did not converge");
  }
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    out.push_back(solver.eigenvalues()(i));
  }
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
  });
  return out;
}

double slowest_rate(const std::vector<Complex>& rates) {
  double slowest = std::numeric_limits<double>::infinity();
  for (const auto& r : rates) slowest = std::min(slowest, r.real());
  return slowest;
}

// int_0^tau e^{M^H s} Q e^{M s} ds via the block exponential
// exp([[-M^H, Q], [0, M]] tau) = [[., F12], [0, F22]]  ->  F22^H F12.
// int_0^tau e^{M^H s} Q e^{M s} ds. For Hurwitz M this is X - e^{M^H tau} X
// e^{M tau} with M^H X + X M + Q = 0, which never forms a growing
// exponential; otherwise the Van Loan block exponential is used.
ComplexMatrix window_gramian(const ComplexMatrix& m, const ComplexMatrix& q,
                             double tau) {
  const Eigen::Index r = m.rows();
  if (spectral_abscissa(m) < 0.0) {
    const ComplexMatrix x = solve_lyapunov(m.adjoint(), q);
    const ComplexMatrix decay = expm(m, tau);
    return x - decay.adjoint() * x * decay;
  }
  ComplexMatrix block = ComplexMatrix::Zero(2 * r, 2 * r);
  block.topLeftCorner(r, r) = -m.adjoint();
  block.topRightCorner(r, r) = q;
  block.bottomRightCorner(r, r) = m;
  const ComplexMatrix f = expm(block, tau);
  return f.bottomRightCorner(r, r).adjoint() * f.topRightCorner(r, r);
}

ComplexMatrix basis_column(Eigen::Index size, Eigen::Index k, Complex value) {
  ComplexMatrix col = ComplexMatrix::Zero(size, 1);
  col(k, 0) = value;
  return col;
}

std::string format_vector(const ComplexVector& v) {
  std::ostringstream os;
  os.precision(6);
  os << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v(i).real();
    if (v(i).imag() != 0.0) os << (v(i).imag() < 0 ? "-" : "+")
                               << std::abs(v(i).imag()) << "i";
  }
  os << "]";
  return os.str();
}

}  // namespace

std::string_view to_string(Construction c) noexcept {
  switch (c) {
    case Construction::kXiRowCombination:
      return "xi-row-combination";
    case Construction::kZeroMode:
      return "zero-mode";
    case Construction::kSeparableBlocking:
      return "separable-blocking";
    case Construction::kSeparableBasis:
      return "separable-basis";
    case Construction::kTimeReversed:
      return "time-reversed";
    case Construction::kCustom:
      return "custom";
  }
  return "custom";
}

std::optional<Construction> construction_from_string(std::string_view s) {
  for (auto c : {Construction::kXiRowCombination, Construction::kZeroMode,
                 Construction::kSeparableBlocking,
                 Construction::kSeparableBasis, Construction::kTimeReversed,
                 Construction::kCustom}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

double truncation_window(double slowest_rate, double eps) {
  if (!(slowest_rate > 0.0) || !std::isfinite(slowest_rate)) {
    throw PreconditionError(
        "truncation_window: slowest rising rate must be positive and finite");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw PreconditionError("truncation_window: eps must lie in (0, 1)");
  }
  return std::log(eps) / slowest_rate;
}

PulsePlan::PulsePlan(Construction construction, ComplexMatrix directions,
                     ComplexMatrix generator, ComplexVector weights,
                     ComplexVector predicted_target, double window_start,
                     bool infinite_tail, std::vector<Complex> rates,
                     std::vector<Complex> coefficients, double anchor)
    : construction_(construction),
      directions_(std::move(directions)),
      generator_(std::move(generator)),
      weights_(std::move(weights)),
      target_(std::move(predicted_target)),
      window_start_(window_start),
      infinite_tail_(infinite_tail),
      anchor_(anchor),
      rates_(std::move(rates)),
      coefficients_(std::move(coefficients)) {
  const Eigen::Index r = generator_.rows();
  if (generator_.cols() != r || directions_.cols() != r ||
      weights_.size() != r) {
    throw DimensionError(
        "PulsePlan: directions, generator and weights disagree on the number "
        "of exponential terms");
  }
  if (!(window_start_ < 0.0) || !std::isfinite(window_start_)) {
    throw PreconditionError("PulsePlan: window start must be finite and < 0");
  }
  if (!std::isfinite(anchor_)) {
    throw PreconditionError("PulsePlan: anchor must be finite");
  }
  const double target_norm = target_.norm();
  if (target_norm > 0.0) target_ /= target_norm;

  if (r == 0) return;
  const ComplexMatrix q = directions_.adjoint() * directions_;
  const double tau = -window_start_;
  if (infinite_tail_) {
    if (!(spectral_abscissa(-generator_) < 0.0)) {
      throw PreconditionError(
          "PulsePlan: a pulse with an infinite tail needs every rate in the "
          "right half plane");
    }
    const ComplexMatrix gram = solve_lyapunov(-generator_.adjoint(), q);
    const ComplexVector w_end = expm_action(generator_, -anchor_, weights_);
    l2_norm_ = std::sqrt(std::max(0.0, w_end.dot(gram * w_end).real()));
    const ComplexVector w_start =
        expm_action(generator_, window_start_ - anchor_, weights_);
    truncated_mass_ = std::max(0.0, w_start.dot(gram * w_start).real());
  } else if (spectral_abscissa(-generator_) < 0.0) {
    // Rising on a finite window: integrate backwards from t = 0.
    const ComplexVector w_end = expm_action(generator_, -anchor_, weights_);
    const ComplexMatrix gram = window_gramian(-generator_, q, tau);
    l2_norm_ = std::sqrt(std::max(0.0, w_end.dot(gram * w_end).real()));
  } else {
    const ComplexVector w_start =
        expm_action(generator_, window_start_ - anchor_, weights_);
    const ComplexMatrix gram = window_gramian(generator_, q, tau);
    l2_norm_ = std::sqrt(std::max(0.0, w_start.dot(gram * w_start).real()));
  }
}

ComplexVector PulsePlan::at(double t) const {
  const double slack = kEdgeSlack * std::abs(window_start_);
  if (t > slack || (!infinite_tail_ && t < window_start_ - slack)) {
    return ComplexVector::Zero(channels());
  }
  if (generator_.rows() == 0) return ComplexVector::Zero(channels());
  return directions_ * expm_action(generator_, t - anchor_, weights_);
}

ComplexMatrix PulsePlan::sample(double t_start, double step,
                                std::size_t count) const {
  if (!(step > 0.0)) throw PreconditionError("PulsePlan::sample: step <= 0");
  ComplexMatrix out = ComplexMatrix::Zero(channels(),
                                          static_cast<Eigen::Index>(count));
  if (generator_.rows() == 0 || count == 0) return out;

  const double slack = kEdgeSlack * std::max(std::abs(window_start_),
                                             std::abs(t_start));
  const double lower = infinite_tail_
                           ? -std::numeric_limits<double>::infinity()
                           : window_start_ - slack;
  auto time = [&](std::size_t k) {
    return t_start + static_cast<double>(k) * step;
  };
  std::size_t first = 0;
  while (first < count && time(first) < lower) ++first;
  std::size_t end = first;
  while (end < count && time(end) <= slack) ++end;
  if (first == end) return out;

  // March so that the step propagator contracts: backwards for rising
  // pulses, forwards otherwise. Marching a rising pulse forwards would
  // amplify round-off in its fast components by e^{Re(rate) |T0|}.
  if (spectral_abscissa(-generator_) < 0.0) {
    const ComplexMatrix retreat = expm(generator_, -step);
    ComplexVector g = expm_action(generator_, time(end - 1) - anchor_, weights_);
    for (std::size_t k = end; k-- > first;) {
      out.col(static_cast<Eigen::Index>(k)) = directions_ * g;
      g = retreat * g;
    }
  } else {
    const ComplexMatrix advance = expm(generator_, step);
    ComplexVector g = expm_action(generator_, time(first) - anchor_, weights_);
    for (std::size_t k = first; k < end; ++k) {
      out.col(static_cast<Eigen::Index>(k)) = directions_ * g;
      g = advance * g;
    }
  }
  return out;
}

PulsePlan PulsePlan::normalized() const {
  if (!(l2_norm_ > 0.0)) {
    throw PreconditionError("PulsePlan::normalized: pulse has zero norm");
  }
  PulsePlan out = *this;
  out.directions_ /= l2_norm_;
  out.truncated_mass_ /= l2_norm_ * l2_norm_;
  out.l2_norm_ = 1.0;
  return out;
}

PulsePlan PulsePlan::time_reversed() const {
  std::vector<Complex> rates;
  rates.reserve(rates_.size());
  for (const auto& r : rates_) rates.push_back(-r);
  // shape(T0 - t) = K e^{-M (t - (T0 - a))} w.
  return PulsePlan(Construction::kTimeReversed, directions_, -generator_,
                   weights_, target_, window_start_, false, std::move(rates),
                   coefficients_, window_start_ - anchor_);
}

ComplexMatrix xi_at(const PassiveSystem& sys, double t) {
  const Eigen::Index n = sys.modes();
  const Eigen::Index m = sys.channels();
  if (t > 0.0) return ComplexMatrix::Zero(n, m);
  return -expm(-sys.drift().conjugate(), t) * sys.coupling().transpose() *
         sys.scattering().conjugate();
}

PulsePlan pulse_for_target(const PassiveSystem& sys, const ComplexVector& x,
                           double eps_trunc, double tol) {
  require_valid(sys, tol);
  if (x.size() != sys.modes()) {
    std::ostringstream os;
    os << "pulse_for_target: expected " << sys.modes()
       << " coefficients, got " << x.size();
    throw DimensionError(os.str());
  }
  if (std::abs(x.norm() - 1.0) > tol) {
    std::ostringstream os;
    os << "pulse_for_target: coefficients must have unit norm, got "
       << x.norm();
    throw PreconditionError(os.str());
  }
  const ComplexMatrix generator = -sys.drift().adjoint();
  std::vector<Complex> rates = sorted_spectrum(generator);
  const double window = truncation_window(slowest_rate(rates), eps_trunc);
  std::vector<Complex> coeffs(x.data(), x.data() + x.size());
  return PulsePlan(Construction::kXiRowCombination,
                   -sys.scattering().adjoint() * sys.coupling(), generator, x,
                   x, window, true, std::move(rates), std::move(coeffs));
}

PulsePlan zero_mode_pulse(const std::vector<ZeroRecord>& zeros,
                          const std::vector<Complex>& x, bool use_raw_u,
                          double eps_trunc) {
  if (zeros.empty()) {
    throw PreconditionError("zero_mode_pulse: no zeros given");
  }
  if (x.size() != zeros.size()) {
    std::ostringstream os;
    os << "zero_mode_pulse: " << zeros.size() << " zeros but " << x.size()
       << " coefficients";
    throw DimensionError(os.str());
  }
  if (std::all_of(x.begin(), x.end(),
                  [](const Complex& c) { return c == Complex(0.0, 0.0); })) {
    throw PreconditionError("zero_mode_pulse: all coefficients are zero");
  }
  const Eigen::Index m = zeros.front().u.size();
  const Eigen::Index n = zeros.front().v.size();
  const auto r = static_cast<Eigen::Index>(zeros.size());

  ComplexMatrix directions(m, r);
  ComplexMatrix generator = ComplexMatrix::Zero(r, r);
  ComplexVector weights(r);
  ComplexVector target = ComplexVector::Zero(n);
  std::vector<Complex> rates;
  for (Eigen::Index k = 0; k < r; ++k) {
    const ZeroRecord& rec = zeros[static_cast<std::size_t>(k)];
    const ComplexVector& u = use_raw_u ? rec.u_raw : rec.u;
    const ComplexVector& v = use_raw_u ? rec.v_unit : rec.v;
    if (u.size() != m || v.size() != n) {
      throw DimensionError("zero_mode_pulse: zero records disagree on sizes");
    }
    directions.col(k) = -u;
    generator(k, k) = rec.z;
    weights(k) = x[static_cast<std::size_t>(k)];
    target += x[static_cast<std::size_t>(k)] * v;
    rates.push_back(rec.z);
  }
  if (!(target.norm() > 0.0)) {
    throw PreconditionError(
        "zero_mode_pulse: coefficients cancel; predicted target is zero");
  }
  const double window = truncation_window(slowest_rate(rates), eps_trunc);
  return PulsePlan(Construction::kZeroMode, std::move(directions),
                   std::move(generator), std::move(weights), std::move(target),
                   window, true, std::move(rates), x);
}

Complex RisingExponential::operator()(double t) const {
  if (t > 0.0) return Complex(0.0, 0.0);
  return -std::sqrt(2.0 * z.real()) * std::exp(z * t);
}

RisingExponential normalized_rising_exponential(Complex z) {
  if (!(z.real() > 0.0)) {
    std::ostringstream os;
    os << "normalized_rising_exponential: Re z must be positive, got " << z;
    throw PreconditionError(os.str());
  }
  return RisingExponential{z};
}

SeparableResult separable_transfer_plan(const PassiveSystem& sys,
                                        const SeparableOptions& opts) {
  const Eigen::Index m = sys.channels();
  if (opts.channel < 0 || opts.channel >= m) {
    std::ostringstream os;
    os << "separable_transfer_plan: channel " << opts.channel + 1
       << " out of range 1.." << m;
    throw PreconditionError(os.str());
  }
  const std::vector<ZeroRecord> zeros =
      transmission_zeros(sys, opts.zero_options);

  auto single_channel_plan = [&](Construction tag, const ZeroRecord& rec,
                                 Eigen::Index k, ComplexVector target) {
    const double amp = std::sqrt(2.0 * rec.z.real());
    ComplexMatrix generator(1, 1);
    generator(0, 0) = rec.z;
    return PulsePlan(tag, basis_column(m, k, -amp), std::move(generator),
                     ComplexVector::Ones(1), std::move(target),
                     truncation_window(rec.z.real(), opts.eps_trunc), true,
                     {rec.z}, {Complex(1.0, 0.0)});
  };

  SeparableResult result;
  for (const auto& rec : zeros) {
    if (!rec.is_blocking) continue;
    const ComplexMatrix v = v_matrix(sys, rec.z, opts.zero_options.pole_tol);
    ComplexVector target = std::sqrt(2.0 * rec.z.real()) * v.col(opts.channel);
    std::ostringstream os;
    os << "blocking zero z = " << rec.z
       << ": a normalized rising exponential on channel " << opts.channel + 1
       << " alone is absorbed; final mode amplitudes follow column "
       << opts.channel + 1 << " of sqrt(z + z*) V";
    result.justification = os.str();
    result.plan = single_channel_plan(Construction::kSeparableBlocking, rec,
                                      opts.channel, std::move(target));
    result.zero = rec;
    return result;
  }

  for (const auto& rec : zeros) {
    for (Eigen::Index k = 0; k < m; ++k) {
      ComplexVector diff = rec.u;
      diff(k) -= 1.0;
      if (diff.norm() > opts.basis_align_tol) continue;
      ComplexVector target = -std::sqrt(2.0 * rec.z.real()) * rec.v;
      std::ostringstream os;
      os << "zero z = " << rec.z << " has direction u = e_" << k + 1
         << " (||u - e_k|| = " << diff.norm()
         << "): a normalized rising exponential on channel " << k + 1
         << " alone is absorbed; target is -sqrt(z + z*) v up to a global "
            "phase";
      result.justification = os.str();
      result.plan = single_channel_plan(Construction::kSeparableBasis, rec, k,
                                        std::move(target));
      result.zero = rec;
      return result;
    }
  }

  const ZeroRecord& first = zeros.front();
  std::ostringstream os;
  os << "entangled input required: no blocking zero and no zero direction "
        "aligned with a single channel; zero z = "
     << first.z << " needs the multi-channel input u = "
     << format_vector(first.u) << " (raw S^H C v = "
     << format_vector(first.u_raw) << ")";
  result.justification = os.str();
  result.zero = first;
  result.entangled_alternative =
      zero_mode_pulse({first}, {Complex(1.0, 0.0)}, false, opts.eps_trunc)
          .normalized();
  return result;
}

}  // namespace photonxfer
