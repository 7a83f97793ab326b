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

#include "photonxfer/model.hpp"

#include <cmath>
#include <sstream>

#include "photonxfer/error.hpp"

namespace photonxfer {

namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(),
                                          a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

double unitarity_defect(const ComplexMatrix& s) {
  return (s.adjoint() * s -
          ComplexMatrix::Identity(s.cols(), s.cols()))
      .norm();
}

}  // namespace

PassiveSystem::PassiveSystem(ComplexMatrix omega, ComplexMatrix coupling,
                             ComplexMatrix scattering)
    : omega_(std::move(omega)),
      coupling_(std::move(coupling)),
      scattering_(std::move(scattering)) {
  std::ostringstream os;
  if (omega_.rows() != omega_.cols()) {
    os << "omega must be square, got " << omega_.rows() << "x"
       << omega_.cols();
  } else if (scattering_.rows() != scattering_.cols()) {
    os << "scattering must be square, got " << scattering_.rows() << "x"
       << scattering_.cols();
  } else if (coupling_.rows() != scattering_.rows() ||
             coupling_.cols() != omega_.rows()) {
    os << "coupling must be " << scattering_.rows() << "x" << omega_.rows()
       << " (channels x modes), got " << coupling_.rows() << "x"
       << coupling_.cols();
  }
  if (!os.str().empty()) throw DimensionError(os.str());
  drift_ = -kI * omega_ - 0.5 * coupling_.adjoint() * coupling_;
}

PassiveSystem PassiveSystem::from_drift(const ComplexMatrix& drift,
                                        ComplexMatrix coupling,
                                        ComplexMatrix scattering, double tol) {
  if (drift.rows() != drift.cols() || coupling.cols() != drift.rows()) {
    throw DimensionError("from_drift: drift must be square with one column of "
                         "coupling per mode");
  }
  ComplexMatrix omega = kI * (drift + 0.5 * coupling.adjoint() * coupling);
  const double defect = (omega - omega.adjoint()).norm();
  if (defect > tol * std::max(1.0, omega.norm())) {
    std::ostringstream os;
    os << "from_drift: Omega = i(A + C^H C/2) is not Hermitian (defect "
       << defect << "); the drift is not passive for this coupling";
    throw PreconditionError(os.str());
  }
  omega = (0.5 * (omega + omega.adjoint())).eval();
  return PassiveSystem(std::move(omega), std::move(coupling),
                       std::move(scattering));
}

ComplexMatrix drift_matrix(const PassiveSystem& sys) { return sys.drift(); }

ValidationReport validate(const PassiveSystem& sys, double tol,
                          double hurwitz_margin) {
  ValidationReport report;
  const ComplexMatrix& omega = sys.omega();
  report.hermiticity_defect = (omega - omega.adjoint()).norm();
  report.unitarity_defect = unitarity_defect(sys.scattering());

  bool ok = true;
  if (report.hermiticity_defect > tol * std::max(1.0, omega.norm())) {
    ok = false;
    std::ostringstream os;
    os << "omega is not Hermitian: ||Omega - Omega^H||_F = "
       << report.hermiticity_defect;
    report.messages.push_back(os.str());
  }
  if (report.unitarity_defect > tol) {
    ok = false;
    std::ostringstream os;
    os << "scattering is not unitary: ||S^H S - I||_F = "
       << report.unitarity_defect;
    report.messages.push_back(os.str());
  }

  if (sys.modes() == 0) {
    report.hurwitz_margin_found = std::numeric_limits<double>::infinity();
  } else {
    try {
      report.hurwitz_margin_found = -spectral_abscissa(sys.drift());
    } catch (const Error& e) {
      report.hurwitz_margin_found = 0.0;
      report.messages.push_back(e.what());
    }
    if (!(report.hurwitz_margin_found > hurwitz_margin)) {
      ok = false;
      std::ostringstream os;
      os << "drift matrix is not Hurwitz: max Re lambda(A) = "
         << -report.hurwitz_margin_found << " (required < " << -hurwitz_margin
         << "); a mode may be decoupled from every channel";
      report.messages.push_back(os.str());
    } else {
      try {
        eig(sys.drift());
      } catch (const NumericalFailure& e) {
        report.messages.push_back(
            std::string("drift matrix may be defective (non-diagonalizable): ") +
            e.what());
      }
    }
  }
  report.passed = ok;
  return report;
}

void require_valid(const PassiveSystem& sys, double tol) {
  const ValidationReport report = validate(sys, tol);
  if (report.passed) return;
  std::string msg = "system failed validation";
  for (const auto& m : report.messages) msg += "; " + m;
  throw PreconditionError(msg);
}

PassiveSystem direct_sum(const PassiveSystem& first,
                         const PassiveSystem& second) {
  return PassiveSystem(block_diag(first.omega(), second.omega()),
                       block_diag(first.coupling(), second.coupling()),
                       block_diag(first.scattering(), second.scattering()));
}

PassiveSystem prepend_scattering(const PassiveSystem& sys,
                                 const ComplexMatrix& s_static, double tol) {
  if (s_static.rows() != sys.channels() || s_static.cols() != sys.channels()) {
    std::ostringstream os;
    os << "prepend_scattering: expected a " << sys.channels() << "x"
       << sys.channels() << " matrix, got " << s_static.rows() << "x"
       << s_static.cols();
    throw DimensionError(os.str());
  }
  const double defect = unitarity_defect(s_static);
  if (defect > tol) {
    std::ostringstream os;
    os << "prepend_scattering: static scattering is not unitary "
          "(||S^H S - I||_F = "
       << defect << ")";
    throw PreconditionError(os.str());
  }
  return PassiveSystem(sys.omega(), sys.coupling(),
                       sys.scattering() * s_static);
}

ComplexMatrix beam_splitter(double alpha, double beta, double tol) {
  const double defect = std::abs(alpha * alpha + beta * beta - 1.0);
  if (!(defect <= tol)) {
    std::ostringstream os;
    os << "beam_splitter: alpha^2 + beta^2 must equal 1, got "
       << alpha * alpha + beta * beta;
    throw PreconditionError(os.str());
  }
  ComplexMatrix s(2, 2);
  s << alpha, beta, beta, -alpha;
  return s;
}

}  // namespace photonxfer
