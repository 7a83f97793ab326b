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

#include "photonxfer/zeros.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "photonxfer/error.hpp"

namespace photonxfer {

namespace {

void check_pole_distance(const PassiveSystem& sys, Complex s,
                         double pole_tol) {
  if (sys.modes() == 0) return;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(sys.drift(), false);
  const double scale = std::max(1.0, sys.drift().norm());
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex pole = solver.eigenvalues()(i);
    if (std::abs(s - pole) <= pole_tol * scale) {
      std::ostringstream os;
      os << "evaluation point " << s << " is within " << pole_tol * scale
         << " of the pole " << pole;
      throw PoleProximityError(os.str());
    }
  }
}

ComplexMatrix resolvent_times(const PassiveSystem& sys, Complex s,
                              const ComplexMatrix& rhs) {
  const Eigen::Index n = sys.modes();
  const ComplexMatrix shifted =
      s * ComplexMatrix::Identity(n, n) - sys.drift();
  return Eigen::PartialPivLU<ComplexMatrix>(shifted).solve(rhs);
}

}  // namespace

ComplexMatrix v_matrix(const PassiveSystem& sys, Complex z, double pole_tol) {
  check_pole_distance(sys, z, pole_tol);
  if (sys.modes() == 0) return ComplexMatrix::Zero(0, sys.channels());
  return resolvent_times(sys, z,
                         sys.coupling().adjoint() * sys.scattering());
}

ComplexMatrix transfer_at(const PassiveSystem& sys, Complex s,
                          double pole_tol) {
  const ComplexMatrix v = v_matrix(sys, s, pole_tol);
  return sys.scattering() - sys.coupling() * v;
}

std::vector<ZeroRecord> transmission_zeros(const PassiveSystem& sys,
                                           const ZeroOptions& opts) {
  require_valid(sys, opts.structural_tol);

  const ComplexMatrix& s = sys.scattering();
  const ComplexMatrix neg_adj = -sys.drift().adjoint();
  const EigenDecomposition pairs = eig(neg_adj);
  const double s_norm = s.norm();
  const double a_norm = sys.drift().norm();

  std::vector<ZeroRecord> records;
  records.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ZeroRecord rec;
    rec.z = pairs.values[i];
    rec.v_unit = pairs.vectors[i];
    rec.u_raw = s.adjoint() * sys.coupling() * rec.v_unit;

    const double raw_norm = rec.u_raw.norm();
    if (!(raw_norm > 0.0)) {
      std::ostringstream os;
      os << "zero " << rec.z << " has a vanishing direction S^H C v";
      throw NumericalFailure(os.str());
    }
    rec.u = rec.u_raw / raw_norm;
    const Complex phase = align_phase(rec.u);
    rec.v = rec.v_unit * (phase / raw_norm);

    const ComplexMatrix g = transfer_at(sys, rec.z, opts.pole_tol);
    rec.residual = (g * rec.u).norm();
    rec.is_blocking = g.norm() <= opts.blocking_tol * s_norm;

    const double eig_res = (neg_adj * rec.v_unit - rec.z * rec.v_unit).norm();
    std::ostringstream os;
    if (!(rec.z.real() > 0.0)) {
      os << "zero " << rec.z << " is not in the right half plane";
    } else if (eig_res > opts.structural_tol * std::max(1.0, a_norm)) {
      os << "zero " << rec.z << " has eigen-residual " << eig_res;
    } else if (!(rec.residual <= opts.blocking_tol * s_norm)) {
      os << "zero " << rec.z << " has ||G(z) u|| = " << rec.residual
         << " above " << opts.blocking_tol << " * ||S||_F";
    }
    if (!os.str().empty()) throw NumericalFailure(os.str());
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<ZeroRecord> blocking_zeros(const PassiveSystem& sys,
                                       const ZeroOptions& opts) {
  std::vector<ZeroRecord> all = transmission_zeros(sys, opts);
  std::erase_if(all, [](const ZeroRecord& r) { return !r.is_blocking; });
  return all;
}

}  // namespace photonxfer
