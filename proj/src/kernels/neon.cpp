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

// AArch64 variant. One float64x2_t holds one complex value.

#include <arm_neon.h>

#include "backends.hpp"

namespace photonxfer::kernels::neon {

namespace {

// a * b for a = [ar, ai], b = [br, bi]:
//   [ar*br, ai*br] + [-ai*bi, ar*bi]
inline float64x2_t cmul_acc(float64x2_t acc, float64x2_t a, float64x2_t b) {
  const float64x2_t b_re = vdupq_laneq_f64(b, 0);
  const float64x2_t b_im = vdupq_laneq_f64(b, 1);
  const float64x2_t a_sw = vextq_f64(a, a, 1);
  const float64x2_t sign = {-1.0, 1.0};
  acc = vfmaq_f64(acc, a, b_re);
  return vfmaq_f64(acc, vmulq_f64(a_sw, sign), b_im);
}

void matvec_add(std::size_t rows, std::size_t cols, const cplx* a,
                const cplx* x, cplx* y) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < rows; ++i) {
    float64x2_t acc = vdupq_n_f64(0.0);
    const double* row = ad + 2 * i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      acc = cmul_acc(acc, vld1q_f64(row + 2 * j), vld1q_f64(xd + 2 * j));
    }
    vst1q_f64(yd + 2 * i, vaddq_f64(vld1q_f64(yd + 2 * i), acc));
  }
}

void matvec(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x,
            cplx* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = cplx(0.0, 0.0);
  matvec_add(rows, cols, a, x, y);
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const float64x2_t av = {alpha.real(), alpha.imag()};
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(yd + 2 * i,
              cmul_acc(vld1q_f64(yd + 2 * i), av, vld1q_f64(xd + 2 * i)));
  }
}

double norm_sq(std::size_t n, const cplx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(xd + 2 * i);
    acc = vfmaq_f64(acc, v, v);
  }
  return vaddvq_f64(acc);
}

const KernelTable kTable{Backend::kNeon, &matvec, &matvec_add, &axpy,
                         &norm_sq};

}  // namespace

const KernelTable& table() noexcept { return kTable; }

}  // namespace photonxfer::kernels::neon
