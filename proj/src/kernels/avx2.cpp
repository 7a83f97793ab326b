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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "backends.hpp"

namespace photonxfer::kernels::avx2 {

namespace {

// Lanes hold [re0, im0, re1, im1]. For a row element a and vector element b,
// the product a*b = addsub(a * dup(b.re), swap(a) * dup(b.im)). addsub is
// linear, so both halves are accumulated separately and combined once.
inline __m128d row_dot(std::size_t cols, const double* a, const double* x) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= cols; j += 2) {
    const __m256d av = _mm256_loadu_pd(a + 2 * j);
    const __m256d xv = _mm256_loadu_pd(x + 2 * j);
    const __m256d x_re = _mm256_movedup_pd(xv);
    const __m256d x_im = _mm256_permute_pd(xv, 0xF);
    const __m256d a_sw = _mm256_permute_pd(av, 0x5);
    acc_re = _mm256_fmadd_pd(av, x_re, acc_re);
    acc_im = _mm256_fmadd_pd(a_sw, x_im, acc_im);
  }
  const __m256d prod = _mm256_addsub_pd(acc_re, acc_im);
  __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(prod),
                           _mm256_extractf128_pd(prod, 1));
  if (j < cols) {
    const __m128d av = _mm_loadu_pd(a + 2 * j);
    const __m128d xv = _mm_loadu_pd(x + 2 * j);
    const __m128d x_re = _mm_movedup_pd(xv);
    const __m128d x_im = _mm_permute_pd(xv, 0x3);
    const __m128d a_sw = _mm_permute_pd(av, 0x1);
    sum = _mm_add_pd(sum, _mm_addsub_pd(_mm_mul_pd(av, x_re),
                                        _mm_mul_pd(a_sw, x_im)));
  }
  return sum;
}

void matvec(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x,
            cplx* y) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < rows; ++i) {
    _mm_storeu_pd(yd + 2 * i, row_dot(cols, ad + 2 * i * cols, xd));
  }
}

void matvec_add(std::size_t rows, std::size_t cols, const cplx* a,
                const cplx* x, cplx* y) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < rows; ++i) {
    const __m128d acc = _mm_loadu_pd(yd + 2 * i);
    _mm_storeu_pd(yd + 2 * i,
                  _mm_add_pd(acc, row_dot(cols, ad + 2 * i * cols, xd)));
  }
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d a_re = _mm256_set1_pd(alpha.real());
  const __m256d a_im = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d x_sw = _mm256_permute_pd(xv, 0x5);
    const __m256d prod =
        _mm256_fmaddsub_pd(xv, a_re, _mm256_mul_pd(x_sw, a_im));
    _mm256_storeu_pd(yd + 2 * i,
                     _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
  }
  if (i < n) {
    const __m128d xv = _mm_loadu_pd(xd + 2 * i);
    const __m128d x_sw = _mm_permute_pd(xv, 0x1);
    const __m128d prod =
        _mm_addsub_pd(_mm_mul_pd(xv, _mm256_castpd256_pd128(a_re)),
                      _mm_mul_pd(x_sw, _mm256_castpd256_pd128(a_im)));
    _mm_storeu_pd(yd + 2 * i, _mm_add_pd(_mm_loadu_pd(yd + 2 * i), prod));
  }
}

double norm_sq(std::size_t n, const cplx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t len = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(xd + i);
    const __m256d v1 = _mm256_loadu_pd(xd + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 4 <= len; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(xd + i);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc),
                         _mm256_extractf128_pd(acc, 1));
  s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
  double total = _mm_cvtsd_f64(s);
  for (; i < len; ++i) total += xd[i] * xd[i];
  return total;
}

const KernelTable kTable{Backend::kAvx2, &matvec, &matvec_add, &axpy,
                         &norm_sq};

}  // namespace

const KernelTable& table() noexcept { return kTable; }

}  // namespace photonxfer::kernels::avx2
