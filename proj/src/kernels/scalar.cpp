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

#include "photonxfer/kernels.hpp"

namespace photonxfer::kernels::scalar {

namespace {

inline void mul_acc(double ar, double ai, double br, double bi, double& re,
                    double& im) {
  re += ar * br - ai * bi;
  im += ar * bi + ai * br;
}

}  // namespace

void matvec(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x,
            cplx* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = cplx(0.0, 0.0);
  matvec_add(rows, cols, a, x, y);
}

void matvec_add(std::size_t rows, std::size_t cols, const cplx* a,
                const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const cplx* row = a + i * cols;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      mul_acc(row[j].real(), row[j].imag(), x[j].real(), x[j].imag(), re, im);
    }
    y[i] = cplx(y[i].real() + re, y[i].imag() + im);
  }
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    double re = y[i].real();
    double im = y[i].imag();
    mul_acc(ar, ai, x[i].real(), x[i].imag(), re, im);
    y[i] = cplx(re, im);
  }
}

double norm_sq(std::size_t n, const cplx* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

}  // namespace photonxfer::kernels::scalar
