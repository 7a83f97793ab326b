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

// Complex double-precision inner loops used by the time integrators.
//
// Every kernel has a portable scalar reference implementation. Vectorized
// variants (AVX2+FMA on x86-64, NEON on AArch64) are compiled into separate
// translation units and picked at runtime from the CPU feature set. The
// environment variable PHOTONXFER_KERNELS={auto,scalar,avx2,neon} overrides
// the choice on first use.
//
// All buffers hold interleaved std::complex<double>; matrices are row-major.

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace photonxfer::kernels {

using cplx = std::complex<double>;

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  Backend backend;
  /// y = A x, A is rows x cols.
  void (*matvec)(std::size_t rows, std::size_t cols, const cplx* a,
                 const cplx* x, cplx* y);
  /// y += A x.
  void (*matvec_add)(std::size_t rows, std::size_t cols, const cplx* a,
                     const cplx* x, cplx* y);
  /// y += alpha x.
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// sum |x_i|^2.
  double (*norm_sq)(std::size_t n, const cplx* x);
};

std::string_view name(Backend backend) noexcept;

/// True when the backend was compiled in and the CPU supports it.
bool supported(Backend backend) noexcept;

/// Best supported backend on this machine.
Backend detect() noexcept;

/// Table for a specific backend. Throws PreconditionError if unsupported.
const KernelTable& table(Backend backend);

/// Currently selected table.
const KernelTable& active() noexcept;

/// Switch the process-wide backend. Throws PreconditionError if unsupported.
void select(Backend backend);

namespace scalar {
void matvec(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x,
            cplx* y);
void matvec_add(std::size_t rows, std::size_t cols, const cplx* a,
                const cplx* x, cplx* y);
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
double norm_sq(std::size_t n, const cplx* x);
}  // namespace scalar

}  // namespace photonxfer::kernels
