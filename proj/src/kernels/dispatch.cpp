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

#include <atomic>
#include <cstdlib>
#include <string>

#include "backends.hpp"
#include "photonxfer/error.hpp"

namespace photonxfer::kernels {

namespace {

const KernelTable kScalarTable{Backend::kScalar, &scalar::matvec,
                               &scalar::matvec_add, &scalar::axpy,
                               &scalar::norm_sq};

bool cpu_has_avx2() noexcept {
#if defined(PHOTONXFER_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() noexcept {
  const char* env = std::getenv("PHOTONXFER_KERNELS");
  const std::string choice = env ? env : "auto";
  Backend wanted = detect();
  if (choice == "scalar") wanted = Backend::kScalar;
  if (choice == "avx2" && supported(Backend::kAvx2)) wanted = Backend::kAvx2;
  if (choice == "neon" && supported(Backend::kNeon)) wanted = Backend::kNeon;
  return &table(wanted);
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> ptr{initial_table()};
  return ptr;
}

}  // namespace

std::string_view name(Backend backend) noexcept {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

bool supported(Backend backend) noexcept {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
      return cpu_has_avx2();
    case Backend::kNeon:
#if defined(PHOTONXFER_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend detect() noexcept {
  if (supported(Backend::kAvx2)) return Backend::kAvx2;
  if (supported(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

const KernelTable& table(Backend backend) {
  if (!supported(backend)) {
    throw PreconditionError("kernel backend '" + std::string(name(backend)) +
                            "' is not available on this machine");
  }
  switch (backend) {
#if defined(PHOTONXFER_HAVE_AVX2)
    case Backend::kAvx2:
      return avx2::table();
#endif
#if defined(PHOTONXFER_HAVE_NEON)
    case Backend::kNeon:
      return neon::table();
#endif
    default:
      return kScalarTable;
  }
}

const KernelTable& active() noexcept {
  return *current().load(std::memory_order_acquire);
}

void select(Backend backend) {
  current().store(&table(backend), std::memory_order_release);
}

}  // namespace photonxfer::kernels
