/*
 * Copyright 2026 The Plateau Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <atomic>
#include <cstdlib>
#include <string>

#include "plateau/error.hpp"
#include "plateau/qsim/kernels.hpp"

namespace plateau::qsim::kernels {

#if defined(PLATEAU_HAVE_AVX2)
const KernelTable* avx2_table_impl() noexcept;
#endif

namespace {

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> table{nullptr};
  return table;
}

const KernelTable& table_for(Isa isa) noexcept {
  if (isa == Isa::Avx2) {
    if (const KernelTable* t = avx2_table()) return *t;
  }
  return scalar_table();
}

}  // namespace

const KernelTable* avx2_table() noexcept {
#if defined(PLATEAU_HAVE_AVX2)
  return avx2_table_impl();
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(PLATEAU_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() noexcept {
  if (const char* env = std::getenv("PLATEAU_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && cpu_supports(Isa::Avx2)) return Isa::Avx2;
  }
  return cpu_supports(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

const KernelTable& active() noexcept {
  const KernelTable* t = slot().load(std::memory_order_acquire);
  if (t == nullptr) {
    t = &table_for(detect_isa());
    slot().store(t, std::memory_order_release);
  }
  return *t;
}

void set_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    raise(ErrorKind::Argument, std::string("kernel ISA not available: ") +
                                   std::string(to_string(isa)));
  }
  slot().store(&table_for(isa), std::memory_order_release);
}

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

}  // namespace plateau::qsim::kernels
