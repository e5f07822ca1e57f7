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

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Amplitude-array kernels. Each kernel exists as a portable scalar reference
// and, where the target supports it, an AVX2+FMA variant. The active table is
// picked once at startup from CPUID and can be pinned with set_isa() or the
// PLATEAU_SIMD environment variable ("scalar" or "avx2").
//
// Layout: interleaved std::complex<double>, basis index k, qubit q occupies
// bit (n - 1 - q) of k. Kernels see only bit masks, never qubit numbers.

namespace plateau::qsim::kernels {

using cplx = std::complex<double>;

// Row-major 2x2 complex matrix.
struct Mat2 {
  cplx m00, m01, m10, m11;
};

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  // amps[i0], amps[i0 | mask] <- m * (amps[i0], amps[i0 | mask]) for every
  // i0 with the mask bit clear. dim is a power of two >= 2.
  void (*apply_1q)(cplx* amps, std::size_t dim, std::size_t mask, const Mat2& m);
  // Diagonal gate: amps[k] *= (k & mask) ? d1 : d0.
  void (*apply_diag)(cplx* amps, std::size_t dim, std::size_t mask, cplx d0, cplx d1);
  // Swap amps[k] and amps[k ^ tmask] for every k with cmask set, tmask clear.
  void (*apply_cnot)(cplx* amps, std::size_t dim, std::size_t cmask, std::size_t tmask);
  // sum_k (+1 if k & mask == 0 else -1) * |amps[k]|^2
  double (*expectation_z)(const cplx* amps, std::size_t dim, std::size_t mask);
  double (*norm_sq)(const cplx* amps, std::size_t dim);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;

bool cpu_supports(Isa isa) noexcept;

// Best ISA the running CPU supports, honouring PLATEAU_SIMD.
Isa detect_isa() noexcept;

const KernelTable& active() noexcept;

// Throws Error(Argument) if the ISA is unavailable on this build or CPU.
void set_isa(Isa isa);

std::string_view to_string(Isa isa) noexcept;

}  // namespace plateau::qsim::kernels
