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

// Compiled with -mavx2 -mfma. Nothing in here may run before cpu_supports()
// has confirmed both extensions.
#include "plateau/qsim/kernels.hpp"

#include <immintrin.h>

namespace plateau::qsim::kernels {

void cnot_reference(cplx* amps, std::size_t dim, std::size_t cmask, std::size_t tmask);

namespace {

// Complex multiply of two packed amplitudes x = [r0 i0 r1 i1] by per-lane
// coefficients given as cr = [cr0 cr0 cr1 cr1], ci = [ci0 ci0 ci1 ci1].
inline __m256d cmul(__m256d x, __m256d cr, __m256d ci) {
  const __m256d xs = _mm256_permute_pd(x, 0b0101);  // [i0 r0 i1 r1]
  return _mm256_fmaddsub_pd(x, cr, _mm256_mul_pd(xs, ci));
}

inline __m256d cmul_add(__m256d acc, __m256d x, __m256d cr, __m256d ci) {
  return _mm256_add_pd(acc, cmul(x, cr, ci));
}

inline __m256d bcast_re(cplx c) { return _mm256_set1_pd(c.real()); }
inline __m256d bcast_im(cplx c) { return _mm256_set1_pd(c.imag()); }

inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }
inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }

void apply_1q_avx2(cplx* amps, std::size_t dim, std::size_t mask, const Mat2& m) {
  if (mask == 1) {
    // Pair (k, k+1) shares one register: [a0 a1] -> [m00 a0 + m01 a1, m10 a0 + m11 a1].
    const __m256d dr = _mm256_setr_pd(m.m00.real(), m.m00.real(), m.m11.real(), m.m11.real());
    const __m256d di = _mm256_setr_pd(m.m00.imag(), m.m00.imag(), m.m11.imag(), m.m11.imag());
    const __m256d orr = _mm256_setr_pd(m.m01.real(), m.m01.real(), m.m10.real(), m.m10.real());
    const __m256d oi = _mm256_setr_pd(m.m01.imag(), m.m01.imag(), m.m10.imag(), m.m10.imag());
    for (std::size_t k = 0; k < dim; k += 2) {
      const __m256d v = _mm256_loadu_pd(raw(amps + k));
      const __m256d swapped = _mm256_permute2f128_pd(v, v, 0x01);
      _mm256_storeu_pd(raw(amps + k), cmul_add(cmul(v, dr, di), swapped, orr, oi));
    }
    return;
  }
  const __m256d r00 = bcast_re(m.m00), i00 = bcast_im(m.m00);
  const __m256d r01 = bcast_re(m.m01), i01 = bcast_im(m.m01);
  const __m256d r10 = bcast_re(m.m10), i10 = bcast_im(m.m10);
  const __m256d r11 = bcast_re(m.m11), i11 = bcast_im(m.m11);
  for (std::size_t base = 0; base < dim; base += 2 * mask) {
    for (std::size_t j = 0; j < mask; j += 2) {
      double* p0 = raw(amps + base + j);
      double* p1 = raw(amps + base + j + mask);
      const __m256d a0 = _mm256_loadu_pd(p0);
      const __m256d a1 = _mm256_loadu_pd(p1);
      _mm256_storeu_pd(p0, cmul_add(cmul(a0, r00, i00), a1, r01, i01));
      _mm256_storeu_pd(p1, cmul_add(cmul(a0, r10, i10), a1, r11, i11));
    }
  }
}

void apply_diag_avx2(cplx* amps, std::size_t dim, std::size_t mask, cplx d0, cplx d1) {
  if (mask == 1) {
    const __m256d cr = _mm256_setr_pd(d0.real(), d0.real(), d1.real(), d1.real());
    const __m256d ci = _mm256_setr_pd(d0.imag(), d0.imag(), d1.imag(), d1.imag());
    for (std::size_t k = 0; k < dim; k += 2) {
      _mm256_storeu_pd(raw(amps + k), cmul(_mm256_loadu_pd(raw(amps + k)), cr, ci));
    }
    return;
  }
  const __m256d r0 = bcast_re(d0), i0 = bcast_im(d0);
  const __m256d r1 = bcast_re(d1), i1 = bcast_im(d1);
  for (std::size_t k = 0; k < dim; k += 2) {
    const bool hi = (k & mask) != 0;
    _mm256_storeu_pd(raw(amps + k),
                     cmul(_mm256_loadu_pd(raw(amps + k)), hi ? r1 : r0, hi ? i1 : i0));
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double expectation_z_avx2(const cplx* amps, std::size_t dim, std::size_t mask) {
  __m256d acc = _mm256_setzero_pd();
  if (mask == 1) {
    const __m256d sign = _mm256_setr_pd(1.0, 1.0, -1.0, -1.0);
    for (std::size_t k = 0; k < dim; k += 2) {
      const __m256d v = _mm256_loadu_pd(raw(amps + k));
      acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), sign, acc);
    }
    return hsum(acc);
  }
  const __m256d plus = _mm256_set1_pd(1.0);
  const __m256d minus = _mm256_set1_pd(-1.0);
  for (std::size_t k = 0; k < dim; k += 2) {
    const __m256d v = _mm256_loadu_pd(raw(amps + k));
    acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), (k & mask) ? minus : plus, acc);
  }
  return hsum(acc);
}

double norm_sq_avx2(const cplx* amps, std::size_t dim) {
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t k = 0; k < dim; k += 2) {
    const __m256d v = _mm256_loadu_pd(raw(amps + k));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  return hsum(acc);
}

constexpr KernelTable kAvx2{
    Isa::Avx2,      apply_1q_avx2,      apply_diag_avx2,
    cnot_reference, expectation_z_avx2, norm_sq_avx2,
};

}  // namespace

const KernelTable* avx2_table_impl() noexcept { return &kAvx2; }

}  // namespace plateau::qsim::kernels
