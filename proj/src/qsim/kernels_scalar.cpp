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

#include "plateau/qsim/kernels.hpp"

#include <utility>

namespace plateau::qsim::kernels {
namespace {

void apply_1q_scalar(cplx* amps, std::size_t dim, std::size_t mask, const Mat2& m) {
  for (std::size_t base = 0; base < dim; base += 2 * mask) {
    for (std::size_t j = 0; j < mask; ++j) {
      const std::size_t i0 = base + j;
      const std::size_t i1 = i0 + mask;
      const cplx a0 = amps[i0];
      const cplx a1 = amps[i1];
      amps[i0] = m.m00 * a0 + m.m01 * a1;
      amps[i1] = m.m10 * a0 + m.m11 * a1;
    }
  }
}

void apply_diag_scalar(cplx* amps, std::size_t dim, std::size_t mask, cplx d0, cplx d1) {
  for (std::size_t k = 0; k < dim; ++k) amps[k] *= (k & mask) ? d1 : d0;
}

void apply_cnot_scalar(cplx* amps, std::size_t dim, std::size_t cmask, std::size_t tmask) {
  for (std::size_t k = 0; k < dim; ++k) {
    if ((k & cmask) && !(k & tmask)) std::swap(amps[k], amps[k | tmask]);
  }
}

double expectation_z_scalar(const cplx* amps, std::size_t dim, std::size_t mask) {
  double acc = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double p = std::norm(amps[k]);
    acc += (k & mask) ? -p : p;
  }
  return acc;
}

double norm_sq_scalar(const cplx* amps, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t k = 0; k < dim; ++k) acc += std::norm(amps[k]);
  return acc;
}

constexpr KernelTable kScalar{
    Isa::Scalar,       apply_1q_scalar,      apply_diag_scalar,
    apply_cnot_scalar, expectation_z_scalar, norm_sq_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

// The AVX2 table reuses this swap loop: CNOT is a pure permutation and is
// bandwidth bound at the register sizes we support.
void cnot_reference(cplx* amps, std::size_t dim, std::size_t cmask, std::size_t tmask) {
  apply_cnot_scalar(amps, dim, cmask, tmask);
}

}  // namespace plateau::qsim::kernels
