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

// Dense reference simulator used as an independent oracle: builds full
// 2^n x 2^n matrices from Kronecker products and multiplies them out.

#include <cmath>
#include <complex>
#include <vector>

#include "plateau/ansatz.hpp"

namespace oracle {

using cplx = std::complex<double>;

struct Dense {
  std::size_t n = 0;
  std::vector<cplx> a;  // row-major n x n
  explicit Dense(std::size_t dim) : n(dim), a(dim * dim) {}
  cplx& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  cplx operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

inline Dense identity(std::size_t dim) {
  Dense m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

inline Dense kron(const Dense& x, const Dense& y) {
  Dense m(x.n * y.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j)
      for (std::size_t k = 0; k < y.n; ++k)
        for (std::size_t l = 0; l < y.n; ++l) m(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
  return m;
}

inline Dense matmul(const Dense& x, const Dense& y) {
  Dense m(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      for (std::size_t j = 0; j < x.n; ++j) m(i, j) += x(i, k) * y(k, j);
  return m;
}

inline std::vector<cplx> apply(const Dense& m, const std::vector<cplx>& v) {
  std::vector<cplx> out(m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) out[i] += m(i, j) * v[j];
  return out;
}

// exp(-i angle/2 P) = cos(angle/2) I - i sin(angle/2) P
inline Dense rotation(char axis, double angle) {
  const cplx I{0.0, 1.0};
  Dense p(2);
  if (axis == 'X') {
    p(0, 1) = 1.0;
    p(1, 0) = 1.0;
  } else if (axis == 'Y') {
    p(0, 1) = -I;
    p(1, 0) = I;
  } else {
    p(0, 0) = 1.0;
    p(1, 1) = -1.0;
  }
  Dense r(2);
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r(i, j) = (i == j ? c : 0.0) - I * s * p(i, j);
  return r;
}

// Single-qubit gate on `qubit` of an n-qubit register; qubit 0 is the
// leftmost Kronecker factor.
inline Dense embed(const Dense& g, int qubit, int n) {
  Dense m = identity(1);
  for (int q = 0; q < n; ++q) m = kron(m, q == qubit ? g : identity(2));
  return m;
}

// |0><0| (x) I + |1><1| (x) X on (control, target).
inline Dense cnot(int control, int target, int n) {
  Dense p0(2), p1(2), x(2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  Dense a = identity(1), b = identity(1);
  for (int q = 0; q < n; ++q) {
    a = kron(a, q == control ? p0 : identity(2));
    b = kron(b, q == control ? p1 : (q == target ? x : identity(2)));
  }
  for (std::size_t i = 0; i < a.a.size(); ++i) a.a[i] += b.a[i];
  return a;
}

inline char axis_char(plateau::qsim::Axis a) {
  return a == plateau::qsim::Axis::X ? 'X' : a == plateau::qsim::Axis::Y ? 'Y' : 'Z';
}

inline Dense gate_matrix(const plateau::Gate& g, const std::vector<double>& theta, int n) {
  if (g.kind == plateau::Gate::Kind::Cnot) return cnot(g.qubit, g.target, n);
  return embed(rotation(axis_char(g.axis), theta[g.param]), g.qubit, n);
}

inline std::vector<cplx> run(const plateau::CircuitSpec& spec, const std::vector<double>& theta,
                             std::vector<cplx> state) {
  for (const auto& g : spec.gates()) state = oracle::apply(gate_matrix(g, theta, spec.n_qubits()), state);
  return state;
}

// <psi| Z_q |psi> via the dense diagonal.
inline double expect_z(const std::vector<cplx>& psi, int qubit, int n) {
  Dense z(2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  const Dense m = embed(z, qubit, n);
  const auto zp = oracle::apply(m, psi);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(psi[i]) * zp[i];
  return acc.real();
}

}  // namespace oracle
