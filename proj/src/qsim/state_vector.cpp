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

#include "plateau/qsim/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "plateau/error.hpp"
#include "plateau/rng.hpp"

namespace plateau::qsim {
namespace {

void check_qubit(const StateVector& s, int q) {
  if (q < 0 || q >= s.n_qubits()) {
    raise(ErrorKind::Index, "qubit " + std::to_string(q) + " outside register of " +
                                std::to_string(s.n_qubits()));
  }
}

}  // namespace

char axis_name(Axis axis) noexcept {
  switch (axis) {
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  return '?';
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    raise(ErrorKind::Size, "qubit count " + std::to_string(n_qubits) + " not in [1, " +
                               std::to_string(kMaxQubits) + "]");
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
  const std::size_t len = amplitudes.size();
  if (len < 2 || !std::has_single_bit(len) ||
      len > (std::size_t{1} << kMaxQubits)) {
    raise(ErrorKind::Size, "amplitude count " + std::to_string(len) +
                               " is not 2^n for 1 <= n <= " + std::to_string(kMaxQubits));
  }
  StateVector s;
  s.n_qubits_ = std::countr_zero(len);
  s.amps_ = std::move(amplitudes);
  return s;
}

double StateVector::norm_sq() const noexcept {
  return kernels::active().norm_sq(amps_.data(), amps_.size());
}

void StateVector::rotate(int qubit, Axis axis, double angle) {
  check_qubit(*this, qubit);
  if (!std::isfinite(angle)) raise(ErrorKind::Numeric, "non-finite rotation angle");
  const auto& k = kernels::active();
  const std::size_t mask = mask_of(qubit);
  if (axis == Axis::Z) {
    const double h = 0.5 * angle;
    k.apply_diag(amps_.data(), amps_.size(), mask, {std::cos(h), -std::sin(h)},
                 {std::cos(h), std::sin(h)});
  } else {
    k.apply_1q(amps_.data(), amps_.size(), mask, rotation_matrix(axis, angle));
  }
}

void StateVector::cnot(int control, int target) {
  check_qubit(*this, control);
  check_qubit(*this, target);
  if (control == target) raise(ErrorKind::Argument, "CNOT control equals target");
  kernels::active().apply_cnot(amps_.data(), amps_.size(), mask_of(control), mask_of(target));
}

StateVector zero_state(int n_qubits) { return StateVector(n_qubits); }

kernels::Mat2 rotation_matrix(Axis axis, double angle) noexcept {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  switch (axis) {
    case Axis::X: return {{c, 0.0}, {0.0, -s}, {0.0, -s}, {c, 0.0}};
    case Axis::Y: return {{c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0}};
    case Axis::Z: break;
  }
  return {{c, -s}, {0.0, 0.0}, {0.0, 0.0}, {c, s}};
}

StateVector apply_rotation(const StateVector& state, int qubit, Axis axis, double angle) {
  StateVector out = state;
  out.rotate(qubit, axis, angle);
  return out;
}

StateVector apply_cnot(const StateVector& state, int control, int target) {
  StateVector out = state;
  out.cnot(control, target);
  return out;
}

double expectation_z(const StateVector& state, PauliZ obs) {
  check_qubit(state, obs.qubit);
  const auto amps = state.amplitudes();
  const double e = kernels::active().expectation_z(amps.data(), amps.size(),
                                                   state.mask_of(obs.qubit));
  return std::clamp(e, -1.0, 1.0);
}

double sample_from_expectation(double exact_expectation, const ShotConfig& cfg) {
  if (cfg.shots == 0) raise(ErrorKind::Argument, "shot count must be >= 1");
  const double p_plus = std::clamp(0.5 * (1.0 + exact_expectation), 0.0, 1.0);
  const auto m = static_cast<std::int64_t>(cfg.shots);
  std::int64_t n_plus;
  if (p_plus >= 1.0) {
    n_plus = m;
  } else if (p_plus <= 0.0) {
    n_plus = 0;
  } else {
    Rng rng(cfg.rng_seed);
    n_plus = std::binomial_distribution<std::int64_t>(m, p_plus)(rng);
  }
  return static_cast<double>(2 * n_plus - m) / static_cast<double>(m);
}

double sample_expectation(const StateVector& state, PauliZ obs, const ShotConfig& cfg) {
  if (cfg.shots == 0) raise(ErrorKind::Argument, "shot count must be >= 1");
  return sample_from_expectation(expectation_z(state, obs), cfg);
}

}  // namespace plateau::qsim
