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
#include <cstdint>
#include <span>
#include <vector>

#include "plateau/qsim/kernels.hpp"

namespace plateau::qsim {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 14;

enum class Axis { X, Y, Z };

char axis_name(Axis axis) noexcept;

/// Dense n-qubit pure state. Qubit 0 is the most significant bit of the
/// basis index.
class StateVector {
 public:
  /// |0...0> on n qubits; Error(Size) unless 1 <= n <= kMaxQubits.
  explicit StateVector(int n_qubits);

  /// Adopts amplitudes as given. The length must be 2^n for some valid n;
  /// normalisation is the caller's responsibility.
  static StateVector from_amplitudes(std::vector<cplx> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }

  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  const cplx& operator[](std::size_t k) const { return amps_[k]; }

  /// Bit mask of qubit q inside a basis index.
  std::size_t mask_of(int qubit) const noexcept {
    return std::size_t{1} << (n_qubits_ - 1 - qubit);
  }

  double norm_sq() const noexcept;

  // In-place gate application; used on the hot path by the circuit engine.
  void rotate(int qubit, Axis axis, double angle);
  void cnot(int control, int target);

 private:
  StateVector() = default;

  int n_qubits_ = 0;
  std::vector<cplx> amps_;
};

struct PauliZ {
  int qubit = 0;
};

struct ShotConfig {
  std::uint64_t shots = 1000;
  std::uint64_t rng_seed = 0;
};

StateVector zero_state(int n_qubits);

/// exp(-i angle/2 P) for the Pauli on `axis`.
kernels::Mat2 rotation_matrix(Axis axis, double angle) noexcept;

StateVector apply_rotation(const StateVector& state, int qubit, Axis axis, double angle);
StateVector apply_cnot(const StateVector& state, int control, int target);

double expectation_z(const StateVector& state, PauliZ obs);

/// Mean of `cfg.shots` +-1 outcomes drawn with P(+1) = (1 + <Z>)/2.
double sample_expectation(const StateVector& state, PauliZ obs, const ShotConfig& cfg);

/// Shot estimator given an already computed exact expectation value.
double sample_from_expectation(double exact_expectation, const ShotConfig& cfg);

}  // namespace plateau::qsim
