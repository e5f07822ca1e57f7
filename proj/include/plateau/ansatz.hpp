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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "plateau/qsim/state_vector.hpp"

namespace plateau {

using ParameterVector = std::vector<double>;

struct Sample {
  std::vector<double> features;
  int label = 1;  // -1 or +1
};

/// One operation of the layered ansatz.
struct Gate {
  enum class Kind { Rotation, Cnot };
  Kind kind = Kind::Rotation;
  qsim::Axis axis = qsim::Axis::X;
  int qubit = 0;             // rotation target, or CNOT control
  int target = 0;            // CNOT target
  std::size_t param = 0;     // rotation parameter index
};

/// Hardware-style layered ansatz: per layer, Rx on every qubit, then Ry,
/// then Rz, then a nearest-neighbour CNOT chain q -> q+1.
///
/// Parameter index of the rotation on (layer, axis, qubit) is
/// layer * 3n + axis * n + qubit.
class CircuitSpec {
 public:
  CircuitSpec(int n_qubits, int layers);

  int n_qubits() const noexcept { return n_qubits_; }
  int layers() const noexcept { return layers_; }
  std::size_t parameter_count() const noexcept {
    return std::size_t{3} * static_cast<std::size_t>(n_qubits_ * layers_);
  }
  std::size_t param_index(int layer, qsim::Axis axis, int qubit) const noexcept;

  /// Gates in application order.
  std::span<const Gate> gates() const noexcept { return gates_; }

 private:
  int n_qubits_;
  int layers_;
  std::vector<Gate> gates_;
};

CircuitSpec build_ansatz(int n_qubits, int layers);

/// features / ||features||, zero padded to 2^n amplitudes.
qsim::StateVector amplitude_encode(std::span<const double> features, int n_qubits);

/// Error(Shape) unless theta matches the circuit and is finite.
void check_parameters(const CircuitSpec& spec, std::span<const double> theta);

qsim::StateVector run_circuit(const CircuitSpec& spec, std::span<const double> theta,
                              const qsim::StateVector& input);

// The model reads Pauli-Z on qubit 0.
inline constexpr qsim::PauliZ kReadout{0};

double predict(const CircuitSpec& spec, std::span<const double> theta, const Sample& sample,
               const std::optional<qsim::ShotConfig>& shots = std::nullopt);

/// Per-sample shot seed used by batch_loss: derived from (shots.rng_seed, index).
std::uint64_t sample_shot_seed(std::uint64_t base, std::size_t sample_index) noexcept;

double squared_error(int label, double prediction) noexcept;

/// Mean squared error over the batch. In shot mode sample i draws its shots
/// from sample_shot_seed(shots.rng_seed, i).
double batch_loss(const CircuitSpec& spec, std::span<const double> theta,
                  std::span<const Sample> batch,
                  const std::optional<qsim::ShotConfig>& shots = std::nullopt);

/// Percentage of samples with sign(prediction) == label; sign(0) is +1.
double accuracy(const CircuitSpec& spec, std::span<const double> theta,
                std::span<const Sample> dataset);

}  // namespace plateau
