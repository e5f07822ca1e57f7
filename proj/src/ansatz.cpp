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

#include "plateau/ansatz.hpp"

#include <cmath>
#include <string>

#include "plateau/error.hpp"
#include "plateau/rng.hpp"

namespace plateau {

using qsim::Axis;
using qsim::StateVector;

CircuitSpec::CircuitSpec(int n_qubits, int layers) : n_qubits_(n_qubits), layers_(layers) {
  if (n_qubits < 2) raise(ErrorKind::Argument, "ansatz needs at least 2 qubits");
  if (n_qubits > qsim::kMaxQubits) {
    raise(ErrorKind::Size, "ansatz qubit count " + std::to_string(n_qubits) + " too large");
  }
  if (layers < 1) raise(ErrorKind::Argument, "ansatz needs at least 1 layer");

  gates_.reserve(parameter_count() + static_cast<std::size_t>((n_qubits - 1) * layers));
  for (int l = 0; l < layers; ++l) {
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
      for (int q = 0; q < n_qubits; ++q) {
        gates_.push_back({Gate::Kind::Rotation, axis, q, 0, param_index(l, axis, q)});
      }
    }
    for (int q = 0; q + 1 < n_qubits; ++q) {
      gates_.push_back({Gate::Kind::Cnot, Axis::X, q, q + 1, 0});
    }
  }
}

std::size_t CircuitSpec::param_index(int layer, Axis axis, int qubit) const noexcept {
  return static_cast<std::size_t>(layer) * 3 * static_cast<std::size_t>(n_qubits_) +
         static_cast<std::size_t>(axis) * static_cast<std::size_t>(n_qubits_) +
         static_cast<std::size_t>(qubit);
}

CircuitSpec build_ansatz(int n_qubits, int layers) { return CircuitSpec(n_qubits, layers); }

StateVector amplitude_encode(std::span<const double> features, int n_qubits) {
  StateVector state(n_qubits);
  if (features.empty()) raise(ErrorKind::Encoding, "empty feature vector");
  if (features.size() > state.dim()) {
    raise(ErrorKind::Size, std::to_string(features.size()) + " features exceed 2^" +
                               std::to_string(n_qubits) + " amplitudes");
  }
  double sq = 0.0;
  for (double f : features) {
    if (!std::isfinite(f)) raise(ErrorKind::Encoding, "non-finite feature");
    sq += f * f;
  }
  if (!(sq > 0.0)) raise(ErrorKind::Encoding, "feature vector has zero norm");
  const double inv = 1.0 / std::sqrt(sq);
  auto amps = state.amplitudes();
  amps[0] = 0.0;
  for (std::size_t k = 0; k < features.size(); ++k) amps[k] = features[k] * inv;
  return state;
}

void check_parameters(const CircuitSpec& spec, std::span<const double> theta) {
  if (theta.size() != spec.parameter_count()) {
    raise(ErrorKind::Shape, "expected " + std::to_string(spec.parameter_count()) +
                                " parameters, got " + std::to_string(theta.size()));
  }
  for (double t : theta) {
    if (!std::isfinite(t)) raise(ErrorKind::Numeric, "non-finite circuit parameter");
  }
}

StateVector run_circuit(const CircuitSpec& spec, std::span<const double> theta,
                        const StateVector& input) {
  check_parameters(spec, theta);
  if (input.n_qubits() != spec.n_qubits()) {
    raise(ErrorKind::Shape, "input state has " + std::to_string(input.n_qubits()) +
                                " qubits, circuit has " + std::to_string(spec.n_qubits()));
  }
  StateVector state = input;
  for (const Gate& g : spec.gates()) {
    if (g.kind == Gate::Kind::Rotation) {
      state.rotate(g.qubit, g.axis, theta[g.param]);
    } else {
      state.cnot(g.qubit, g.target);
    }
  }
  return state;
}

double predict(const CircuitSpec& spec, std::span<const double> theta, const Sample& sample,
               const std::optional<qsim::ShotConfig>& shots) {
  const StateVector out =
      run_circuit(spec, theta, amplitude_encode(sample.features, spec.n_qubits()));
  const double exact = qsim::expectation_z(out, kReadout);
  return shots ? qsim::sample_from_expectation(exact, *shots) : exact;
}

std::uint64_t sample_shot_seed(std::uint64_t base, std::size_t sample_index) noexcept {
  return derive_seed(base, {stream::kShots, sample_index});
}

double squared_error(int label, double prediction) noexcept {
  const double r = static_cast<double>(label) - prediction;
  return r * r;
}

double batch_loss(const CircuitSpec& spec, std::span<const double> theta,
                  std::span<const Sample> batch, const std::optional<qsim::ShotConfig>& shots) {
  if (batch.empty()) raise(ErrorKind::Argument, "empty batch");
  double sum = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    std::optional<qsim::ShotConfig> cfg;
    if (shots) cfg = qsim::ShotConfig{shots->shots, sample_shot_seed(shots->rng_seed, i)};
    sum += squared_error(batch[i].label, predict(spec, theta, batch[i], cfg));
  }
  return sum / static_cast<double>(batch.size());
}

double accuracy(const CircuitSpec& spec, std::span<const double> theta,
                std::span<const Sample> dataset) {
  if (dataset.empty()) raise(ErrorKind::Argument, "empty dataset");
  std::size_t correct = 0;
  for (const Sample& s : dataset) {
    const int sign = predict(spec, theta, s) >= 0.0 ? 1 : -1;
    if (sign == s.label) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(dataset.size());
}

}  // namespace plateau
