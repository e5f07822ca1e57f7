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

#include "plateau/autodiff.hpp"

#include <cmath>
#include <numbers>

#include "plateau/error.hpp"
#include "plateau/rng.hpp"

namespace plateau {

using qsim::StateVector;

namespace {

constexpr double kShift = std::numbers::pi / 2.0;

void apply_gate(StateVector& s, const Gate& g, std::span<const double> theta) {
  if (g.kind == Gate::Kind::Rotation) {
    s.rotate(g.qubit, g.axis, theta[g.param]);
  } else {
    s.cnot(g.qubit, g.target);
  }
}

double run_suffix(StateVector s, std::span<const Gate> suffix, std::span<const double> theta) {
  for (const Gate& g : suffix) apply_gate(s, g, theta);
  return qsim::expectation_z(s, kReadout);
}

}  // namespace

ShiftedExpectations shifted_expectations(const CircuitSpec& spec, std::span<const double> theta,
                                         const StateVector& input) {
  check_parameters(spec, theta);
  if (input.n_qubits() != spec.n_qubits()) {
    raise(ErrorKind::Shape, "input state does not match circuit width");
  }
  const std::size_t p = spec.parameter_count();
  ShiftedExpectations out;
  out.plus.assign(p, 0.0);
  out.minus.assign(p, 0.0);

  const auto gates = spec.gates();
  StateVector prefix = input;
  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    const Gate& g = gates[gi];
    if (g.kind == Gate::Kind::Rotation) {
      const auto suffix = gates.subspan(gi + 1);
      const double t = theta[g.param];
      StateVector s = prefix;
      s.rotate(g.qubit, g.axis, t + kShift);
      out.plus[g.param] = run_suffix(std::move(s), suffix, theta);
      s = prefix;
      s.rotate(g.qubit, g.axis, t - kShift);
      out.minus[g.param] = run_suffix(std::move(s), suffix, theta);
    }
    apply_gate(prefix, g, theta);
  }
  out.value = qsim::expectation_z(prefix, kReadout);
  return out;
}

GradientVector expectation_gradient(const CircuitSpec& spec, std::span<const double> theta,
                                    const StateVector& input) {
  const ShiftedExpectations f = shifted_expectations(spec, theta, input);
  GradientVector g(f.plus.size());
  for (std::size_t d = 0; d < g.size(); ++d) g[d] = 0.5 * (f.plus[d] - f.minus[d]);
  return g;
}

std::uint64_t shift_shot_seed(std::uint64_t base, std::size_t sample_index, std::size_t param,
                              int direction) noexcept {
  return derive_seed(base, {stream::kShots, sample_index, param + 1,
                            static_cast<std::uint64_t>(direction)});
}

GradientVector parameter_shift_gradient(const CircuitSpec& spec, std::span<const double> theta,
                                        std::span<const Sample> batch,
                                        const std::optional<qsim::ShotConfig>& shots) {
  check_parameters(spec, theta);
  if (batch.empty()) raise(ErrorKind::Argument, "empty batch");
  const std::size_t p = spec.parameter_count();
  GradientVector grad(p, 0.0);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Sample& sample = batch[i];
    const ShiftedExpectations f =
        shifted_expectations(spec, theta, amplitude_encode(sample.features, spec.n_qubits()));
    double yhat = f.value;
    if (shots) {
      yhat = qsim::sample_from_expectation(
          yhat, {shots->shots, sample_shot_seed(shots->rng_seed, i)});
    }
    const double outer = -2.0 * (static_cast<double>(sample.label) - yhat);
    for (std::size_t d = 0; d < p; ++d) {
      double fp = f.plus[d];
      double fm = f.minus[d];
      if (shots) {
        fp = qsim::sample_from_expectation(
            fp, {shots->shots, shift_shot_seed(shots->rng_seed, i, d, 0)});
        fm = qsim::sample_from_expectation(
            fm, {shots->shots, shift_shot_seed(shots->rng_seed, i, d, 1)});
      }
      grad[d] += outer * 0.5 * (fp - fm);
    }
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (double& g : grad) g *= inv;
  return grad;
}

GradientVector finite_difference_gradient(const CircuitSpec& spec,
                                          std::span<const double> theta,
                                          std::span<const Sample> batch, double h) {
  if (!(h > 0.0 && h < 0.1)) raise(ErrorKind::Argument, "finite-difference step must be in (0, 0.1)");
  check_parameters(spec, theta);
  std::vector<double> probe(theta.begin(), theta.end());
  GradientVector grad(probe.size());
  for (std::size_t d = 0; d < probe.size(); ++d) {
    const double t = probe[d];
    probe[d] = t + h;
    const double up = batch_loss(spec, probe, batch);
    probe[d] = t - h;
    const double down = batch_loss(spec, probe, batch);
    probe[d] = t;
    grad[d] = (up - down) / (2.0 * h);
  }
  return grad;
}

double gradient_norm(std::span<const double> g) noexcept {
  double sq = 0.0;
  for (double v : g) sq += v * v;
  return std::sqrt(sq);
}

}  // namespace plateau
