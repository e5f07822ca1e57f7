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

#include <optional>
#include <span>
#include <vector>

#include "plateau/ansatz.hpp"

namespace plateau {

using GradientVector = std::vector<double>;

/// Readout expectation of the circuit and of every +-pi/2 parameter shift,
/// for one encoded input. plus[d] / minus[d] are f(theta +- (pi/2) e_d).
struct ShiftedExpectations {
  double value = 0.0;
  std::vector<double> plus;
  std::vector<double> minus;
};

/// Evaluates all 2P shifted circuits exactly. The state before each rotation
/// is computed once and shared by both shifts of that parameter.
ShiftedExpectations shifted_expectations(const CircuitSpec& spec, std::span<const double> theta,
                                         const qsim::StateVector& input);

/// Exact d<Z_0>/d theta by the parameter-shift rule.
GradientVector expectation_gradient(const CircuitSpec& spec, std::span<const double> theta,
                                    const qsim::StateVector& input);

/// Seed for the shots of shift `direction` (0 = plus, 1 = minus) of
/// parameter d on sample i.
std::uint64_t shift_shot_seed(std::uint64_t base, std::size_t sample_index, std::size_t param,
                              int direction) noexcept;

/// Gradient of the mean squared-error batch loss: per sample
/// -2 (y - yhat) * (f(+) - f(-)) / 2, averaged over the batch. With shots,
/// yhat uses the same per-sample seeds as batch_loss and each shifted circuit
/// draws from shift_shot_seed.
GradientVector parameter_shift_gradient(const CircuitSpec& spec, std::span<const double> theta,
                                        std::span<const Sample> batch,
                                        const std::optional<qsim::ShotConfig>& shots = std::nullopt);

/// Central differences of the exact batch loss; Error(Argument) unless 0 < h < 0.1.
GradientVector finite_difference_gradient(const CircuitSpec& spec,
                                          std::span<const double> theta,
                                          std::span<const Sample> batch, double h);

double gradient_norm(std::span<const double> g) noexcept;

}  // namespace plateau
