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

#include "plateau/circuit_objective.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "plateau/error.hpp"

namespace plateau {

CircuitObjective::CircuitObjective(CircuitSpec spec, std::vector<Sample> train_set,
                                   CircuitObjectiveConfig cfg)
    : spec_(std::move(spec)), train_(std::move(train_set)), cfg_(cfg) {
  if (train_.empty()) raise(ErrorKind::Argument, "empty training set");
  if (cfg_.batch_size < 1) raise(ErrorKind::Argument, "batch size must be >= 1");
  if (!(cfg_.grad_noise_sigma >= 0.0)) raise(ErrorKind::Argument, "gradient noise must be >= 0");
  order_.resize(train_.size());
  begin_step(0);
}

void CircuitObjective::begin_step(std::uint64_t step) {
  step_ = step;
  const std::size_t n = train_.size();
  const std::size_t b = std::min(cfg_.batch_size, n);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  Rng rng(derive_seed(cfg_.seed, {stream::kBatch, step}));
  // Partial Fisher-Yates: the first b slots are a uniform draw without replacement.
  for (std::size_t i = 0; i < b; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(order_[i], order_[pick(rng)]);
  }
  batch_.clear();
  for (std::size_t i = 0; i < b; ++i) batch_.push_back(train_[order_[i]]);
  noise_rng_.seed(derive_seed(cfg_.seed, {stream::kGradNoise, step}));
}

std::optional<qsim::ShotConfig> CircuitObjective::shot_config() const {
  if (cfg_.shots == 0) return std::nullopt;
  return qsim::ShotConfig{cfg_.shots, derive_seed(cfg_.seed, {stream::kShots, step_})};
}

double CircuitObjective::evaluate(std::span<const double> theta) {
  return batch_loss(spec_, theta, batch_, shot_config());
}

GradientVector CircuitObjective::gradient(std::span<const double> theta) {
  GradientVector g = parameter_shift_gradient(spec_, theta, batch_, shot_config());
  if (cfg_.grad_noise_sigma > 0.0) {
    std::normal_distribution<double> xi(
        0.0, cfg_.grad_noise_sigma / std::sqrt(static_cast<double>(g.size())));
    for (double& v : g) v += xi(noise_rng_);
  }
  return g;
}

std::optional<double> CircuitObjective::report_loss(std::span<const double> theta) {
  return batch_loss(spec_, theta, train_);
}

}  // namespace plateau
