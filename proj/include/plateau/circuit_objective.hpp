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

#include <cstdint>
#include <optional>
#include <vector>

#include "plateau/ansatz.hpp"
#include "plateau/autodiff.hpp"
#include "plateau/optim/objective.hpp"
#include "plateau/rng.hpp"

namespace plateau {

struct CircuitObjectiveConfig {
  std::size_t batch_size = 32;
  std::uint64_t shots = 0;  // 0: exact expectations
  double grad_noise_sigma = 0.0;  // isotropic, E||xi||^2 = sigma^2
  std::uint64_t seed = 0;
};

/// Mini-batch squared-error loss of the ansatz classifier.
///
/// begin_step(t) draws batch t without replacement from the training set
/// (the whole set when it is smaller than the batch) and fixes the shot seed
/// for that step; the accept/reverse comparison therefore sees one batch and
/// one set of shot streams. report_loss() is the exact full-training-set loss.
class CircuitObjective final : public Objective {
 public:
  CircuitObjective(CircuitSpec spec, std::vector<Sample> train_set, CircuitObjectiveConfig cfg);

  std::size_t dimension() const override { return spec_.parameter_count(); }
  double evaluate(std::span<const double> theta) override;
  GradientVector gradient(std::span<const double> theta) override;
  void begin_step(std::uint64_t step) override;
  std::optional<double> report_loss(std::span<const double> theta) override;

  const CircuitSpec& spec() const noexcept { return spec_; }
  const std::vector<Sample>& batch() const noexcept { return batch_; }

 private:
  std::optional<qsim::ShotConfig> shot_config() const;

  CircuitSpec spec_;
  std::vector<Sample> train_;
  CircuitObjectiveConfig cfg_;
  std::vector<Sample> batch_;
  std::vector<std::size_t> order_;
  std::uint64_t step_ = 0;
  Rng noise_rng_;
};

}  // namespace plateau
