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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plateau/optim/objective.hpp"
#include "plateau/optim/optimizers.hpp"

namespace plateau {

/// Everything needed to construct any optimizer by name.
struct OptimizerSpec {
  std::string name = "nlr";  // sgd momentum rmsprop adam nlr backtrack
                             // perturb_gauss perturb_uniform reinit
  double eta = 0.01;
  double eta_prime = 0.02;
  double nu = 0.0;
  int depth_L = 1;
  Schedule schedule = Schedule::Constant;
  double schedule_t0 = 100.0;
  double momentum = 0.9;
  double rms_decay = 0.9;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  int armijo_max_shrinks = 30;
  std::size_t perturb_warmup = 100;
  std::size_t reinit_window = 20;
  double reinit_threshold = 1e-3;
  std::uint64_t seed = 0;  // randomised optimizers only
};

const std::vector<std::string>& optimizer_names();

/// Error(Config) for an unknown name.
std::unique_ptr<Optimizer> make_optimizer(const OptimizerSpec& spec);

struct TrainOptions {
  std::uint64_t steps = 500;
  // Log Objective::report_loss every this many steps (0: final step only).
  std::uint64_t report_every = 0;
};

struct TrainTrace {
  std::vector<StepEvent> events;
  std::vector<double> losses;      // mini-batch loss at theta_t
  std::vector<double> grad_norms;  // ||g_t||
  // report_loss at theta_{t+1}, where logged.
  std::vector<std::optional<double>> report_losses;
  ParameterVector final_parameters;
  std::size_t reversal_count = 0;

  std::size_t size() const noexcept { return events.size(); }
  /// Last logged report loss, or the last mini-batch loss_after.
  double final_loss() const;
};

/// Runs the optimisation loop: for t = 0..T-1, objective.begin_step(t), one
/// optimizer step, record.
TrainTrace train(Objective& objective, Optimizer& optimizer, ParameterVector theta0,
                 const TrainOptions& options);

}  // namespace plateau
