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

#include "plateau/optim/train.hpp"

#include <algorithm>

#include "plateau/error.hpp"

namespace plateau {

const std::vector<std::string>& optimizer_names() {
  static const std::vector<std::string> names{
      "sgd",       "momentum",      "rmsprop",         "adam",  "nlr",
      "backtrack", "perturb_gauss", "perturb_uniform", "reinit"};
  return names;
}

std::unique_ptr<Optimizer> make_optimizer(const OptimizerSpec& s) {
  if (s.name == "sgd") return std::make_unique<SgdOptimizer>(s.eta);
  if (s.name == "momentum") return std::make_unique<MomentumOptimizer>(s.eta, s.momentum);
  if (s.name == "rmsprop") return std::make_unique<RmsPropOptimizer>(s.eta, s.rms_decay);
  if (s.name == "adam") {
    return std::make_unique<AdamOptimizer>(s.eta, s.adam_beta1, s.adam_beta2, s.adam_eps);
  }
  if (s.name == "nlr") {
    NlrConfig cfg;
    cfg.eta = s.eta;
    cfg.eta_prime = s.eta_prime;
    cfg.noise_rate_nu = s.nu;
    cfg.circuit_depth_L = s.depth_L;
    cfg.schedule = s.schedule;
    cfg.schedule_t0 = s.schedule_t0;
    return std::make_unique<NlrOptimizer>(cfg);
  }
  if (s.name == "backtrack") {
    return std::make_unique<ArmijoOptimizer>(
        ArmijoConfig{s.eta, s.armijo_c, s.armijo_shrink, s.armijo_max_shrinks});
  }
  if (s.name == "perturb_gauss" || s.name == "perturb_uniform") {
    const NoiseKind kind = s.name == "perturb_gauss" ? NoiseKind::Gaussian : NoiseKind::Uniform;
    return std::make_unique<PerturbationOptimizer>(s.eta, s.eta_prime, kind, s.seed,
                                                   s.perturb_warmup);
  }
  if (s.name == "reinit") {
    return std::make_unique<RandomReinitOptimizer>(
        s.eta, PlateauDetector{s.reinit_window, s.reinit_threshold}, s.seed);
  }
  raise(ErrorKind::Config, "unknown optimizer '" + s.name + "'");
}

double TrainTrace::final_loss() const {
  if (events.empty()) raise(ErrorKind::Argument, "empty trace");
  for (auto it = report_losses.rbegin(); it != report_losses.rend(); ++it) {
    if (*it) return **it;
  }
  return events.back().loss_after;
}

TrainTrace train(Objective& objective, Optimizer& optimizer, ParameterVector theta0,
                 const TrainOptions& options) {
  if (options.steps < 1) raise(ErrorKind::Argument, "training needs at least one step");
  if (theta0.size() != objective.dimension()) {
    raise(ErrorKind::Shape, "initial parameters do not match objective dimension");
  }
  TrainTrace trace;
  trace.events.reserve(options.steps);
  trace.losses.reserve(options.steps);
  trace.grad_norms.reserve(options.steps);
  trace.report_losses.reserve(options.steps);

  ParameterVector theta = std::move(theta0);
  for (std::uint64_t t = 0; t < options.steps; ++t) {
    objective.begin_step(t);
    const StepEvent ev = optimizer.step(objective, theta, t);
    trace.events.push_back(ev);
    trace.losses.push_back(ev.loss_before);
    trace.grad_norms.push_back(ev.grad_norm);
    if (ev.kind == StepKind::Reversal) ++trace.reversal_count;

    const bool last = t + 1 == options.steps;
    const bool periodic = options.report_every > 0 && (t + 1) % options.report_every == 0;
    trace.report_losses.push_back(last || periodic ? objective.report_loss(theta)
                                                   : std::nullopt);
  }
  trace.final_parameters = std::move(theta);
  return trace;
}

}  // namespace plateau
