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
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "plateau/optim/objective.hpp"
#include "plateau/rng.hpp"

namespace plateau {

enum class StepKind {
  Descent,       // plain or accepted descent step
  Reversal,      // NLR ascent after a failed tentative descent
  Backtrack,     // Armijo step shorter than the initial trial
  Perturbation,  // random kick after a failed tentative descent
  Reinit,        // parameters resampled by the plateau detector
};

std::string_view to_string(StepKind kind) noexcept;

struct StepEvent {
  StepKind kind = StepKind::Descent;
  double loss_before = 0.0;
  // Cost at the plain tentative step theta - eta g (NaN when the rule does not
  // evaluate one).
  double loss_tentative = 0.0;
  double loss_after = 0.0;
  double grad_norm = 0.0;
  // Tentative descent increased the cost.
  bool violation = false;
  double displacement_sq = 0.0;
};

enum class Schedule { Constant, InverseTime };

struct NlrConfig {
  double eta = 0.01;
  double eta_prime = 0.02;
  double noise_rate_nu = 0.0;
  int circuit_depth_L = 1;
  bool reversal_enabled = true;
  Schedule schedule = Schedule::Constant;
  double schedule_t0 = 100.0;

  void validate() const;
};

/// eta * (1 + ln(1 + nu L)) * sqrt(sigma_H^2 / L)
double guideline_eta_prime(double eta, double nu, int depth_L, double sigma_H_sq);

struct GuidelineReport {
  double eta_prime = 0.0;
  double kappa = 0.0;  // eta_prime / eta
  bool in_recommended_band = false;  // kappa in [1.5, 3.0]
};
GuidelineReport guideline_report(double eta, double nu, int depth_L, double sigma_H_sq);

/// eta' / (1 + nu L)
double effective_eta_prime(double eta_prime, double nu, int depth_L);

/// Rate multiplier at step t: 1 for Constant, t0 / (t0 + t) for InverseTime.
double schedule_factor(Schedule schedule, double t0, std::uint64_t step) noexcept;

// ---- single-step rules --------------------------------------------------
// Each takes the objective as currently configured (mini-batch fixed) and
// returns the next parameters with a record of what happened.

using StepResult = std::pair<ParameterVector, StepEvent>;

StepResult nlr_step(Objective& objective, std::span<const double> theta, const NlrConfig& cfg,
                    std::uint64_t step = 0);

StepResult sgd_step(Objective& objective, std::span<const double> theta, double eta);

struct ArmijoConfig {
  double eta_init = 0.01;
  double c = 1e-4;
  double shrink = 0.5;
  int max_shrinks = 30;

  void validate() const;
};

/// Returns the new point and the accepted step size (0 when the cap is hit).
struct ArmijoResult {
  ParameterVector theta;
  double step_size = 0.0;
  StepEvent event;
};
ArmijoResult armijo_backtrack_step(Objective& objective, std::span<const double> theta,
                                   const ArmijoConfig& cfg);

enum class NoiseKind { Gaussian, Uniform };

struct PerturbationNoise {
  NoiseKind kind = NoiseKind::Gaussian;
  double sigma = 0.0;  // per-component standard deviation
};

/// Per-component draw with variance sigma^2 (uniform half-width sigma*sqrt(3)).
void draw_perturbation(const PerturbationNoise& noise, Rng& rng, std::span<double> out);

StepResult perturbation_step(Objective& objective, std::span<const double> theta, double eta,
                             const PerturbationNoise& noise, Rng& rng);

// ---- stateful optimizers ------------------------------------------------

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  virtual std::string name() const = 0;
  virtual StepEvent step(Objective& objective, ParameterVector& theta, std::uint64_t t) = 0;
};

class SgdOptimizer final : public Optimizer {
 public:
  explicit SgdOptimizer(double eta) : eta_(eta) {}
  std::string name() const override { return "sgd"; }
  StepEvent step(Objective& objective, ParameterVector& theta, std::uint64_t t) override;

 private:
  double eta_;
};

class MomentumOptimizer final : public Optimizer {
 public:
  MomentumOptimizer(double eta, double beta = 0.9) : eta_(eta), beta_(beta) {}
  std::string name() const override { return "momentum"; }
  StepEvent step(Objective& objective, ParameterVector& theta, std::uint64_t t) override;

 private:
  double eta_, beta_;
  std::vector<double> velocity_;
};

class RmsPropOptimizer final : public Optimizer {
 public:
  RmsPropOptimizer(double eta, double decay = 0.9, double eps = 1e-8)
      : eta_(eta), decay_(decay), eps_(eps) {}
  std::string name() const override { return "rmsprop"; }
  StepEvent step(Objective& objective, ParameterVector& theta, std::uint64_t t) override;

 private:
  double eta_, decay_, eps_;
  std::vector<double> mean_sq_;
};

class AdamOptimizer final : public Optimizer {
 public:
  AdamOptimizer(double eta, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : eta_(eta), beta1_(beta1), beta2_(beta2), eps_(eps) {}
  std::string name() const override { return "adam"; }
  StepEvent step(Objective& objective, ParameterVector& theta, std::uint64_t t) override;

 private:
  double eta_, beta1_, beta2_, eps_;
  std::vector<double> m_, v_;
  std::uint64_t count_ = 0;
};

class NlrOptimizer final : public Optimizer {
 public:
  explicit NlrOptimizer(NlrConfig cfg);
  std::string name() const override { return "nlr"; }
  StepEvent step(Objective& objective, ParameterVector& theta, std::uint64_t t) override;
  const NlrConfig& config() const noexcept { return cfg_; }

 private:
  NlrConfig cfg_;
};

class ArmijoOptimizer final : public Optimizer {
 public:
  explicit ArmijoOptimizer(ArmijoConfig cfg);
  std::string name() const override { return "backtrack"; }
  StepEvent step(Objective& objective, ParameterVector& theta, std::uint64_t t) override;
  double last_step_size() const noexcept { return last_step_; }

 private:
  ArmijoConfig cfg_;
  double last_step_ = 0.0;
};

/// Tentative descent; on violation a random kick whose per-component sigma is
/// eta' * sqrt(mean ||g||^2 / dim), the mean taken over the first
/// `warmup_steps` gradients (running estimate while warming up). This makes
/// E||xi||^2 = eta'^2 E||g||^2.
class PerturbationOptimizer final : public Optimizer {
 public:
  PerturbationOptimizer(double eta, double eta_prime, NoiseKind kind, std::uint64_t seed,
                        std::size_t warmup_steps = 100);
  std::string name() const override;
  StepEvent step(Objective& objective, ParameterVector& theta, std::uint64_t t) override;
  double sigma() const noexcept;

 private:
  double eta_, eta_prime_;
  NoiseKind kind_;
  Rng rng_;
  std::size_t warmup_;
  std::size_t seen_ = 0;
  double sum_sq_norm_ = 0.0;
  std::size_t dim_ = 0;
};

struct PlateauDetector {
  std::size_t window = 20;
  double threshold = 1e-3;
};

/// SGD that resamples every parameter from U[-pi, pi] when the mean gradient
/// norm over the last `window` steps drops below `threshold`.
class RandomReinitOptimizer final : public Optimizer {
 public:
  RandomReinitOptimizer(double eta, PlateauDetector detector, std::uint64_t seed);
  std::string name() const override { return "reinit"; }
  StepEvent step(Objective& objective, ParameterVector& theta, std::uint64_t t) override;
  std::size_t reinit_count() const noexcept { return reinits_; }

 private:
  double eta_;
  PlateauDetector detector_;
  Rng rng_;
  std::deque<double> history_;
  std::size_t reinits_ = 0;
};

/// One random-reinit decision on an explicit gradient-norm history (the
/// history is updated in place). Exposed for tests.
StepResult random_reinit_policy(Objective& objective, std::span<const double> theta, double eta,
                                const PlateauDetector& detector, std::deque<double>& history,
                                Rng& rng);

}  // namespace plateau
