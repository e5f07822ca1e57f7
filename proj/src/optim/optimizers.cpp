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

#include "plateau/optim/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "plateau/error.hpp"

namespace plateau {
namespace {

GradientVector checked_gradient(Objective& objective, std::span<const double> theta) {
  GradientVector g = objective.gradient(theta);
  if (g.size() != theta.size()) {
    raise(ErrorKind::Shape, "gradient has " + std::to_string(g.size()) + " entries, expected " +
                                std::to_string(theta.size()));
  }
  for (double v : g) {
    if (!std::isfinite(v)) raise(ErrorKind::Numeric, "non-finite gradient");
  }
  return g;
}

double norm_of(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

ParameterVector axpy(std::span<const double> theta, double a, std::span<const double> g) {
  ParameterVector out(theta.begin(), theta.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * g[i];
  return out;
}

double dist_sq(std::span<const double> a, std::span<const double> b) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  return sq;
}

void check_finite_state(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) raise(ErrorKind::Numeric, std::string("non-finite ") + what);
  }
}

// Shared tail for the plain first-order rules: evaluate before/after.
StepEvent plain_event(Objective& objective, std::span<const double> before,
                      std::span<const double> after, double loss_before, double grad_norm) {
  StepEvent ev;
  ev.kind = StepKind::Descent;
  ev.loss_before = loss_before;
  ev.loss_after = objective.evaluate(after);
  ev.loss_tentative = ev.loss_after;
  ev.violation = ev.loss_after > ev.loss_before;
  ev.grad_norm = grad_norm;
  ev.displacement_sq = dist_sq(before, after);
  return ev;
}

StepResult perturbation_with_gradient(Objective& objective, std::span<const double> theta,
                                      std::span<const double> g, double eta,
                                      const PerturbationNoise& noise, Rng& rng) {
  StepEvent ev;
  ev.grad_norm = norm_of(g);
  ev.loss_before = objective.evaluate(theta);
  ParameterVector tentative = axpy(theta, -eta, g);
  ev.loss_tentative = objective.evaluate(tentative);
  ev.violation = ev.loss_tentative > ev.loss_before;
  ParameterVector next;
  if (ev.violation) {
    std::vector<double> xi(theta.size());
    draw_perturbation(noise, rng, xi);
    next.assign(theta.begin(), theta.end());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += xi[i];
    ev.kind = StepKind::Perturbation;
    ev.loss_after = objective.evaluate(next);
  } else {
    next = std::move(tentative);
    ev.kind = StepKind::Descent;
    ev.loss_after = ev.loss_tentative;
  }
  ev.displacement_sq = dist_sq(theta, next);
  return {std::move(next), ev};
}

}  // namespace

std::string_view to_string(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::Descent: return "descent";
    case StepKind::Reversal: return "reversal";
    case StepKind::Backtrack: return "backtrack";
    case StepKind::Perturbation: return "perturbation";
    case StepKind::Reinit: return "reinit";
  }
  return "unknown";
}

void NlrConfig::validate() const {
  if (!(eta > 0.0)) raise(ErrorKind::Argument, "eta must be > 0");
  if (!(eta_prime > 0.0)) raise(ErrorKind::Argument, "eta_prime must be > 0");
  if (!(noise_rate_nu >= 0.0)) raise(ErrorKind::Argument, "noise rate must be >= 0");
  if (circuit_depth_L < 1) raise(ErrorKind::Argument, "circuit depth must be >= 1");
  if (!(schedule_t0 > 0.0)) raise(ErrorKind::Argument, "schedule t0 must be > 0");
}

double guideline_eta_prime(double eta, double nu, int depth_L, double sigma_H_sq) {
  if (!(eta > 0.0)) raise(ErrorKind::Argument, "eta must be > 0");
  if (!(nu >= 0.0)) raise(ErrorKind::Argument, "noise rate must be >= 0");
  if (depth_L < 1) raise(ErrorKind::Argument, "circuit depth must be >= 1");
  if (!(sigma_H_sq > 0.0)) raise(ErrorKind::Argument, "Hamiltonian variance must be > 0");
  const double depth = static_cast<double>(depth_L);
  return eta * (1.0 + std::log1p(nu * depth)) * std::sqrt(sigma_H_sq / depth);
}

GuidelineReport guideline_report(double eta, double nu, int depth_L, double sigma_H_sq) {
  GuidelineReport r;
  r.eta_prime = guideline_eta_prime(eta, nu, depth_L, sigma_H_sq);
  r.kappa = r.eta_prime / eta;
  r.in_recommended_band = r.kappa >= 1.5 && r.kappa <= 3.0;
  return r;
}

double effective_eta_prime(double eta_prime, double nu, int depth_L) {
  if (!(eta_prime > 0.0)) raise(ErrorKind::Argument, "eta_prime must be > 0");
  if (!(nu >= 0.0)) raise(ErrorKind::Argument, "noise rate must be >= 0");
  return eta_prime / (1.0 + nu * static_cast<double>(depth_L));
}

double schedule_factor(Schedule schedule, double t0, std::uint64_t step) noexcept {
  if (schedule == Schedule::Constant) return 1.0;
  return t0 / (t0 + static_cast<double>(step));
}

StepResult nlr_step(Objective& objective, std::span<const double> theta, const NlrConfig& cfg,
                    std::uint64_t step) {
  cfg.validate();
  check_finite_state(theta, "parameters");
  const double f = schedule_factor(cfg.schedule, cfg.schedule_t0, step);
  const double eta = cfg.eta * f;
  const double eta_prime =
      effective_eta_prime(cfg.eta_prime, cfg.noise_rate_nu, cfg.circuit_depth_L) * f;

  const GradientVector g = checked_gradient(objective, theta);
  StepEvent ev;
  ev.grad_norm = norm_of(g);
  ev.loss_before = objective.evaluate(theta);
  ParameterVector tentative = axpy(theta, -eta, g);
  ev.loss_tentative = objective.evaluate(tentative);
  // Ties accept: the cost "decreases or remains the same".
  ev.violation = ev.loss_tentative > ev.loss_before;

  ParameterVector next;
  if (ev.violation && cfg.reversal_enabled) {
    next = axpy(theta, eta_prime, g);
    ev.kind = StepKind::Reversal;
    ev.loss_after = objective.evaluate(next);
  } else {
    next = std::move(tentative);
    ev.kind = StepKind::Descent;
    ev.loss_after = ev.loss_tentative;
  }
  ev.displacement_sq = dist_sq(theta, next);
  return {std::move(next), ev};
}

StepResult sgd_step(Objective& objective, std::span<const double> theta, double eta) {
  check_finite_state(theta, "parameters");
  const GradientVector g = checked_gradient(objective, theta);
  const double before = objective.evaluate(theta);
  ParameterVector next = axpy(theta, -eta, g);
  StepEvent ev = plain_event(objective, theta, next, before, norm_of(g));
  return {std::move(next), ev};
}

void ArmijoConfig::validate() const {
  if (!(eta_init > 0.0)) raise(ErrorKind::Argument, "Armijo initial step must be > 0");
  if (!(c > 0.0 && c < 1.0)) raise(ErrorKind::Argument, "Armijo constant must be in (0, 1)");
  if (!(shrink > 0.0 && shrink < 1.0)) raise(ErrorKind::Argument, "shrink must be in (0, 1)");
  if (max_shrinks < 0) raise(ErrorKind::Argument, "max_shrinks must be >= 0");
}

ArmijoResult armijo_backtrack_step(Objective& objective, std::span<const double> theta,
                                   const ArmijoConfig& cfg) {
  cfg.validate();
  check_finite_state(theta, "parameters");
  const GradientVector g = checked_gradient(objective, theta);
  const double gsq = std::inner_product(g.begin(), g.end(), g.begin(), 0.0);

  ArmijoResult res;
  StepEvent& ev = res.event;
  ev.grad_norm = std::sqrt(gsq);
  ev.loss_before = objective.evaluate(theta);

  double trial = cfg.eta_init;
  for (int k = 0; k <= cfg.max_shrinks; ++k, trial *= cfg.shrink) {
    ParameterVector candidate = axpy(theta, -trial, g);
    const double loss = objective.evaluate(candidate);
    if (k == 0) {
      ev.loss_tentative = loss;
      ev.violation = loss > ev.loss_before;
    }
    if (loss <= ev.loss_before - cfg.c * trial * gsq) {
      res.theta = std::move(candidate);
      res.step_size = trial;
      ev.kind = k == 0 ? StepKind::Descent : StepKind::Backtrack;
      ev.loss_after = loss;
      ev.displacement_sq = dist_sq(theta, res.theta);
      return res;
    }
  }
  res.theta.assign(theta.begin(), theta.end());
  res.step_size = 0.0;
  ev.kind = StepKind::Backtrack;
  ev.loss_after = ev.loss_before;
  ev.displacement_sq = 0.0;
  return res;
}

void draw_perturbation(const PerturbationNoise& noise, Rng& rng, std::span<double> out) {
  if (!(noise.sigma > 0.0)) raise(ErrorKind::Argument, "perturbation sigma must be > 0");
  if (noise.kind == NoiseKind::Gaussian) {
    std::normal_distribution<double> dist(0.0, noise.sigma);
    for (double& x : out) x = dist(rng);
  } else {
    const double half = noise.sigma * std::sqrt(3.0);
    std::uniform_real_distribution<double> dist(-half, half);
    for (double& x : out) x = dist(rng);
  }
}

StepResult perturbation_step(Objective& objective, std::span<const double> theta, double eta,
                             const PerturbationNoise& noise, Rng& rng) {
  if (!(noise.sigma > 0.0)) raise(ErrorKind::Argument, "perturbation sigma must be > 0");
  check_finite_state(theta, "parameters");
  const GradientVector g = checked_gradient(objective, theta);
  return perturbation_with_gradient(objective, theta, g, eta, noise, rng);
}

StepResult random_reinit_policy(Objective& objective, std::span<const double> theta, double eta,
                                const PlateauDetector& detector, std::deque<double>& history,
                                Rng& rng) {
  if (detector.window < 1) raise(ErrorKind::Argument, "detector window must be >= 1");
  if (!(detector.threshold > 0.0)) raise(ErrorKind::Argument, "detector threshold must be > 0");
  check_finite_state(theta, "parameters");
  const GradientVector g = checked_gradient(objective, theta);
  const double before = objective.evaluate(theta);
  const double gn = norm_of(g);

  history.push_back(gn);
  while (history.size() > detector.window) history.pop_front();
  const bool stalled =
      history.size() == detector.window &&
      std::accumulate(history.begin(), history.end(), 0.0) / static_cast<double>(detector.window) <
          detector.threshold;

  if (!stalled) {
    ParameterVector next = axpy(theta, -eta, g);
    StepEvent ev = plain_event(objective, theta, next, before, gn);
    return {std::move(next), ev};
  }
  std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
  ParameterVector next(theta.size());
  for (double& x : next) x = dist(rng);
  history.clear();
  StepEvent ev = plain_event(objective, theta, next, before, gn);
  ev.kind = StepKind::Reinit;
  return {std::move(next), ev};
}

// ---- stateful wrappers -----------------------------------------------------

StepEvent SgdOptimizer::step(Objective& objective, ParameterVector& theta, std::uint64_t) {
  auto [next, ev] = sgd_step(objective, theta, eta_);
  theta = std::move(next);
  return ev;
}

StepEvent MomentumOptimizer::step(Objective& objective, ParameterVector& theta, std::uint64_t) {
  const GradientVector g = checked_gradient(objective, theta);
  if (velocity_.size() != theta.size()) velocity_.assign(theta.size(), 0.0);
  const double before = objective.evaluate(theta);
  ParameterVector next = theta;
  for (std::size_t i = 0; i < next.size(); ++i) {
    velocity_[i] = beta_ * velocity_[i] + g[i];
    next[i] -= eta_ * velocity_[i];
  }
  check_finite_state(next, "momentum update");
  StepEvent ev = plain_event(objective, theta, next, before, norm_of(g));
  theta = std::move(next);
  return ev;
}

StepEvent RmsPropOptimizer::step(Objective& objective, ParameterVector& theta, std::uint64_t) {
  const GradientVector g = checked_gradient(objective, theta);
  if (mean_sq_.size() != theta.size()) mean_sq_.assign(theta.size(), 0.0);
  const double before = objective.evaluate(theta);
  ParameterVector next = theta;
  for (std::size_t i = 0; i < next.size(); ++i) {
    mean_sq_[i] = decay_ * mean_sq_[i] + (1.0 - decay_) * g[i] * g[i];
    next[i] -= eta_ * g[i] / (std::sqrt(mean_sq_[i]) + eps_);
  }
  check_finite_state(next, "RMSProp update");
  StepEvent ev = plain_event(objective, theta, next, before, norm_of(g));
  theta = std::move(next);
  return ev;
}

StepEvent AdamOptimizer::step(Objective& objective, ParameterVector& theta, std::uint64_t) {
  const GradientVector g = checked_gradient(objective, theta);
  if (m_.size() != theta.size()) {
    m_.assign(theta.size(), 0.0);
    v_.assign(theta.size(), 0.0);
    count_ = 0;
  }
  ++count_;
  const double before = objective.evaluate(theta);
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(count_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(count_));
  ParameterVector next = theta;
  for (std::size_t i = 0; i < next.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g[i] * g[i];
    const double m_hat = m_[i] / c1;
    const double v_hat = v_[i] / c2;
    next[i] -= eta_ * m_hat / (std::sqrt(v_hat) + eps_);
  }
  check_finite_state(next, "Adam update");
  StepEvent ev = plain_event(objective, theta, next, before, norm_of(g));
  theta = std::move(next);
  return ev;
}

NlrOptimizer::NlrOptimizer(NlrConfig cfg) : cfg_(cfg) { cfg_.validate(); }

StepEvent NlrOptimizer::step(Objective& objective, ParameterVector& theta, std::uint64_t t) {
  auto [next, ev] = nlr_step(objective, theta, cfg_, t);
  theta = std::move(next);
  return ev;
}

ArmijoOptimizer::ArmijoOptimizer(ArmijoConfig cfg) : cfg_(cfg) { cfg_.validate(); }

StepEvent ArmijoOptimizer::step(Objective& objective, ParameterVector& theta, std::uint64_t) {
  ArmijoResult r = armijo_backtrack_step(objective, theta, cfg_);
  theta = std::move(r.theta);
  last_step_ = r.step_size;
  return r.event;
}

PerturbationOptimizer::PerturbationOptimizer(double eta, double eta_prime, NoiseKind kind,
                                             std::uint64_t seed, std::size_t warmup_steps)
    : eta_(eta), eta_prime_(eta_prime), kind_(kind), rng_(seed), warmup_(warmup_steps) {
  if (!(eta > 0.0) || !(eta_prime > 0.0)) {
    raise(ErrorKind::Argument, "perturbation rates must be > 0");
  }
  if (warmup_steps < 1) raise(ErrorKind::Argument, "warmup must be >= 1 step");
}

std::string PerturbationOptimizer::name() const {
  return kind_ == NoiseKind::Gaussian ? "perturb_gauss" : "perturb_uniform";
}

double PerturbationOptimizer::sigma() const noexcept {
  if (seen_ == 0 || dim_ == 0) return 0.0;
  return eta_prime_ * std::sqrt(sum_sq_norm_ / static_cast<double>(seen_) /
                                static_cast<double>(dim_));
}

StepEvent PerturbationOptimizer::step(Objective& objective, ParameterVector& theta,
                                      std::uint64_t) {
  check_finite_state(theta, "parameters");
  const GradientVector g = checked_gradient(objective, theta);
  dim_ = theta.size();
  if (seen_ < warmup_) {
    const double n = norm_of(g);
    sum_sq_norm_ += n * n;
    ++seen_;
  }
  // A zero gradient everywhere so far leaves nothing to match; fall back to
  // the smallest positive kick so the draw stays well defined.
  const double s = std::max(sigma(), std::numeric_limits<double>::min());
  auto [next, ev] = perturbation_with_gradient(objective, theta, g, eta_, {kind_, s}, rng_);
  theta = std::move(next);
  return ev;
}

RandomReinitOptimizer::RandomReinitOptimizer(double eta, PlateauDetector detector,
                                             std::uint64_t seed)
    : eta_(eta), detector_(detector), rng_(seed) {
  if (detector.window < 1) raise(ErrorKind::Argument, "detector window must be >= 1");
  if (!(detector.threshold > 0.0)) raise(ErrorKind::Argument, "detector threshold must be > 0");
}

StepEvent RandomReinitOptimizer::step(Objective& objective, ParameterVector& theta,
                                      std::uint64_t) {
  auto [next, ev] = random_reinit_policy(objective, theta, eta_, detector_, history_, rng_);
  if (ev.kind == StepKind::Reinit) ++reinits_;
  theta = std::move(next);
  return ev;
}

}  // namespace plateau
