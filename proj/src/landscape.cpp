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

#include "plateau/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "plateau/error.hpp"

namespace plateau {
namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double median_of(std::vector<std::uint64_t> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return static_cast<double>(v[m]);
  return 0.5 * static_cast<double>(v[m - 1] + v[m]);
}

std::unique_ptr<Objective> noisy_plateau(const DiffusionSetup& setup, std::uint64_t seed) {
  return std::make_unique<NoisyObjective>(std::make_unique<PlateauObjective>(setup.surface),
                                          setup.noise_sigma, seed);
}

void check_surface(const PlateauSurface& s) {
  if (!(s.cave_depth > 0.0) || !(s.cave_width > 0.0) || !(s.plateau_eps > 0.0) ||
      !(s.background_slope >= 0.0)) {
    raise(ErrorKind::Argument, "invalid plateau surface parameters");
  }
}

}  // namespace

double plateau_cost(const Point2& p, const PlateauSurface& s) {
  const double dx = p[0] - s.cave_center[0];
  const double dy = p[1] - s.cave_center[1];
  const double w2 = s.cave_width * s.cave_width;
  return -s.cave_depth * std::exp(-(dx * dx + dy * dy) / (2.0 * w2)) +
         s.background_slope * (p[0] + p[1]);
}

Point2 plateau_gradient(const Point2& p, const PlateauSurface& s) {
  const double dx = p[0] - s.cave_center[0];
  const double dy = p[1] - s.cave_center[1];
  const double w2 = s.cave_width * s.cave_width;
  const double well = s.cave_depth * std::exp(-(dx * dx + dy * dy) / (2.0 * w2)) / w2;
  return {well * dx + s.background_slope, well * dy + s.background_slope};
}

bool in_plateau(const Point2& p, const PlateauSurface& s) {
  const Point2 g = plateau_gradient(p, s);
  return std::hypot(g[0], g[1]) <= s.plateau_eps;
}

std::vector<GridPoint> plateau_grid(const PlateauSurface& s, double lo, double hi,
                                    std::size_t n) {
  if (n < 2 || !(hi > lo)) raise(ErrorKind::Argument, "grid needs n >= 2 and hi > lo");
  std::vector<GridPoint> out;
  out.reserve(n * n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Point2 p{lo + h * static_cast<double>(i), lo + h * static_cast<double>(j)};
      const Point2 g = plateau_gradient(p, s);
      out.push_back({p[0], p[1], plateau_cost(p, s), std::hypot(g[0], g[1])});
    }
  }
  return out;
}

double grid_sup_gradient(const PlateauSurface& s, const Point2& lo, const Point2& hi,
                         std::size_t n) {
  if (n < 2) raise(ErrorKind::Argument, "grid needs n >= 2");
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double fx = static_cast<double>(i) / static_cast<double>(n - 1);
      const double fy = static_cast<double>(j) / static_cast<double>(n - 1);
      const Point2 p{lo[0] + fx * (hi[0] - lo[0]), lo[1] + fy * (hi[1] - lo[1])};
      const Point2 g = plateau_gradient(p, s);
      sup = std::max(sup, std::hypot(g[0], g[1]));
    }
  }
  return sup;
}

double PlateauObjective::evaluate(std::span<const double> theta) {
  return plateau_cost({theta[0], theta[1]}, surface_);
}

GradientVector PlateauObjective::gradient(std::span<const double> theta) {
  const Point2 g = plateau_gradient({theta[0], theta[1]}, surface_);
  return {g[0], g[1]};
}

QuadraticObjective::QuadraticObjective(std::size_t dim, double curvature)
    : dim_(dim), curvature_(curvature) {
  if (dim < 1) raise(ErrorKind::Argument, "quadratic dimension must be >= 1");
  if (!(curvature > 0.0)) raise(ErrorKind::Argument, "curvature must be > 0");
}

double QuadraticObjective::evaluate(std::span<const double> theta) {
  double sq = 0.0;
  for (double t : theta) sq += t * t;
  return 0.5 * curvature_ * sq;
}

GradientVector QuadraticObjective::gradient(std::span<const double> theta) {
  GradientVector g(theta.begin(), theta.end());
  for (double& v : g) v *= curvature_;
  return g;
}

NoisyObjective::NoisyObjective(std::unique_ptr<Objective> base, double sigma, std::uint64_t seed)
    : base_(std::move(base)), sigma_(sigma), seed_(seed), rng_(seed) {
  if (!base_) raise(ErrorKind::Argument, "noisy objective needs a base objective");
  if (!(sigma >= 0.0)) raise(ErrorKind::Argument, "noise sigma must be >= 0");
  begin_step(0);
}

void NoisyObjective::begin_step(std::uint64_t step) {
  base_->begin_step(step);
  rng_.seed(derive_seed(seed_, {stream::kGradNoise, step}));
}

GradientVector NoisyObjective::gradient(std::span<const double> theta) {
  GradientVector g = base_->gradient(theta);
  if (sigma_ > 0.0) {
    std::normal_distribution<double> xi(0.0, sigma_ / std::sqrt(static_cast<double>(g.size())));
    for (double& v : g) v += xi(rng_);
  }
  return g;
}

DiffusionReport estimate_diffusion(const OptimizerSpec& optimizer, const DiffusionSetup& setup,
                                   std::size_t n_trajectories, std::size_t steps,
                                   std::uint64_t seed, std::size_t bootstrap_resamples) {
  check_surface(setup.surface);
  if (n_trajectories * steps < 100) {
    raise(ErrorKind::Statistics, "need at least 100 recorded steps for a diffusion estimate");
  }
  if (bootstrap_resamples < 1) raise(ErrorKind::Argument, "bootstrap needs >= 1 resample");

  std::vector<double> traj_disp(n_trajectories, 0.0);
  std::vector<std::size_t> traj_viol(n_trajectories, 0);
  CompensatedSum violation_step_sum;
  CompensatedSum grad_sq_sum;
  std::size_t violation_steps = 0;

  for (std::size_t k = 0; k < n_trajectories; ++k) {
    const std::uint64_t tseed = derive_seed(seed, {stream::kTrajectory, k});
    Rng start_rng(derive_seed(tseed, {stream::kInit}));
    std::uniform_real_distribution<double> u(-setup.start_halfwidth, setup.start_halfwidth);
    Point2 start{};
    int attempts = 0;
    do {
      start = {setup.start_center[0] + u(start_rng), setup.start_center[1] + u(start_rng)};
      if (++attempts > 1000) raise(ErrorKind::Argument, "start region is not on the plateau");
    } while (!in_plateau(start, setup.surface));

    auto objective = noisy_plateau(setup, tseed);
    OptimizerSpec spec = optimizer;
    spec.seed = derive_seed(tseed, {stream::kOptimizer});
    auto opt = make_optimizer(spec);
    const TrainTrace trace =
        train(*objective, *opt, {start[0], start[1]}, TrainOptions{steps, 0});

    CompensatedSum disp;
    for (const StepEvent& ev : trace.events) {
      disp.add(ev.displacement_sq);
      grad_sq_sum.add(ev.grad_norm * ev.grad_norm);
      if (ev.violation) {
        ++traj_viol[k];
        ++violation_steps;
        if (ev.grad_norm > 0.0) violation_step_sum.add(std::sqrt(ev.displacement_sq) / ev.grad_norm);
      }
    }
    traj_disp[k] = disp.value();
  }

  const double dim = 2.0;
  const double per_traj = static_cast<double>(steps);
  auto diffusion_of = [&](const std::vector<std::size_t>& pick) {
    CompensatedSum s;
    for (std::size_t i : pick) s.add(traj_disp[i]);
    return s.value() / (static_cast<double>(pick.size()) * per_traj * 2.0 * dim);
  };

  std::vector<std::size_t> all(n_trajectories);
  for (std::size_t i = 0; i < n_trajectories; ++i) all[i] = i;

  DiffusionReport r;
  r.optimizer = optimizer.name;
  r.trajectories = n_trajectories;
  r.steps_per_trajectory = steps;
  r.D_hat = diffusion_of(all);
  std::size_t total_viol = 0;
  for (std::size_t v : traj_viol) total_viol += v;
  const double total_steps = static_cast<double>(n_trajectories) * per_traj;
  r.p_hat = static_cast<double>(total_viol) / total_steps;
  r.mean_step_under_violation =
      violation_steps ? violation_step_sum.value() / static_cast<double>(violation_steps) : 0.0;
  r.mean_sq_grad = grad_sq_sum.value() / total_steps;

  Rng boot(derive_seed(seed, {stream::kBootstrap}));
  std::uniform_int_distribution<std::size_t> pick(0, n_trajectories - 1);
  std::vector<double> stats(bootstrap_resamples);
  std::vector<std::size_t> sample(n_trajectories);
  for (double& st : stats) {
    for (std::size_t& i : sample) i = pick(boot);
    st = diffusion_of(sample);
  }
  std::sort(stats.begin(), stats.end());
  const auto at = [&](double q) {
    const double pos = q * static_cast<double>(stats.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, stats.size() - 1);
    return stats[lo] + (pos - static_cast<double>(lo)) * (stats[hi] - stats[lo]);
  };
  r.ci_low = at(0.025);
  r.ci_high = at(0.975);
  r.confidence_halfwidth = 0.5 * (r.ci_high - r.ci_low);
  return r;
}

ExitTimeReport measure_exit_time(const OptimizerSpec& optimizer, const DiffusionSetup& setup,
                                 const Point2& start, double radius, std::size_t n_trials,
                                 std::uint64_t max_steps, std::uint64_t seed) {
  check_surface(setup.surface);
  if (!(radius > 0.0)) raise(ErrorKind::Argument, "exit radius must be > 0");
  if (n_trials < 1 || max_steps < 1) raise(ErrorKind::Argument, "need trials and steps >= 1");
  if (!in_plateau(start, setup.surface)) raise(ErrorKind::Argument, "start is not on the plateau");

  ExitTimeReport r;
  r.radius = radius;
  r.trials = n_trials;
  std::size_t censored = 0;
  for (std::size_t k = 0; k < n_trials; ++k) {
    const std::uint64_t tseed = derive_seed(seed, {stream::kTrajectory, k});
    auto objective = noisy_plateau(setup, tseed);
    OptimizerSpec spec = optimizer;
    spec.seed = derive_seed(tseed, {stream::kOptimizer});
    auto opt = make_optimizer(spec);
    ParameterVector theta{start[0], start[1]};
    bool exited = false;
    for (std::uint64_t t = 0; t < max_steps; ++t) {
      objective->begin_step(t);
      opt->step(*objective, theta, t);
      if (std::hypot(theta[0] - start[0], theta[1] - start[1]) >= radius) {
        r.exit_steps.push_back(t + 1);
        exited = true;
        break;
      }
    }
    if (!exited) ++censored;
  }
  r.censored_fraction = static_cast<double>(censored) / static_cast<double>(n_trials);
  r.inconclusive = r.exit_steps.empty();
  if (!r.inconclusive) {
    CompensatedSum s;
    for (auto t : r.exit_steps) s.add(static_cast<double>(t));
    r.mean = s.value() / static_cast<double>(r.exit_steps.size());
    r.median = median_of(r.exit_steps);
  }
  return r;
}

ExitTimeReport brownian_exit_time(double D, std::size_t dim, double radius, std::size_t n_trials,
                                  std::uint64_t max_steps, std::uint64_t seed) {
  if (!(D > 0.0) || dim < 1 || !(radius > 0.0)) {
    raise(ErrorKind::Argument, "Brownian oracle needs D > 0, dim >= 1, radius > 0");
  }
  ExitTimeReport r;
  r.radius = radius;
  r.trials = n_trials;
  std::size_t censored = 0;
  std::normal_distribution<double> step(0.0, std::sqrt(2.0 * D));
  for (std::size_t k = 0; k < n_trials; ++k) {
    Rng rng(derive_seed(seed, {stream::kTrajectory, k}));
    std::vector<double> x(dim, 0.0);
    bool exited = false;
    for (std::uint64_t t = 0; t < max_steps; ++t) {
      double sq = 0.0;
      for (double& xi : x) {
        xi += step(rng);
        sq += xi * xi;
      }
      if (std::sqrt(sq) >= radius) {
        r.exit_steps.push_back(t + 1);
        exited = true;
        break;
      }
    }
    if (!exited) ++censored;
  }
  r.censored_fraction = static_cast<double>(censored) / static_cast<double>(n_trials);
  r.inconclusive = r.exit_steps.empty();
  if (!r.inconclusive) {
    CompensatedSum s;
    for (auto t : r.exit_steps) s.add(static_cast<double>(t));
    r.mean = s.value() / static_cast<double>(r.exit_steps.size());
    r.median = median_of(r.exit_steps);
  }
  return r;
}

std::vector<ViolationPoint> violation_rate_vs_gradient(const OptimizerSpec& optimizer,
                                                       const ViolationSetup& setup,
                                                       const std::vector<double>& scales,
                                                       std::size_t draws, std::uint64_t seed) {
  if (draws < 1) raise(ErrorKind::Argument, "need at least one draw per scale");
  std::vector<ViolationPoint> out;
  for (std::size_t si = 0; si < scales.size(); ++si) {
    const double scale = scales[si];
    if (!(scale >= 0.0)) raise(ErrorKind::Argument, "gradient scale must be >= 0");
    ParameterVector at(setup.dim, 0.0);
    at[0] = scale * setup.noise_sigma / setup.curvature;
    NoisyObjective objective(std::make_unique<QuadraticObjective>(setup.dim, setup.curvature),
                             setup.noise_sigma, derive_seed(seed, {stream::kTrajectory, si}));
    std::size_t violations = 0;
    for (std::size_t k = 0; k < draws; ++k) {
      objective.begin_step(k);
      OptimizerSpec spec = optimizer;
      spec.seed = derive_seed(seed, {stream::kOptimizer, si, k});
      auto opt = make_optimizer(spec);
      ParameterVector theta = at;
      if (opt->step(objective, theta, 0).violation) ++violations;
    }
    ViolationPoint p;
    p.gradient_scale = scale;
    p.draws = draws;
    p.p_hat = static_cast<double>(violations) / static_cast<double>(draws);
    p.ci_halfwidth = 1.96 * std::sqrt(p.p_hat * (1.0 - p.p_hat) / static_cast<double>(draws));
    out.push_back(p);
  }
  return out;
}

PostEscapeReport post_escape_convergence(const OptimizerSpec& optimizer,
                                         const PostEscapeSetup& setup, std::uint64_t steps,
                                         std::size_t n_seeds, std::uint64_t seed) {
  if (steps < 5 || n_seeds < 1) raise(ErrorKind::Argument, "need steps >= 5 and seeds >= 1");
  const std::uint64_t tail_from = steps - steps / 5;
  CompensatedSum final_sum, floor_sum;
  std::size_t floor_count = 0;
  const double lambda_sq = setup.curvature * setup.curvature;
  for (std::size_t k = 0; k < n_seeds; ++k) {
    const std::uint64_t tseed = derive_seed(seed, {stream::kTrajectory, k});
    NoisyObjective objective(std::make_unique<QuadraticObjective>(setup.dim, setup.curvature),
                             setup.noise_sigma, tseed);
    OptimizerSpec spec = optimizer;
    spec.seed = derive_seed(tseed, {stream::kOptimizer});
    auto opt = make_optimizer(spec);

    Rng init(derive_seed(tseed, {stream::kInit}));
    std::normal_distribution<double> nd(0.0, 1.0);
    ParameterVector theta(setup.dim);
    double sq = 0.0;
    for (double& t : theta) {
      t = nd(init);
      sq += t * t;
    }
    for (double& t : theta) t *= setup.start_radius / std::sqrt(sq);

    double grad_sq = 0.0;
    for (std::uint64_t t = 0; t < steps; ++t) {
      objective.begin_step(t);
      opt->step(objective, theta, t);
      grad_sq = 0.0;
      for (double v : theta) grad_sq += lambda_sq * v * v;
      if (t >= tail_from) {
        floor_sum.add(grad_sq);
        ++floor_count;
      }
    }
    final_sum.add(grad_sq);
  }
  PostEscapeReport r;
  r.seeds = n_seeds;
  r.final_grad_sq = final_sum.value() / static_cast<double>(n_seeds);
  r.floor = floor_sum.value() / static_cast<double>(floor_count);
  r.eta_sigma_sq = optimizer.eta * setup.noise_sigma * setup.noise_sigma;
  return r;
}

}  // namespace plateau
