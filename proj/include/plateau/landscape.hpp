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

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "plateau/optim/objective.hpp"
#include "plateau/optim/train.hpp"
#include "plateau/rng.hpp"

namespace plateau {

using Point2 = std::array<double, 2>;

/// Flat landscape with one shallow Gaussian well:
///   C(x, y) = -A exp(-((x-cx)^2 + (y-cy)^2) / (2 s^2)) + b (x + y)
struct PlateauSurface {
  Point2 cave_center{-2.0, -2.0};
  double cave_depth = 1.0;    // A
  double cave_width = 0.4;    // s
  double background_slope = 1e-4;  // b
  double plateau_eps = 1e-3;  // gradient bound of the barren region
};

double plateau_cost(const Point2& p, const PlateauSurface& surface);
Point2 plateau_gradient(const Point2& p, const PlateauSurface& surface);
bool in_plateau(const Point2& p, const PlateauSurface& surface);

struct GridPoint {
  double x, y, cost, grad_norm;
};

/// n x n samples of cost and gradient norm on [lo, hi]^2.
std::vector<GridPoint> plateau_grid(const PlateauSurface& surface, double lo, double hi,
                                    std::size_t n);

/// Largest gradient norm over an n x n grid of [lo_x, hi_x] x [lo_y, hi_y].
double grid_sup_gradient(const PlateauSurface& surface, const Point2& lo, const Point2& hi,
                         std::size_t n);

class PlateauObjective final : public Objective {
 public:
  explicit PlateauObjective(PlateauSurface surface) : surface_(surface) {}
  std::size_t dimension() const override { return 2; }
  double evaluate(std::span<const double> theta) override;
  GradientVector gradient(std::span<const double> theta) override;
  const PlateauSurface& surface() const noexcept { return surface_; }

 private:
  PlateauSurface surface_;
};

/// C = curvature/2 * ||theta||^2 in `dim` dimensions.
class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(std::size_t dim, double curvature);
  std::size_t dimension() const override { return dim_; }
  double evaluate(std::span<const double> theta) override;
  GradientVector gradient(std::span<const double> theta) override;
  double curvature() const noexcept { return curvature_; }

 private:
  std::size_t dim_;
  double curvature_;
};

/// Exact costs, gradients corrupted by isotropic Gaussian noise with
/// covariance (sigma^2 / dim) I. The noise stream for step t is seeded from
/// (seed, t), so a trajectory is reproducible from the seed alone.
class NoisyObjective final : public Objective {
 public:
  NoisyObjective(std::unique_ptr<Objective> base, double sigma, std::uint64_t seed);
  std::size_t dimension() const override { return base_->dimension(); }
  double evaluate(std::span<const double> theta) override { return base_->evaluate(theta); }
  GradientVector gradient(std::span<const double> theta) override;
  void begin_step(std::uint64_t step) override;
  Objective& base() noexcept { return *base_; }
  double sigma() const noexcept { return sigma_; }

 private:
  std::unique_ptr<Objective> base_;
  double sigma_;
  std::uint64_t seed_;
  Rng rng_;
};

// ---- diffusion ---------------------------------------------------------

struct DiffusionSetup {
  PlateauSurface surface;
  double noise_sigma = 1.0;
  Point2 start_center{2.0, 2.0};
  double start_halfwidth = 0.5;  // starts drawn uniformly from the square
};

struct DiffusionReport {
  std::string optimizer;
  double D_hat = 0.0;
  double p_hat = 0.0;
  std::size_t trajectories = 0;
  std::size_t steps_per_trajectory = 0;
  double ci_low = 0.0;   // 95% bootstrap over trajectories
  double ci_high = 0.0;
  double confidence_halfwidth = 0.0;
  // Mean step size |dtheta| / |g| taken on violation steps.
  double mean_step_under_violation = 0.0;
  double mean_sq_grad = 0.0;  // E||g||^2 over all steps
};

DiffusionReport estimate_diffusion(const OptimizerSpec& optimizer, const DiffusionSetup& setup,
                                   std::size_t n_trajectories, std::size_t steps,
                                   std::uint64_t seed, std::size_t bootstrap_resamples = 1000);

// ---- exit time -----------------------------------------------------------

struct ExitTimeReport {
  double radius = 0.0;
  std::size_t trials = 0;
  std::vector<std::uint64_t> exit_steps;  // uncensored trials only
  double mean = 0.0;
  double median = 0.0;
  double censored_fraction = 0.0;
  bool inconclusive = false;  // every trial censored
};

/// First step t (1-based) with ||theta_t - start|| >= radius.
ExitTimeReport measure_exit_time(const OptimizerSpec& optimizer, const DiffusionSetup& setup,
                                 const Point2& start, double radius, std::size_t n_trials,
                                 std::uint64_t max_steps, std::uint64_t seed);

/// First-passage steps of an isotropic Gaussian random walk in `dim`
/// dimensions whose per-step E||dx||^2 is 2 * dim * D. Independent oracle
/// for measure_exit_time.
ExitTimeReport brownian_exit_time(double D, std::size_t dim, double radius, std::size_t n_trials,
                                  std::uint64_t max_steps, std::uint64_t seed);

// ---- violation rate ---------------------------------------------------------

struct ViolationPoint {
  double gradient_scale = 0.0;  // ||grad C|| / sigma
  double p_hat = 0.0;
  double ci_halfwidth = 0.0;    // 1.96 * binomial standard error
  std::size_t draws = 0;
};

struct ViolationSetup {
  std::size_t dim = 10;
  double curvature = 1.0;
  double noise_sigma = 0.1;
};

/// For each scale s, places theta where ||grad C|| = s * sigma on the
/// quadratic bowl and measures the fraction of single optimizer steps whose
/// tentative descent raised the cost, over `draws` independent noise draws.
std::vector<ViolationPoint> violation_rate_vs_gradient(const OptimizerSpec& optimizer,
                                                       const ViolationSetup& setup,
                                                       const std::vector<double>& scales,
                                                       std::size_t draws, std::uint64_t seed);

// ---- post-escape -----------------------------------------------------------

struct PostEscapeSetup {
  std::size_t dim = 10;
  double curvature = 1.0;
  double noise_sigma = 0.1;
  double start_radius = 5.0;
};

struct PostEscapeReport {
  double final_grad_sq = 0.0;  // E||grad C(theta_T)||^2 across seeds
  double floor = 0.0;          // E||grad C||^2 over the last 20% of steps, all seeds
  double eta_sigma_sq = 0.0;   // eta * sigma^2 reference level
  std::size_t seeds = 0;
};

PostEscapeReport post_escape_convergence(const OptimizerSpec& optimizer,
                                         const PostEscapeSetup& setup, std::uint64_t steps,
                                         std::size_t n_seeds, std::uint64_t seed);

}  // namespace plateau
