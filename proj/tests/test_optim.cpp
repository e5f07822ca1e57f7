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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "plateau/error.hpp"
#include "plateau/optim/optimizers.hpp"
#include "plateau/optim/train.hpp"

using namespace plateau;

namespace {

// C = sum_i a_i theta_i^2
class Bowl final : public Objective {
 public:
  explicit Bowl(std::vector<double> a) : a_(std::move(a)) {}
  std::size_t dimension() const override { return a_.size(); }
  double evaluate(std::span<const double> t) override {
    double c = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) c += a_[i] * t[i] * t[i];
    return c;
  }
  GradientVector gradient(std::span<const double> t) override {
    GradientVector g(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) g[i] = 2 * a_[i] * t[i];
    return g;
  }

 private:
  std::vector<double> a_;
};

// Every move away from the anchor raises the cost; the gradient lies.
class Adversary final : public Objective {
 public:
  std::size_t dimension() const override { return 1; }
  double evaluate(std::span<const double> t) override { return std::abs(t[0] - 1.0); }
  GradientVector gradient(std::span<const double>) override { return {1.0}; }
};

// Non-convex 2-D surface with a noisy gradient oracle, reseeded per step.
class Wavy final : public Objective {
 public:
  explicit Wavy(std::uint64_t seed) : seed_(seed) {}
  std::size_t dimension() const override { return 2; }
  double evaluate(std::span<const double> t) override {
    return std::sin(3 * t[0]) * std::cos(2 * t[1]) + 0.1 * (t[0] * t[0] + t[1] * t[1]);
  }
  GradientVector gradient(std::span<const double> t) override {
    std::normal_distribution<double> n(0.0, 0.5);
    return {3 * std::cos(3 * t[0]) * std::cos(2 * t[1]) + 0.2 * t[0] + n(rng_),
            -2 * std::sin(3 * t[0]) * std::sin(2 * t[1]) + 0.2 * t[1] + n(rng_)};
  }
  void begin_step(std::uint64_t s) override { rng_.seed(seed_ * 1000003 + s); }

 private:
  std::uint64_t seed_;
  Rng rng_{0};
};

NlrConfig nlr(double eta, double eta_prime) {
  NlrConfig c;
  c.eta = eta;
  c.eta_prime = eta_prime;
  return c;
}

}  // namespace

TEST_CASE("nlr_step examples") {
  Bowl sq({1.0});
  std::vector<double> one{1.0};
  auto [a, ev] = nlr_step(sq, one, nlr(0.1, 0.02));
  CHECK(a[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(ev.kind == StepKind::Descent);
  CHECK(ev.loss_before == 1.0);
  CHECK(ev.loss_after == doctest::Approx(0.64));

  auto [b, ev2] = nlr_step(sq, one, nlr(1.1, 0.05));
  CHECK(b[0] == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(ev2.kind == StepKind::Reversal);
  CHECK(ev2.violation);
  CHECK(ev2.loss_tentative == doctest::Approx(1.44));

  std::vector<double> origin{0.0};
  auto [c, ev3] = nlr_step(sq, origin, nlr(0.3, 0.05));
  CHECK(c[0] == 0.0);
  CHECK(ev3.kind == StepKind::Descent);
  CHECK(ev3.displacement_sq == 0.0);
}

TEST_CASE("nlr acceptance invariants and reversal displacement") {
  Wavy w(3);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  const NlrConfig cfg = nlr(0.3, 0.6);
  std::size_t reversals = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    w.begin_step(s);
    std::vector<double> t{u(rng), u(rng)};
    w.begin_step(s);
    auto [next, ev] = nlr_step(w, t, cfg);
    if (ev.kind == StepKind::Descent) {
      CHECK(ev.loss_after <= ev.loss_before);
    } else {
      ++reversals;
      REQUIRE(ev.kind == StepKind::Reversal);
      CHECK(ev.loss_tentative > ev.loss_before);
      const double d = std::hypot(next[0] - t[0], next[1] - t[1]);
      CHECK(d == doctest::Approx(cfg.eta_prime * ev.grad_norm).epsilon(1e-12));
    }
  }
  CHECK(reversals > 0);
}

TEST_CASE("nlr with reversal disabled equals sgd") {
  Wavy w(4);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2, 2);
  NlrConfig cfg = nlr(0.3, 0.6);
  cfg.reversal_enabled = false;
  for (std::uint64_t s = 0; s < 500; ++s) {
    std::vector<double> t{u(rng), u(rng)};
    w.begin_step(s);
    auto [a, ea] = nlr_step(w, t, cfg);
    w.begin_step(s);
    auto [b, eb] = sgd_step(w, t, cfg.eta);
    CHECK(a == b);
  }
  NlrConfig bad = nlr(0.1, 0.0);
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("guideline and effective eta'") {
  CHECK(guideline_eta_prime(0.01, 0.0, 5, 5.0) == 0.01);
  CHECK(guideline_eta_prime(0.037, 0.0, 3, 3.0) == 0.037);
  // 0.01 * (1 + ln 1.25), ln 1.25 = 0.22314355131420976
  CHECK(std::abs(guideline_eta_prime(0.01, 0.05, 5, 5.0) - 0.012231435513142098) < 1e-12);
  // 0.02 * (1 + ln 2) * sqrt(8 / 2), ln 2 = 0.69314718055994531
  CHECK(std::abs(guideline_eta_prime(0.02, 0.5, 2, 8.0) - 0.067725887222397812) < 1e-12);
  CHECK_THROWS_AS(guideline_eta_prime(0.0, 0.0, 1, 1.0), Error);
  CHECK_THROWS_AS(guideline_eta_prime(0.01, -1.0, 1, 1.0), Error);
  CHECK_THROWS_AS(guideline_eta_prime(0.01, 0.0, 0, 1.0), Error);
  CHECK_THROWS_AS(guideline_eta_prime(0.01, 0.0, 1, 0.0), Error);

  const auto inside = guideline_report(0.01, 0.5, 2, 8.0);
  CHECK(inside.kappa == doctest::Approx(3.3862943611198906));  // (1 + ln 2) * 2
  CHECK_FALSE(inside.in_recommended_band);
  const auto in_band = guideline_report(0.01, 1.0, 1, 1.0);  // kappa = 1 + ln 2
  CHECK(in_band.in_recommended_band);
  CHECK_FALSE(guideline_report(0.01, 0.0, 5, 5.0).in_recommended_band);

  CHECK(effective_eta_prime(0.02, 0.0, 5) == 0.02);
  CHECK(effective_eta_prime(0.02, 0.05, 5) == doctest::Approx(0.016).epsilon(1e-15));
  double prev = 0.02;
  for (double nu : {0.1, 1.0, 10.0, 1e3, 1e6}) {
    const double e = effective_eta_prime(0.02, nu, 5);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev < 1e-8);
  CHECK(schedule_factor(Schedule::Constant, 100, 50) == 1.0);
  CHECK(schedule_factor(Schedule::InverseTime, 100, 100) == 0.5);
}

TEST_CASE("textbook baselines") {
  Bowl sq({1.0});
  std::vector<double> one{1.0};
  CHECK(sgd_step(sq, one, 0.1).first[0] == doctest::Approx(0.8).epsilon(1e-15));

  Bowl bowl({1.0, 3.0, 0.5});
  std::vector<double> t0{1.0, -2.0, 0.7};
  auto a = t0, b = t0;
  MomentumOptimizer mom(0.05);
  SgdOptimizer sgd(0.05);
  mom.step(bowl, a, 0);
  sgd.step(bowl, b, 0);
  CHECK(a == b);

  for (double scale : {1e-6, 1.0, 1e4}) {
    Bowl s({scale, scale});
    std::vector<double> t{1.0, -1.0};
    AdamOptimizer adam(0.01);
    adam.step(s, t, 0);
    // |step| = eta |g| / (|g| + eps): eta up to eps / |g|
    CHECK(1.0 - t[0] == doctest::Approx(0.01).epsilon(0.01));
    CHECK(t[1] + 1.0 == doctest::Approx(0.01).epsilon(0.01));
  }

  // RMSProp first step: v = 0.1 g^2, step = eta g / sqrt(0.1 g^2)
  Bowl s({2.0});
  std::vector<double> t{1.0};
  RmsPropOptimizer rms(0.01);
  rms.step(s, t, 0);
  CHECK(t[0] == doctest::Approx(1.0 - 0.01 / std::sqrt(0.1)).epsilon(1e-8));
}

TEST_CASE("armijo backtracking") {
  Bowl sq({1.0});
  std::vector<double> one{1.0};
  ArmijoConfig cfg;
  cfg.eta_init = 0.1;
  cfg.c = 0.1;
  auto r = armijo_backtrack_step(sq, one, cfg);
  CHECK(r.step_size == 0.1);
  CHECK(r.theta[0] == doctest::Approx(0.8));

  cfg.eta_init = 4.0;  // C(1 - 8) = 49: shrink until 1 - 2 eta satisfies the test
  r = armijo_backtrack_step(sq, one, cfg);
  CHECK(r.step_size == 0.5);
  CHECK(r.event.kind == StepKind::Backtrack);

  Bowl flat({1e-12});
  r = armijo_backtrack_step(flat, one, cfg);
  CHECK(std::abs(r.theta[0] - 1.0) < 1e-10);

  Adversary adv;
  std::vector<double> at{1.0};
  r = armijo_backtrack_step(adv, at, cfg);
  CHECK(r.step_size == 0.0);
  CHECK(r.theta[0] == 1.0);

  ArmijoConfig bad;
  bad.c = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = {};
  bad.shrink = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("perturbation baseline") {
  Bowl bowl({1.0, 2.0});
  std::vector<double> t{0.5, -0.4};
  Rng rng(5);
  auto [p, ev] = perturbation_step(bowl, t, 0.05, {NoiseKind::Gaussian, 0.1}, rng);
  CHECK(p == sgd_step(bowl, t, 0.05).first);
  CHECK(ev.kind == StepKind::Descent);

  Adversary adv;
  std::vector<double> at{1.0};
  Rng r1(9), r2(9);
  auto x = perturbation_step(adv, at, 0.1, {NoiseKind::Uniform, 0.1}, r1).first;
  auto y = perturbation_step(adv, at, 0.1, {NoiseKind::Uniform, 0.1}, r2).first;
  CHECK(x == y);
  CHECK(x[0] != 1.0);

  for (NoiseKind kind : {NoiseKind::Gaussian, NoiseKind::Uniform}) {
    const std::size_t dim = 12, draws = 10000;
    const double sigma = 0.3;
    Rng rng2(11);
    std::vector<double> xi(dim);
    double acc = 0;
    for (std::size_t i = 0; i < draws; ++i) {
      draw_perturbation({kind, sigma}, rng2, xi);
      for (double v : xi) {
        acc += v * v;
        if (kind == NoiseKind::Uniform) CHECK(std::abs(v) <= sigma * std::sqrt(3.0));
      }
    }
    const double target = dim * sigma * sigma;
    CHECK(std::abs(acc / draws - target) < 0.05 * target);
  }

  // Warm-up estimate: sigma^2 * dim == eta'^2 * mean ||g||^2
  Bowl b2({1.0, 1.0});
  PerturbationOptimizer po(0.01, 0.02, NoiseKind::Gaussian, 1, 3);
  std::vector<double> th{3.0, 4.0};
  std::vector<double> sq_norms;
  for (int s = 0; s < 3; ++s) {
    const auto g = b2.gradient(th);
    sq_norms.push_back(g[0] * g[0] + g[1] * g[1]);
    po.step(b2, th, s);
  }
  const double mean = (sq_norms[0] + sq_norms[1] + sq_norms[2]) / 3;
  CHECK(po.sigma() * po.sigma() * 2 == doctest::Approx(0.02 * 0.02 * mean).epsilon(1e-12));
}

TEST_CASE("random re-init policy") {
  Bowl bowl({1.0, 1.0});
  const PlateauDetector det{5, 1e-3};
  std::deque<double> hist;
  Rng rng(3);
  std::vector<double> t{1.0, 1.0};
  for (int i = 0; i < 20; ++i) {
    auto [next, ev] = random_reinit_policy(bowl, t, 0.01, det, hist, rng);
    CHECK(next == sgd_step(bowl, t, 0.01).first);
    t = next;
  }

  Bowl tiny({1e-6, 1e-6});
  auto fire = [&](std::uint64_t seed) {
    std::deque<double> h;
    Rng r(seed);
    std::vector<double> x{0.1, 0.1};
    for (int i = 0; i < 5; ++i) {
      auto [next, ev] = random_reinit_policy(tiny, x, 0.01, det, h, r);
      if (ev.kind == StepKind::Reinit) return next;
      x = next;
    }
    return std::vector<double>{};
  };
  const auto a = fire(7);
  REQUIRE(a.size() == 2);
  for (double v : a) {
    CHECK(v >= -std::numbers::pi);
    CHECK(v <= std::numbers::pi);
  }
  CHECK(fire(7) == a);
}

TEST_CASE("train loop") {
  Bowl bowl({0.5, 1.0, 2.0});
  OptimizerSpec spec;
  spec.name = "nlr";
  spec.eta = 0.1;  // below 1 / max curvature
  auto nlr_opt = make_optimizer(spec);
  spec.name = "sgd";
  auto sgd_opt = make_optimizer(spec);
  const std::vector<double> t0{1.0, -1.0, 0.5};
  const auto a = train(bowl, *nlr_opt, t0, {200, 0});
  const auto b = train(bowl, *sgd_opt, t0, {200, 0});
  CHECK(a.reversal_count == 0);
  CHECK(a.final_parameters == b.final_parameters);
  CHECK(a.losses == b.losses);
  CHECK(a.size() == 200);
  CHECK(a.losses.size() == 200);
  CHECK(a.grad_norms.size() == 200);

  auto one = make_optimizer(spec);
  CHECK(train(bowl, *one, t0, {1, 0}).size() == 1);

  Wavy w1(1), w2(1);
  spec.name = "nlr";
  spec.eta = 0.3;
  spec.eta_prime = 0.6;
  auto o1 = make_optimizer(spec), o2 = make_optimizer(spec);
  const auto x = train(w1, *o1, {0.3, 0.2}, {300, 0});
  const auto y = train(w2, *o2, {0.3, 0.2}, {300, 0});
  CHECK(x.final_parameters == y.final_parameters);
  std::size_t rev = 0;
  for (const auto& e : x.events) rev += e.kind == StepKind::Reversal;
  CHECK(rev == x.reversal_count);
  CHECK(rev > 0);

  for (const auto& name : optimizer_names()) {
    spec.name = name;
    CHECK(make_optimizer(spec)->name() == name);
  }
  spec.name = "lbfgs";
  CHECK_THROWS_AS(make_optimizer(spec), Error);
  CHECK_THROWS_AS(train(bowl, *one, t0, {0, 0}), Error);
}
