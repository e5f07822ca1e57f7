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

#include "plateau/autodiff.hpp"
#include "plateau/error.hpp"

using namespace plateau;
using qsim::Axis;
using std::numbers::pi;

namespace {

std::vector<double> random_theta(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-pi, pi);
  std::vector<double> t(n);
  for (auto& x : t) x = u(rng);
  return t;
}

std::vector<Sample> random_batch(std::size_t count, std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<Sample> b(count);
  for (std::size_t i = 0; i < count; ++i) {
    b[i].features.resize(d);
    for (auto& x : b[i].features) x = nd(rng);
    b[i].label = rng() % 2 ? 1 : -1;
  }
  return b;
}

}  // namespace

TEST_CASE("raw expectation gradient, single Ry") {
  // Only Ry on qubit 0 is nonzero; the CNOT leaves Z on the control alone,
  // so <Z_0> = cos(theta_y).
  const auto spec = build_ansatz(2, 1);
  std::vector<double> theta(6, 0.0);
  const auto ry = spec.param_index(0, Axis::Y, 0);
  theta[ry] = pi / 3;
  const auto g = expectation_gradient(spec, theta, qsim::zero_state(2));
  CHECK(g[ry] == doctest::Approx(-std::sin(pi / 3)).epsilon(1e-12));
  CHECK(std::abs(g[spec.param_index(0, Axis::Z, 0)]) < 1e-15);  // phase only
}

TEST_CASE("shifted expectations are the circuit at theta +- pi/2") {
  std::mt19937_64 rng(2);
  const auto spec = build_ansatz(3, 2);
  const auto theta = random_theta(spec.parameter_count(), rng);
  const auto in = amplitude_encode(std::vector<double>{0.1, 0.4, -0.3, 0.2, 0.5}, 3);
  const auto sh = shifted_expectations(spec, theta, in);
  CHECK(sh.value == doctest::Approx(qsim::expectation_z(run_circuit(spec, theta, in), kReadout)));
  for (std::size_t k = 0; k < theta.size(); ++k) {
    auto p = theta, m = theta;
    p[k] += pi / 2;
    m[k] -= pi / 2;
    CHECK(std::abs(sh.plus[k] - qsim::expectation_z(run_circuit(spec, p, in), kReadout)) < 1e-13);
    CHECK(std::abs(sh.minus[k] - qsim::expectation_z(run_circuit(spec, m, in), kReadout)) < 1e-13);
  }
}

TEST_CASE("zero gradient where predictions are exact") {
  const auto spec = build_ansatz(2, 2);
  std::vector<double> zero(spec.parameter_count(), 0.0);
  std::vector<Sample> batch{{{1, 0, 0, 0}, 1}, {{0, 0, 1, 0}, -1}};
  const auto g = parameter_shift_gradient(spec, zero, batch);
  CHECK(gradient_norm(g) == 0.0);
  const auto fd = finite_difference_gradient(spec, zero, batch, 1e-4);
  for (double x : fd) CHECK(std::abs(x) < 1e-7);
}

TEST_CASE("parameter shift matches central differences") {
  std::mt19937_64 rng(17);
  const auto spec = build_ansatz(4, 3);
  double worst = 0;
  for (int rep = 0; rep < 10; ++rep) {
    const auto theta = random_theta(spec.parameter_count(), rng);
    const auto batch = random_batch(4, 1 + rng() % 16, rng);
    const auto ps = parameter_shift_gradient(spec, theta, batch);
    const auto fd = finite_difference_gradient(spec, theta, batch, 1e-5);
    for (std::size_t k = 0; k < ps.size(); ++k) worst = std::max(worst, std::abs(ps[k] - fd[k]));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("Rz on a Z-diagonal state before any entangler has zero gradient") {
  // layer 0 applies Rx, Ry then Rz; with Rx = Ry = 0 the state entering Rz is
  // a basis state, so the first-layer Rz angles only add phases.
  std::mt19937_64 rng(4);
  const auto spec = build_ansatz(3, 2);
  auto theta = random_theta(spec.parameter_count(), rng);
  for (int q = 0; q < 3; ++q) {
    theta[spec.param_index(0, Axis::X, q)] = 0.0;
    theta[spec.param_index(0, Axis::Y, q)] = 0.0;
  }
  const auto in = amplitude_encode(std::vector<double>{0, 0, 0, 0, 0, 1}, 3);
  const auto g = expectation_gradient(spec, theta, in);
  for (int q = 0; q < 3; ++q) CHECK(std::abs(g[spec.param_index(0, Axis::Z, q)]) < 1e-15);
}

TEST_CASE("shot-mode gradient is unbiased") {
  std::mt19937_64 rng(23);
  const auto spec = build_ansatz(2, 1);
  const auto theta = random_theta(spec.parameter_count(), rng);
  const auto batch = random_batch(2, 4, rng);
  const auto exact = parameter_shift_gradient(spec, theta, batch);
  const std::uint64_t M = 1000;
  const int seeds = 200;
  std::vector<double> mean(exact.size(), 0.0);
  for (int s = 0; s < seeds; ++s) {
    const auto g = parameter_shift_gradient(spec, theta, batch, qsim::ShotConfig{M, std::uint64_t(s)});
    for (std::size_t k = 0; k < g.size(); ++k) mean[k] += g[k] / seeds;
  }
  // Per sample the chain-rule factor is at most 2*2 = 4 in magnitude, the
  // shift difference has variance <= 2/M and the prediction noise couples in
  // through (y - y_hat); 4 / sqrt(M) bounds a single component's std.
  const double sigma = 4.0 / std::sqrt(double(M)) / std::sqrt(double(seeds));
  for (std::size_t k = 0; k < exact.size(); ++k) CHECK(std::abs(mean[k] - exact[k]) < 4 * sigma);
  CHECK(parameter_shift_gradient(spec, theta, batch, qsim::ShotConfig{M, 3}) ==
        parameter_shift_gradient(spec, theta, batch, qsim::ShotConfig{M, 3}));
}

TEST_CASE("finite_difference_gradient argument checks and gradient_norm") {
  const auto spec = build_ansatz(2, 1);
  std::vector<Sample> b{{{1.0}, 1}};
  std::vector<double> theta(6, 0.1);
  CHECK_THROWS_AS(finite_difference_gradient(spec, theta, b, 0.2), Error);
  CHECK_THROWS_AS(finite_difference_gradient(spec, theta, b, 0.0), Error);
  CHECK(gradient_norm(std::vector<double>{0, 0}) == 0.0);
  CHECK(gradient_norm(std::vector<double>{3, 4}) == 5.0);
  CHECK(gradient_norm(std::vector<double>{1}) == 1.0);
}
