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
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "plateau/optim/train.hpp"

namespace plateau::harness {

/// One training run. Defaults: 6 qubits, 5 layers, B = 32, eta = 0.01,
/// eta' = 0.02, 1000 shots, 500 steps, theta_0 ~ U[-pi, pi].
struct ExperimentConfig {
  // data
  std::string data_csv;  // empty: synthetic two-Gaussian data
  std::size_t dim = 8;
  std::size_t samples = 1000;
  double separation = 2.0;
  double train_fraction = 0.8;
  // circuit
  int qubits = 6;
  int layers = 5;
  // training
  OptimizerSpec optimizer{};
  std::size_t batch = 32;
  std::uint64_t steps = 500;
  std::uint64_t shots = 1000;  // 0: exact expectations
  double grad_noise = 0.0;
  std::uint64_t report_every = 50;
  std::uint64_t seed = 0;
  std::filesystem::path out = "runs/default";

  /// Error(Config) describing the first invalid field.
  void validate() const;
};

/// Every key accepted in config files and as --flag overrides, in the order
/// used for echoes.
const std::vector<std::string>& config_keys();

/// Accepts snake_case or kebab-case keys. Error(Config) for unknown keys or
/// malformed values.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);
std::string get_config_value(const ExperimentConfig& cfg, const std::string& key);

/// (key, value) for every key, in config_keys() order.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg);

/// `key = value` lines; '#' starts a comment; blank lines ignored.
ExperimentConfig load_config_file(const std::filesystem::path& path,
                                  ExperimentConfig base = {});

/// Shortest text that parses back to the same double, at most 17 digits.
std::string format_real(double v);

}  // namespace plateau::harness
