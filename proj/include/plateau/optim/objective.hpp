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
#include <optional>
#include <span>
#include <vector>

namespace plateau {

using ParameterVector = std::vector<double>;
using GradientVector = std::vector<double>;

/// A cost with a (possibly noisy) gradient oracle.
///
/// Stochastic objectives resample their randomness in begin_step(); between
/// two begin_step() calls evaluate() must be a deterministic function of the
/// parameters, so that an accept/reject test compares like with like.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;
  virtual double evaluate(std::span<const double> theta) = 0;
  virtual GradientVector gradient(std::span<const double> theta) = 0;

  /// Called by train() before step t. Draws a fresh mini-batch, shot seed...
  virtual void begin_step(std::uint64_t /*step*/) {}

  /// Reporting cost (e.g. full-dataset loss); nullopt if the objective has
  /// no notion beyond evaluate().
  virtual std::optional<double> report_loss(std::span<const double> /*theta*/) {
    return std::nullopt;
  }
};

}  // namespace plateau
