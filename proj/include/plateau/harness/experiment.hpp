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

#include <filesystem>
#include <string>
#include <vector>

#include "plateau/harness/config.hpp"
#include "plateau/optim/train.hpp"

namespace plateau::harness {

inline constexpr int kReportSchemaVersion = 1;

struct ExperimentReport {
  ExperimentConfig config;
  std::uint64_t steps = 0;
  double final_loss = 0.0;           // full training-set loss at theta_T
  double final_gradient_norm = 0.0;  // ||g|| of the last step
  double accuracy_percent = 0.0;     // test split
  std::size_t reversal_count = 0;
  double wall_time_seconds = 0.0;    // stdout only; never persisted
  ParameterVector final_parameters;
  std::string trace_file = "trace.csv";
};

struct RunResult {
  ExperimentReport report;
  TrainTrace trace;
};

/// Builds data, circuit and theta_0 from the config, trains, evaluates test
/// accuracy. With persist, writes report.json, report.csv and trace.csv into
/// config.out.
RunResult run_experiment(const ExperimentConfig& config, bool persist = true);

/// Recomputes the report's numbers from a trace: final loss, last gradient
/// norm and reversal count.
struct TraceSummary {
  std::uint64_t steps = 0;
  double final_loss = 0.0;
  double final_gradient_norm = 0.0;
  std::size_t reversal_count = 0;
};
TraceSummary summarize_trace(const TrainTrace& trace);

// ---- sweeps and comparisons ---------------------------------------------

/// Swept parameter names: eta_prime, steps (alias epochs), dim, layers,
/// grad_noise (alias noise), samples, opt.
const std::vector<std::string>& sweep_parameters();

struct SweepResult {
  std::string parameter;
  std::vector<std::string> values;
  std::vector<ExperimentReport> reports;
};

/// One run per value, everything else (including the seed) held fixed.
/// Writes <out>/<parameter>=<value>/ run files and <out>/sweep.csv.
SweepResult sweep(const ExperimentConfig& base, const std::string& parameter,
                  const std::vector<std::string>& values, bool persist = true);

struct ComparisonRow {
  std::string optimizer;
  std::size_t seeds = 0;
  double loss_mean = 0.0, loss_std = 0.0;
  double accuracy_mean = 0.0, accuracy_std = 0.0;
  double grad_norm_mean = 0.0, grad_norm_std = 0.0;
  std::vector<double> final_losses;
};

/// Seeds base.seed .. base.seed + n_seeds - 1; every optimizer sees the same
/// data and theta_0 for a given seed. Writes <out>/compare.csv and
/// compare.json when persisting.
std::vector<ComparisonRow> compare_optimizers(const ExperimentConfig& base,
                                              const std::vector<std::string>& optimizers,
                                              std::size_t n_seeds, bool persist = true);

}  // namespace plateau::harness
