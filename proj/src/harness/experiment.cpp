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

#include "plateau/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "plateau/circuit_objective.hpp"
#include "plateau/datagen.hpp"
#include "plateau/error.hpp"
#include "plateau/harness/report.hpp"
#include "plateau/rng.hpp"

namespace plateau::harness {
namespace {

Dataset load_data(const ExperimentConfig& cfg) {
  if (!cfg.data_csv.empty()) {
    Dataset d = load_csv_dataset(cfg.data_csv);
    if (d.dimension > (std::size_t{1} << cfg.qubits)) {
      raise(ErrorKind::Config, "CSV has " + std::to_string(d.dimension) +
                                   " features, more than 2^qubits amplitudes");
    }
    return d;
  }
  return synthetic_gaussian_dataset(cfg.dim, cfg.samples, cfg.separation, cfg.seed);
}

ParameterVector initial_parameters(std::size_t n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {stream::kInit}));
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  ParameterVector theta(n);
  for (double& t : theta) t = u(rng);
  return theta;
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  if (v.size() < 2) return {m, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

}  // namespace

TraceSummary summarize_trace(const TrainTrace& trace) {
  TraceSummary s;
  s.steps = trace.size();
  s.final_loss = trace.final_loss();
  s.final_gradient_norm = trace.grad_norms.empty() ? 0.0 : trace.grad_norms.back();
  s.reversal_count = static_cast<std::size_t>(std::count_if(
      trace.events.begin(), trace.events.end(),
      [](const StepEvent& e) { return e.kind == StepKind::Reversal; }));
  return s;
}

RunResult run_experiment(const ExperimentConfig& config, bool persist) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const Dataset data = load_data(config);
  auto [train_set, test_set] = split_train_test(data, config.train_fraction, config.seed);
  CircuitSpec spec = build_ansatz(config.qubits, config.layers);

  CircuitObjectiveConfig ocfg;
  ocfg.batch_size = config.batch;
  ocfg.shots = config.shots;
  ocfg.grad_noise_sigma = config.grad_noise;
  ocfg.seed = config.seed;
  CircuitObjective objective(spec, train_set.samples, ocfg);

  OptimizerSpec ospec = config.optimizer;
  ospec.depth_L = config.layers;
  ospec.seed = derive_seed(config.seed, {stream::kOptimizer});
  auto optimizer = make_optimizer(ospec);

  RunResult run;
  run.trace = train(objective, *optimizer, initial_parameters(spec.parameter_count(), config.seed),
                    TrainOptions{config.steps, config.report_every});

  const TraceSummary summary = summarize_trace(run.trace);
  ExperimentReport& r = run.report;
  r.config = config;
  r.steps = summary.steps;
  r.final_loss = summary.final_loss;
  r.final_gradient_norm = summary.final_gradient_norm;
  r.reversal_count = summary.reversal_count;
  r.final_parameters = run.trace.final_parameters;
  r.accuracy_percent = accuracy(spec, r.final_parameters, test_set.samples);
  r.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (persist) {
    std::filesystem::create_directories(config.out);
    write_trace_csv(run.trace, config.out / r.trace_file);
    write_report_json(r, config.out / "report.json");
    write_report_csv({r}, config.out / "report.csv");
  }
  return run;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"eta_prime", "steps",   "epochs", "dim", "layers",
                                              "grad_noise", "noise", "samples", "opt"};
  return names;
}

SweepResult sweep(const ExperimentConfig& base, const std::string& parameter,
                  const std::vector<std::string>& values, bool persist) {
  const auto& allowed = sweep_parameters();
  if (std::find(allowed.begin(), allowed.end(), parameter) == allowed.end()) {
    raise(ErrorKind::Config, "cannot sweep '" + parameter + "'");
  }
  if (values.empty()) raise(ErrorKind::Config, "sweep needs at least one value");
  std::string key = parameter;
  if (key == "epochs") key = "steps";
  if (key == "noise") key = "grad_noise";

  // Validate every cell before any compute.
  std::vector<ExperimentConfig> cells;
  for (const auto& v : values) {
    ExperimentConfig cfg = base;
    set_config_value(cfg, key, v);
    cfg.out = base.out / (parameter + "=" + v);
    cfg.validate();
    cells.push_back(std::move(cfg));
  }

  SweepResult res;
  res.parameter = parameter;
  res.values = values;
  for (const auto& cfg : cells) res.reports.push_back(run_experiment(cfg, persist).report);

  if (persist) {
    std::vector<std::vector<std::string>> lead;
    for (const auto& v : values) lead.push_back({parameter, v});
    write_report_csv(res.reports, base.out / "sweep.csv", {"parameter", "value"}, lead);
  }
  return res;
}

std::vector<ComparisonRow> compare_optimizers(const ExperimentConfig& base,
                                              const std::vector<std::string>& optimizers,
                                              std::size_t n_seeds, bool persist) {
  if (optimizers.size() < 2) raise(ErrorKind::Config, "compare needs at least two optimizers");
  if (n_seeds < 1) raise(ErrorKind::Config, "compare needs at least one seed");
  for (const auto& name : optimizers) {
    ExperimentConfig probe = base;
    probe.optimizer.name = name;
    probe.validate();
  }
  std::vector<ComparisonRow> rows;
  for (const auto& name : optimizers) {
    ComparisonRow row;
    row.optimizer = name;
    row.seeds = n_seeds;
    std::vector<double> acc, gn;
    for (std::size_t k = 0; k < n_seeds; ++k) {
      ExperimentConfig cfg = base;
      cfg.optimizer.name = name;
      cfg.seed = base.seed + k;
      cfg.out = base.out / name / ("seed-" + std::to_string(cfg.seed));
      const ExperimentReport r = run_experiment(cfg, persist).report;
      row.final_losses.push_back(r.final_loss);
      acc.push_back(r.accuracy_percent);
      gn.push_back(r.final_gradient_norm);
    }
    std::tie(row.loss_mean, row.loss_std) = mean_std(row.final_losses);
    std::tie(row.accuracy_mean, row.accuracy_std) = mean_std(acc);
    std::tie(row.grad_norm_mean, row.grad_norm_std) = mean_std(gn);
    rows.push_back(std::move(row));
  }
  if (persist) write_comparison(rows, base.out);
  return rows;
}

}  // namespace plateau::harness
