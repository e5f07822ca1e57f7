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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plateau/datagen.hpp"
#include "plateau/error.hpp"
#include "plateau/harness/config.hpp"
#include "plateau/harness/experiment.hpp"
#include "plateau/harness/report.hpp"
#include "plateau/landscape.hpp"
#include "plateau/qsim/kernels.hpp"

namespace fs = std::filesystem;
using namespace plateau;
using harness::ExperimentConfig;

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kRuntimeError = 3, kIoError = 4 };

fs::path output_root() {
  if (const char* env = std::getenv("PLATEAU_OUT_ROOT"); env && *env) return env;
  return "runs";
}

std::string kebab(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

// Every config key becomes a --flag on the run-style subcommands. Values are
// applied after --config, so flags win.
struct ConfigFlags {
  std::string config_file;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app, const std::vector<std::string>& skip = {}) {
    app->add_option("--config", config_file, "key = value file")->check(CLI::ExistingFile);
    for (const auto& key : harness::config_keys()) {
      if (std::find(skip.begin(), skip.end(), key) != skip.end()) continue;
      app->add_option_function<std::string>(
          "--" + kebab(key), [this, key](const std::string& v) { values[key] = v; },
          "config: " + key);
    }
  }

  ExperimentConfig build(const std::string& subcommand) const {
    ExperimentConfig cfg;
    cfg.out = output_root() / subcommand;
    if (!config_file.empty()) cfg = harness::load_config_file(config_file, cfg);
    for (const auto& [k, v] : values) harness::set_config_value(cfg, k, v);
    cfg.validate();
    return cfg;
  }
};

// Wall time is not persisted, so a report read back from disk has none.
void print_report(const harness::ExperimentReport& r) {
  std::printf("optimizer=%s seed=%llu steps=%llu final_loss=%.6g grad_norm=%.6g "
              "accuracy=%.2f%% reversals=%zu",
              r.config.optimizer.name.c_str(), static_cast<unsigned long long>(r.config.seed),
              static_cast<unsigned long long>(r.steps), r.final_loss, r.final_gradient_norm,
              r.accuracy_percent, r.reversal_count);
  if (r.wall_time_seconds > 0.0) std::printf(" wall=%.2fs", r.wall_time_seconds);
  std::printf("\n");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, ',')) {
    if (!cell.empty()) out.push_back(cell);
  }
  return out;
}

// Shared knobs of the landscape experiments.
struct LandscapeFlags {
  std::vector<std::string> optimizers;
  double eta = 0.05;
  double eta_prime = 0.1;
  double sigma = 1.0;
  std::uint64_t steps = 500;
  std::uint64_t seed = 0;
  std::string out;

  void attach(CLI::App* app, const std::string& default_opt) {
    optimizers = {default_opt};
    app->add_option("--opt", optimizers, "optimizer (repeatable)");
    app->add_option("--eta", eta, "descent rate")->check(CLI::PositiveNumber);
    app->add_option("--eta-prime", eta_prime, "reversal rate")->check(CLI::NonNegativeNumber);
    app->add_option("--sigma", sigma, "gradient noise std")->check(CLI::NonNegativeNumber);
    app->add_option("--steps", steps, "steps per trajectory")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "base seed");
    app->add_option("--out", out, "output directory");
  }

  OptimizerSpec spec(const std::string& name) const {
    OptimizerSpec s;
    s.name = name;
    s.eta = eta;
    s.eta_prime = eta_prime;
    s.seed = seed;
    return s;
  }

  fs::path dir(const std::string& sub) const {
    return out.empty() ? output_root() / "landscape" / sub : fs::path(out);
  }
};

using harness::format_csv_real;

int run(int argc, char** argv) {
  CLI::App app{"Variational circuit training with negative learning-rate steps"};
  app.require_subcommand(1);
  std::string simd;
  app.add_option("--simd", simd, "kernel set: scalar or avx2 (default: best available)")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "write a synthetic two-class dataset as CSV");
  std::size_t gen_dim = 8, gen_samples = 1000;
  double gen_sep = 2.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--dim", gen_dim, "feature dimension")->check(CLI::PositiveNumber);
  gen->add_option("--samples", gen_samples, "sample count")->check(CLI::Range(2ul, 10000000ul));
  gen->add_option("--separation", gen_sep, "distance between class means");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "output CSV path");

  // train
  auto* train_cmd = app.add_subcommand("train", "train one configuration");
  ConfigFlags train_flags;
  train_flags.attach(train_cmd);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "vary one parameter, everything else fixed");
  ConfigFlags sweep_flags;
  sweep_flags.attach(sweep_cmd);
  std::string sweep_param, sweep_values;
  sweep_cmd->add_option("--param", sweep_param, "parameter to sweep")->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "several optimizers over shared seeds");
  ConfigFlags compare_flags;
  compare_flags.attach(compare_cmd, {"opt"});
  std::vector<std::string> compare_opts;
  std::size_t compare_seeds = 5;
  compare_cmd->add_option("--opt", compare_opts, "optimizer (repeatable)")->required();
  compare_cmd->add_option("--seeds", compare_seeds, "number of seeds")->check(CLI::PositiveNumber);

  // landscape
  auto* land = app.add_subcommand("landscape", "synthetic plateau experiments");
  land->require_subcommand(1);

  auto* grid_cmd = land->add_subcommand("grid", "dump the plateau surface");
  double grid_lo = -4.0, grid_hi = 4.0;
  std::size_t grid_n = 101;
  std::string grid_out;
  grid_cmd->add_option("--lo", grid_lo, "lower bound");
  grid_cmd->add_option("--hi", grid_hi, "upper bound");
  grid_cmd->add_option("--n", grid_n, "points per axis")->check(CLI::Range(2ul, 5000ul));
  grid_cmd->add_option("--out", grid_out, "output directory");

  auto* diff_cmd = land->add_subcommand("diffusion", "diffusion coefficient on the plateau");
  LandscapeFlags diff_flags;
  diff_flags.attach(diff_cmd, "nlr");
  std::size_t diff_traj = 200;
  diff_cmd->add_option("--trajectories", diff_traj, "trajectories")->check(CLI::PositiveNumber);

  auto* exit_cmd = land->add_subcommand("exit-time", "first-passage time out of a ball");
  LandscapeFlags exit_flags;
  exit_flags.attach(exit_cmd, "nlr");
  exit_flags.steps = 100000;
  std::vector<double> exit_radii{0.5, 1.0};
  std::size_t exit_trials = 200;
  exit_cmd->add_option("--radius", exit_radii, "ball radius (repeatable)");
  exit_cmd->add_option("--trials", exit_trials, "trials per radius")->check(CLI::PositiveNumber);

  auto* viol_cmd = land->add_subcommand("violation", "violation rate against gradient size");
  LandscapeFlags viol_flags;
  viol_flags.attach(viol_cmd, "nlr");
  viol_flags.sigma = 0.1;
  std::vector<double> viol_scales{0.5, 1, 2, 5, 10, 20};
  std::size_t viol_draws = 10000, viol_dim = 10;
  viol_cmd->add_option("--scale", viol_scales, "||grad|| / sigma (repeatable)");
  viol_cmd->add_option("--draws", viol_draws, "draws per scale")->check(CLI::PositiveNumber);
  viol_cmd->add_option("--dim", viol_dim, "dimension")->check(CLI::PositiveNumber);

  auto* post_cmd = land->add_subcommand("post-escape", "noise floor on a convex bowl");
  LandscapeFlags post_flags;
  post_flags.attach(post_cmd, "nlr");
  post_flags.sigma = 0.1;
  post_flags.steps = 2000;
  std::size_t post_seeds = 50, post_dim = 10;
  post_cmd->add_option("--seeds", post_seeds, "seeds")->check(CLI::PositiveNumber);
  post_cmd->add_option("--dim", post_dim, "dimension")->check(CLI::PositiveNumber);

  // report
  auto* report_cmd = app.add_subcommand("report", "re-check a run directory against its trace");
  std::string report_dir;
  report_cmd->add_option("--out", report_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  if (!simd.empty()) {
    namespace k = qsim::kernels;
    k::set_isa(simd == "avx2" ? k::Isa::Avx2 : k::Isa::Scalar);
  }

  if (*gen) {
    const fs::path path = gen_out.empty() ? output_root() / "data.csv" : fs::path(gen_out);
    const Dataset data = synthetic_gaussian_dataset(gen_dim, gen_samples, gen_sep, gen_seed);
    write_csv_dataset(data, path);
    std::printf("wrote %zu samples (d=%zu) to %s\n", data.size(), data.dimension,
                path.string().c_str());
    return kOk;
  }

  if (*train_cmd) {
    const ExperimentConfig cfg = train_flags.build("train");
    const auto result = harness::run_experiment(cfg, true);
    print_report(result.report);
    std::printf("wrote %s\n", cfg.out.string().c_str());
    return kOk;
  }

  if (*sweep_cmd) {
    const ExperimentConfig cfg = sweep_flags.build("sweep");
    const auto res = harness::sweep(cfg, sweep_param, split_list(sweep_values), true);
    for (std::size_t i = 0; i < res.reports.size(); ++i) {
      std::printf("%s=%s  ", res.parameter.c_str(), res.values[i].c_str());
      print_report(res.reports[i]);
    }
    std::printf("wrote %s\n", (cfg.out / "sweep.csv").string().c_str());
    return kOk;
  }

  if (*compare_cmd) {
    const ExperimentConfig cfg = compare_flags.build("compare");
    const auto rows = harness::compare_optimizers(cfg, compare_opts, compare_seeds, true);
    std::printf("%-16s %12s %12s %10s %10s %12s\n", "optimizer", "loss_mean", "loss_std",
                "acc_mean", "acc_std", "grad_mean");
    for (const auto& r : rows) {
      std::printf("%-16s %12.6g %12.6g %10.2f %10.2f %12.6g\n", r.optimizer.c_str(), r.loss_mean,
                  r.loss_std, r.accuracy_mean, r.accuracy_std, r.grad_norm_mean);
    }
    std::printf("wrote %s\n", (cfg.out / "compare.csv").string().c_str());
    return kOk;
  }

  if (*land) {
    if (*grid_cmd) {
      if (!(grid_lo < grid_hi)) raise(ErrorKind::Config, "--lo must be below --hi");
      const fs::path dir = grid_out.empty() ? output_root() / "landscape" / "grid" : fs::path(grid_out);
      const auto grid = plateau_grid(PlateauSurface{}, grid_lo, grid_hi, grid_n);
      harness::write_grid_csv(grid, dir / "grid.csv");
      std::printf("wrote %s (%zu points)\n", (dir / "grid.csv").string().c_str(), grid.size());
      return kOk;
    }
    if (*diff_cmd) {
      DiffusionSetup setup;
      setup.noise_sigma = diff_flags.sigma;
      const fs::path dir = diff_flags.dir("diffusion");
      std::vector<DiffusionReport> reports;
      std::string csv = "optimizer,D_hat,ci_low,ci_high,p_hat,trajectories,steps\n";
      for (const auto& name : diff_flags.optimizers) {
        reports.push_back(estimate_diffusion(diff_flags.spec(name), setup, diff_traj,
                                             diff_flags.steps, diff_flags.seed));
        const auto& r = reports.back();
        csv += name + "," + format_csv_real(r.D_hat) + "," + format_csv_real(r.ci_low) + "," +
               format_csv_real(r.ci_high) + "," + format_csv_real(r.p_hat) + "," +
               std::to_string(r.trajectories) + "," + std::to_string(r.steps_per_trajectory) + "\n";
        std::printf("%-12s D_hat=%.6g  95%% CI [%.6g, %.6g]  p_hat=%.4f\n", name.c_str(), r.D_hat,
                    r.ci_low, r.ci_high, r.p_hat);
      }
      harness::write_text_file(dir / "diffusion.csv", csv);
      if (reports.size() == 2) {
        const auto& a = reports[0];
        const auto& b = reports[1];
        const char* verdict = a.ci_low > b.ci_high   ? "first > second (CIs disjoint)"
                              : b.ci_low > a.ci_high ? "second > first (CIs disjoint)"
                                                     : "CIs overlap";
        std::printf("ordering: %s\n", verdict);
      }
      return kOk;
    }
    if (*exit_cmd) {
      DiffusionSetup setup;
      setup.noise_sigma = exit_flags.sigma;
      const fs::path dir = exit_flags.dir("exit-time");
      std::string csv = "optimizer,radius,trials,mean,median,censored_fraction\n";
      for (const auto& name : exit_flags.optimizers) {
        for (double radius : exit_radii) {
          const auto r = measure_exit_time(exit_flags.spec(name), setup, setup.start_center, radius,
                                           exit_trials, exit_flags.steps, exit_flags.seed);
          csv += name + "," + format_csv_real(radius) + "," + std::to_string(r.trials) + "," +
                 format_csv_real(r.mean) + "," + format_csv_real(r.median) + "," +
                 format_csv_real(r.censored_fraction) + "\n";
          std::printf("%-12s R=%-6g mean=%.6g median=%.6g censored=%.3f%s\n", name.c_str(), radius,
                      r.mean, r.median, r.censored_fraction, r.inconclusive ? " (inconclusive)" : "");
        }
      }
      harness::write_text_file(dir / "exit_time.csv", csv);
      return kOk;
    }
    if (*viol_cmd) {
      ViolationSetup setup;
      setup.dim = viol_dim;
      setup.noise_sigma = viol_flags.sigma;
      const fs::path dir = viol_flags.dir("violation");
      std::string csv = "optimizer,gradient_scale,p_hat,ci_halfwidth,draws\n";
      for (const auto& name : viol_flags.optimizers) {
        const auto pts = violation_rate_vs_gradient(viol_flags.spec(name), setup, viol_scales,
                                                    viol_draws, viol_flags.seed);
        for (const auto& p : pts) {
          csv += name + "," + format_csv_real(p.gradient_scale) + "," + format_csv_real(p.p_hat) +
                 "," + format_csv_real(p.ci_halfwidth) + "," + std::to_string(p.draws) + "\n";
          std::printf("%-12s |g|/sigma=%-6g p_hat=%.5f +- %.5f\n", name.c_str(), p.gradient_scale,
                      p.p_hat, p.ci_halfwidth);
        }
      }
      harness::write_text_file(dir / "violation.csv", csv);
      return kOk;
    }
    if (*post_cmd) {
      PostEscapeSetup setup;
      setup.dim = post_dim;
      setup.noise_sigma = post_flags.sigma;
      const fs::path dir = post_flags.dir("post-escape");
      std::string csv = "optimizer,sigma,floor,final_grad_sq,eta_sigma_sq,seeds\n";
      for (const auto& name : post_flags.optimizers) {
        const auto r = post_escape_convergence(post_flags.spec(name), setup, post_flags.steps,
                                               post_seeds, post_flags.seed);
        csv += name + "," + format_csv_real(setup.noise_sigma) + "," + format_csv_real(r.floor) +
               "," + format_csv_real(r.final_grad_sq) + "," + format_csv_real(r.eta_sigma_sq) + "," +
               std::to_string(r.seeds) + "\n";
        std::printf("%-12s floor=%.6g final=%.6g eta*sigma^2=%.6g\n", name.c_str(), r.floor,
                    r.final_grad_sq, r.eta_sigma_sq);
      }
      harness::write_text_file(dir / "post_escape.csv", csv);
      return kOk;
    }
  }

  if (*report_cmd) {
    const fs::path dir = report_dir;
    const auto report = harness::read_report_json(dir / "report.json");
    const auto rows = harness::read_trace_csv(dir / report.trace_file);
    const auto s = harness::summarize_trace_rows(rows);
    print_report(report);
    const bool ok = s.steps == report.steps && s.final_loss == report.final_loss &&
                    s.final_gradient_norm == report.final_gradient_norm &&
                    s.reversal_count == report.reversal_count;
    std::printf("trace check: %s (%llu rows)\n", ok ? "consistent" : "MISMATCH",
                static_cast<unsigned long long>(s.steps));
    return ok ? kOk : kRuntimeError;
  }
  return kConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.kind()) {
      case ErrorKind::Config:
        return kConfigError;
      case ErrorKind::Io:
      case ErrorKind::Parse:
        return kIoError;
      default:
        return kRuntimeError;
    }
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntimeError;
  }
}
