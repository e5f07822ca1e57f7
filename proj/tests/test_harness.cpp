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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "plateau/error.hpp"
#include "plateau/harness/config.hpp"
#include "plateau/harness/experiment.hpp"
#include "plateau/harness/report.hpp"

using namespace plateau;
using namespace plateau::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "plateau_harness_test" / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small(const fs::path& out) {
  ExperimentConfig c;
  c.qubits = 3;
  c.layers = 2;
  c.samples = 60;
  c.dim = 6;
  c.batch = 8;
  c.steps = 12;
  c.shots = 0;
  c.report_every = 5;
  c.seed = 4;
  c.out = out;
  return c;
}

}  // namespace

TEST_CASE("config defaults, keys and validation") {
  ExperimentConfig c;
  CHECK(c.qubits == 6);
  CHECK(c.layers == 5);
  CHECK(c.batch == 32);
  CHECK(c.optimizer.eta == 0.01);
  CHECK(c.optimizer.eta_prime == 0.02);
  CHECK(c.shots == 1000);
  CHECK(c.steps == 500);
  c.validate();

  set_config_value(c, "eta-prime", "0.05");
  CHECK(c.optimizer.eta_prime == 0.05);
  set_config_value(c, "opt", "adam");
  CHECK(get_config_value(c, "opt") == "adam");
  CHECK_THROWS_AS(set_config_value(c, "etaprime", "1"), Error);
  CHECK_THROWS_AS(set_config_value(c, "eta", "fast"), Error);
  CHECK_THROWS_AS(set_config_value(c, "qubits", "-1"), Error);

  ExperimentConfig bad;
  bad.qubits = 2;  // d = 8 does not fit in 4 amplitudes
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = {};
  bad.optimizer.name = "lbfgs";
  CHECK_THROWS_AS(bad.validate(), Error);

  const auto echo = config_echo(ExperimentConfig{});
  REQUIRE(echo.size() == config_keys().size());
  ExperimentConfig rebuilt;
  rebuilt.seed = 77;
  for (const auto& [k, v] : echo) set_config_value(rebuilt, k, v);
  CHECK(config_echo(rebuilt) == echo);

  for (double v : {0.1, 1e-300, 0.02, 3.0, 1.0 / 3.0}) CHECK(std::stod(format_real(v)) == v);
}

TEST_CASE("config file") {
  const fs::path dir = scratch("cfg");
  fs::create_directories(dir);
  std::ofstream(dir / "a.cfg") << "# run\nqubits = 4\n\neta_prime=0.03  # ascent\nopt = sgd\n";
  const auto c = load_config_file(dir / "a.cfg");
  CHECK(c.qubits == 4);
  CHECK(c.optimizer.eta_prime == 0.03);
  CHECK(c.optimizer.name == "sgd");
  std::ofstream(dir / "b.cfg") << "qubitz = 4\n";
  CHECK_THROWS_AS(load_config_file(dir / "b.cfg"), Error);
  std::ofstream(dir / "c.cfg") << "qubits 4\n";
  CHECK_THROWS_AS(load_config_file(dir / "c.cfg"), Error);
  try {
    load_config_file(dir / "missing.cfg");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("run_experiment persists a consistent, reproducible report") {
  const fs::path a = scratch("run_a"), b = scratch("run_b");
  const auto ra = run_experiment(small(a), true);
  auto cb = small(b);
  const auto rb = run_experiment(cb, true);
  for (const char* f : {"report.json", "report.csv", "trace.csv"}) {
    CHECK(fs::exists(a / f));
    CHECK(slurp(a / f).size() > 0);
  }
  // Output paths differ only in the echoed "out" value.
  CHECK(ra.report.final_parameters == rb.report.final_parameters);
  CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
  const auto rerun = run_experiment(small(a), true);
  CHECK(slurp(a / "report.json").size() > 0);
  CHECK(rerun.report.final_loss == ra.report.final_loss);

  const auto rows = read_trace_csv(a / "trace.csv");
  CHECK(rows.size() == 12);
  const auto s = summarize_trace_rows(rows);
  const auto back = read_report_json(a / "report.json");
  CHECK(s.final_loss == back.final_loss);
  CHECK(s.final_gradient_norm == back.final_gradient_norm);
  CHECK(s.reversal_count == back.reversal_count);
  CHECK(s.steps == back.steps);
  CHECK(back.final_parameters == ra.report.final_parameters);
  CHECK(config_echo(back.config) == config_echo(ra.report.config));
  CHECK(back.accuracy_percent == ra.report.accuracy_percent);

  const auto t = summarize_trace(ra.trace);
  CHECK(t.final_loss == ra.report.final_loss);

  auto one = small(scratch("run_one"));
  one.steps = 1;
  const auto r1 = run_experiment(one, true);
  CHECK(r1.trace.size() == 1);
  CHECK(read_trace_csv(one.out / "trace.csv").size() == 1);
}

TEST_CASE("shot mode runs") {
  auto c = small(scratch("shots"));
  c.shots = 200;
  c.steps = 3;
  const auto r = run_experiment(c, false);
  CHECK(r.trace.size() == 3);
  const auto again = run_experiment(c, false);
  CHECK(again.report.final_parameters == r.report.final_parameters);
}

TEST_CASE("sweep") {
  const fs::path dir = scratch("sweep");
  auto c = small(dir);
  c.steps = 4;
  const auto res = sweep(c, "eta_prime", {"0.01", "0.05"}, true);
  REQUIRE(res.reports.size() == 2);
  CHECK(fs::exists(dir / "sweep.csv"));
  CHECK(fs::exists(dir / "eta_prime=0.05" / "report.json"));
  // only the swept key (and the output directory) differ
  const auto e0 = config_echo(res.reports[0].config), e1 = config_echo(res.reports[1].config);
  for (std::size_t i = 0; i < e0.size(); ++i) {
    if (e0[i].first == "eta_prime" || e0[i].first == "out") continue;
    CHECK(e0[i] == e1[i]);
  }
  std::ifstream in(dir / "sweep.csv");
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 3);

  CHECK_THROWS_AS(sweep(c, "colour", {"1"}, false), Error);
  CHECK_THROWS_AS(sweep(c, "eta_prime", {}, false), Error);
  CHECK_THROWS_AS(sweep(c, "eta_prime", {"0.1", "-1"}, false), Error);
  CHECK(sweep(c, "epochs", {"2"}, false).reports[0].steps == 2);
}

TEST_CASE("compare") {
  const fs::path dir = scratch("compare");
  auto c = small(dir);
  c.steps = 4;
  const auto rows = compare_optimizers(c, {"sgd", "nlr"}, 2, true);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].seeds == 2);
  CHECK(rows[0].final_losses.size() == 2);
  CHECK(fs::exists(dir / "compare.csv"));
  CHECK(fs::exists(dir / "compare.json"));
  CHECK_THROWS_AS(compare_optimizers(c, {"sgd"}, 2, false), Error);
}

TEST_CASE("I/O errors carry the path") {
  ExperimentReport r;
  try {
    write_report_json(r, "/proc/plateau/nope/report.json");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
    CHECK(std::string(e.what()).find("/proc/plateau") != std::string::npos);
  }
  CHECK(format_csv_real(0.1) == "0.10000000000000001");
}
