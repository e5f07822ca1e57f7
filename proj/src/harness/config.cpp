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

#include "plateau/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "plateau/error.hpp"

namespace plateau::harness {
namespace {

std::string normalise_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

double parse_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (first != last && *first == '+') ++first;
  auto [p, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || p != last || !std::isfinite(out)) {
    raise(ErrorKind::Config, "key '" + key + "': expected a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) {
    raise(ErrorKind::Config, "key '" + key + "': expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  const std::uint64_t u = parse_uint(key, v);
  if (u > 1'000'000) raise(ErrorKind::Config, "key '" + key + "': value too large");
  return static_cast<int>(u);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Field real_field(T ExperimentConfig::*m) {
  return {[m](ExperimentConfig& c, const std::string& k, const std::string& v) { c.*m = parse_real(k, v); },
          [m](const ExperimentConfig& c) { return format_real(c.*m); }};
}

template <typename T>
Field opt_real(T OptimizerSpec::*m) {
  return {[m](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.optimizer.*m = parse_real(k, v);
          },
          [m](const ExperimentConfig& c) { return format_real(c.optimizer.*m); }};
}

template <typename T>
Field uint_field(T ExperimentConfig::*m) {
  return {[m](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.*m = static_cast<T>(parse_uint(k, v));
          },
          [m](const ExperimentConfig& c) { return std::to_string(c.*m); }};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> f;
    f["data_csv"] = {[](ExperimentConfig& c, const std::string&, const std::string& v) { c.data_csv = v; },
                     [](const ExperimentConfig& c) { return c.data_csv; }};
    f["dim"] = uint_field(&ExperimentConfig::dim);
    f["samples"] = uint_field(&ExperimentConfig::samples);
    f["separation"] = real_field(&ExperimentConfig::separation);
    f["train_fraction"] = real_field(&ExperimentConfig::train_fraction);
    f["qubits"] = {[](ExperimentConfig& c, const std::string& k, const std::string& v) { c.qubits = parse_int(k, v); },
                   [](const ExperimentConfig& c) { return std::to_string(c.qubits); }};
    f["layers"] = {[](ExperimentConfig& c, const std::string& k, const std::string& v) { c.layers = parse_int(k, v); },
                   [](const ExperimentConfig& c) { return std::to_string(c.layers); }};
    f["opt"] = {[](ExperimentConfig& c, const std::string&, const std::string& v) { c.optimizer.name = v; },
                [](const ExperimentConfig& c) { return c.optimizer.name; }};
    f["eta"] = opt_real(&OptimizerSpec::eta);
    f["eta_prime"] = opt_real(&OptimizerSpec::eta_prime);
    f["nu"] = opt_real(&OptimizerSpec::nu);
    f["momentum"] = opt_real(&OptimizerSpec::momentum);
    f["armijo_c"] = opt_real(&OptimizerSpec::armijo_c);
    f["armijo_shrink"] = opt_real(&OptimizerSpec::armijo_shrink);
    f["reinit_threshold"] = opt_real(&OptimizerSpec::reinit_threshold);
    f["reinit_window"] = {[](ExperimentConfig& c, const std::string& k, const std::string& v) {
                            c.optimizer.reinit_window = parse_uint(k, v);
                          },
                          [](const ExperimentConfig& c) { return std::to_string(c.optimizer.reinit_window); }};
    f["perturb_warmup"] = {[](ExperimentConfig& c, const std::string& k, const std::string& v) {
                             c.optimizer.perturb_warmup = parse_uint(k, v);
                           },
                           [](const ExperimentConfig& c) { return std::to_string(c.optimizer.perturb_warmup); }};
    f["batch"] = uint_field(&ExperimentConfig::batch);
    f["steps"] = uint_field(&ExperimentConfig::steps);
    f["shots"] = uint_field(&ExperimentConfig::shots);
    f["grad_noise"] = real_field(&ExperimentConfig::grad_noise);
    f["report_every"] = uint_field(&ExperimentConfig::report_every);
    f["seed"] = uint_field(&ExperimentConfig::seed);
    f["out"] = {[](ExperimentConfig& c, const std::string&, const std::string& v) { c.out = v; },
                [](const ExperimentConfig& c) { return c.out.generic_string(); }};
    return f;
  }();
  return table;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { raise(ErrorKind::Config, m); };
  if (qubits < 2 || qubits > 14) fail("qubits must be in [2, 14]");
  if (layers < 1) fail("layers must be >= 1");
  if (data_csv.empty()) {
    if (dim < 2) fail("dim must be >= 2");
    if (samples < 2) fail("samples must be >= 2");
    if (!(separation > 0.0)) fail("separation must be > 0");
    if (dim > (std::size_t{1} << qubits)) fail("dim exceeds 2^qubits amplitudes");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) fail("train_fraction must be in (0, 1)");
  if (batch < 1) fail("batch must be >= 1");
  if (steps < 1) fail("steps must be >= 1");
  if (!(grad_noise >= 0.0)) fail("grad_noise must be >= 0");
  const auto& names = optimizer_names();
  if (std::find(names.begin(), names.end(), optimizer.name) == names.end()) {
    fail("unknown optimizer '" + optimizer.name + "'");
  }
  if (!(optimizer.eta > 0.0)) fail("eta must be > 0");
  if (!(optimizer.eta_prime > 0.0)) fail("eta_prime must be > 0");
  if (!(optimizer.nu >= 0.0)) fail("nu must be >= 0");
  if (!(optimizer.armijo_c > 0.0 && optimizer.armijo_c < 1.0)) fail("armijo_c must be in (0, 1)");
  if (!(optimizer.armijo_shrink > 0.0 && optimizer.armijo_shrink < 1.0)) {
    fail("armijo_shrink must be in (0, 1)");
  }
  if (optimizer.reinit_window < 1) fail("reinit_window must be >= 1");
  if (!(optimizer.reinit_threshold > 0.0)) fail("reinit_threshold must be > 0");
  if (optimizer.perturb_warmup < 1) fail("perturb_warmup must be >= 1");
  if (out.empty()) fail("out must not be empty");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "data_csv", "dim",       "samples",       "separation",     "train_fraction",
      "qubits",   "layers",    "opt",           "eta",            "eta_prime",
      "nu",       "momentum",  "armijo_c",      "armijo_shrink",  "reinit_window",
      "reinit_threshold", "perturb_warmup", "batch", "steps",    "shots",
      "grad_noise", "report_every", "seed",     "out"};
  return keys;
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const std::string k = normalise_key(key);
  const auto it = fields().find(k);
  if (it == fields().end()) raise(ErrorKind::Config, "unknown config key '" + key + "'");
  it->second.set(cfg, k, trim(value));
}

std::string get_config_value(const ExperimentConfig& cfg, const std::string& key) {
  const std::string k = normalise_key(key);
  const auto it = fields().find(k);
  if (it == fields().end()) raise(ErrorKind::Config, "unknown config key '" + key + "'");
  return it->second.get(cfg);
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : config_keys()) out.emplace_back(k, get_config_value(cfg, k));
  return out;
}

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Io, "cannot open config " + path.string());
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      raise(ErrorKind::Config, path.string() + ":" + std::to_string(row) + ": expected key = value");
    }
    try {
      set_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      std::string msg = e.what();
      const std::string prefix = std::string(to_string(ErrorKind::Config)) + ": ";
      if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
      raise(ErrorKind::Config, path.string() + ":" + std::to_string(row) + ": " + msg);
    }
  }
  return base;
}

}  // namespace plateau::harness
