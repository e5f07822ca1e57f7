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

#include "plateau/harness/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "plateau/error.hpp"

namespace plateau::harness {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) raise(ErrorKind::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) raise(ErrorKind::Io, "failed writing " + path.string());
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

double to_real(const std::string& s, const std::filesystem::path& path, std::size_t row) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    raise(ErrorKind::Parse, path.string() + " row " + std::to_string(row) + ": bad number '" + s + "'");
  }
}

}  // namespace

std::string format_csv_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

void write_trace_csv(const TrainTrace& trace, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "step,minibatch_loss,full_loss,grad_norm,event_kind\n";
  for (std::size_t t = 0; t < trace.size(); ++t) {
    out << t << ',' << format_csv_real(trace.losses[t]) << ',';
    if (trace.report_losses[t]) out << format_csv_real(*trace.report_losses[t]);
    out << ',' << format_csv_real(trace.grad_norms[t]) << ',' << to_string(trace.events[t].kind)
        << '\n';
  }
  finish(out, path);
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open " + path.string());
  std::vector<TraceRow> rows;
  std::string line;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (row_no == 1) {
      if (line != "step,minibatch_loss,full_loss,grad_norm,event_kind") {
        raise(ErrorKind::Parse, path.string() + ": unexpected trace header");
      }
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() == 4 && line.back() == ',') cells.emplace_back();
    if (cells.size() != 5) {
      raise(ErrorKind::Parse, path.string() + " row " + std::to_string(row_no) + ": expected 5 fields");
    }
    TraceRow r;
    r.step = static_cast<std::uint64_t>(to_real(cells[0], path, row_no));
    r.minibatch_loss = to_real(cells[1], path, row_no);
    if (!cells[2].empty()) r.full_loss = to_real(cells[2], path, row_no);
    r.grad_norm = to_real(cells[3], path, row_no);
    r.event_kind = cells[4];
    rows.push_back(std::move(r));
  }
  return rows;
}

TraceSummary summarize_trace_rows(const std::vector<TraceRow>& rows) {
  TraceSummary s;
  s.steps = rows.size();
  if (rows.empty()) return s;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (it->full_loss) {
      s.final_loss = *it->full_loss;
      break;
    }
  }
  s.final_gradient_norm = rows.back().grad_norm;
  for (const auto& r : rows) {
    if (r.event_kind == "reversal") ++s.reversal_count;
  }
  return s;
}

void write_report_json(const ExperimentReport& r, const std::filesystem::path& path) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  json cfg = json::object();
  for (const auto& [k, v] : config_echo(r.config)) cfg[k] = v;
  j["config"] = cfg;
  j["results"] = {
      {"steps", r.steps},
      {"final_loss", r.final_loss},
      {"final_gradient_norm", r.final_gradient_norm},
      {"accuracy_percent", r.accuracy_percent},
      {"reversal_count", r.reversal_count},
  };
  j["final_parameters"] = r.final_parameters;
  j["trace_file"] = r.trace_file;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

ExperimentReport read_report_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      raise(ErrorKind::Parse, path.string() + ": unsupported schema_version");
    }
    ExperimentReport r;
    for (const auto& [k, v] : j.at("config").items()) {
      set_config_value(r.config, k, v.get<std::string>());
    }
    const json& res = j.at("results");
    r.steps = res.at("steps").get<std::uint64_t>();
    r.final_loss = res.at("final_loss").get<double>();
    r.final_gradient_norm = res.at("final_gradient_norm").get<double>();
    r.accuracy_percent = res.at("accuracy_percent").get<double>();
    r.reversal_count = res.at("reversal_count").get<std::size_t>();
    r.final_parameters = j.at("final_parameters").get<std::vector<double>>();
    r.trace_file = j.at("trace_file").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    raise(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

const std::vector<std::string>& report_csv_columns() {
  static const std::vector<std::string> cols{
      "optimizer", "seed", "steps", "final_loss", "final_gradient_norm", "accuracy_percent",
      "reversal_count"};
  return cols;
}

std::vector<std::string> report_csv_row(const ExperimentReport& r) {
  return {r.config.optimizer.name,
          std::to_string(r.config.seed),
          std::to_string(r.steps),
          format_csv_real(r.final_loss),
          format_csv_real(r.final_gradient_norm),
          format_csv_real(r.accuracy_percent),
          std::to_string(r.reversal_count)};
}

void write_report_csv(const std::vector<ExperimentReport>& reports,
                      const std::filesystem::path& path,
                      const std::vector<std::string>& leading_columns,
                      const std::vector<std::vector<std::string>>& leading_values) {
  auto out = open_out(path);
  std::vector<std::string> header = leading_columns;
  for (const auto& c : report_csv_columns()) header.push_back(c);
  out << join(header) << '\n';
  for (std::size_t i = 0; i < reports.size(); ++i) {
    std::vector<std::string> row;
    if (i < leading_values.size()) row = leading_values[i];
    for (auto& c : report_csv_row(reports[i])) row.push_back(std::move(c));
    out << join(row) << '\n';
  }
  finish(out, path);
}

void write_comparison(const std::vector<ComparisonRow>& rows, const std::filesystem::path& dir) {
  const auto csv_path = dir / "compare.csv";
  auto out = open_out(csv_path);
  out << "optimizer,seeds,loss_mean,loss_std,accuracy_mean,accuracy_std,grad_norm_mean,"
         "grad_norm_std\n";
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["rows"] = json::array();
  for (const auto& r : rows) {
    out << join({r.optimizer, std::to_string(r.seeds), format_csv_real(r.loss_mean),
                 format_csv_real(r.loss_std), format_csv_real(r.accuracy_mean),
                 format_csv_real(r.accuracy_std), format_csv_real(r.grad_norm_mean),
                 format_csv_real(r.grad_norm_std)})
        << '\n';
    j["rows"].push_back({{"optimizer", r.optimizer},
                         {"seeds", r.seeds},
                         {"loss_mean", r.loss_mean},
                         {"loss_std", r.loss_std},
                         {"accuracy_mean", r.accuracy_mean},
                         {"accuracy_std", r.accuracy_std},
                         {"grad_norm_mean", r.grad_norm_mean},
                         {"grad_norm_std", r.grad_norm_std},
                         {"final_losses", r.final_losses}});
  }
  finish(out, csv_path);
  write_text_file(dir / "compare.json", j.dump(2) + "\n");
}

void write_grid_csv(const std::vector<GridPoint>& grid, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "x,y,cost,grad_norm\n";
  for (const auto& p : grid) {
    out << format_csv_real(p.x) << ',' << format_csv_real(p.y) << ',' << format_csv_real(p.cost)
        << ',' << format_csv_real(p.grad_norm) << '\n';
  }
  finish(out, path);
}

}  // namespace plateau::harness
