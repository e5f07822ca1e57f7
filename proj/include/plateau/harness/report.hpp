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
#include <optional>
#include <string>
#include <vector>

#include "plateau/harness/experiment.hpp"
#include "plateau/landscape.hpp"

namespace plateau::harness {

/// printf("%.17g").
std::string format_csv_real(double v);

// Trace CSV: step,minibatch_loss,full_loss,grad_norm,event_kind
// (full_loss empty on steps where it was not logged).
void write_trace_csv(const TrainTrace& trace, const std::filesystem::path& path);

struct TraceRow {
  std::uint64_t step = 0;
  double minibatch_loss = 0.0;
  std::optional<double> full_loss;
  double grad_norm = 0.0;
  std::string event_kind;
};
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);
TraceSummary summarize_trace_rows(const std::vector<TraceRow>& rows);

// report.json (schema_version, config echo, results, final_parameters).
void write_report_json(const ExperimentReport& report, const std::filesystem::path& path);
ExperimentReport read_report_json(const std::filesystem::path& path);

// Column order of report.csv and sweep.csv rows.
const std::vector<std::string>& report_csv_columns();
std::vector<std::string> report_csv_row(const ExperimentReport& report);
void write_report_csv(const std::vector<ExperimentReport>& reports,
                      const std::filesystem::path& path,
                      const std::vector<std::string>& leading_columns = {},
                      const std::vector<std::vector<std::string>>& leading_values = {});

void write_comparison(const std::vector<ComparisonRow>& rows, const std::filesystem::path& dir);

void write_grid_csv(const std::vector<GridPoint>& grid, const std::filesystem::path& path);

/// Writes text to a file, creating parent directories. Error(Io) with the path.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace plateau::harness
