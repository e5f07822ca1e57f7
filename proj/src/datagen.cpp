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

#include "plateau/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "plateau/error.hpp"
#include "plateau/rng.hpp"

namespace plateau {
namespace {

void normalise(std::vector<double>& x) {
  double sq = 0.0;
  for (double v : x) sq += v * v;
  const double inv = 1.0 / std::sqrt(sq);
  for (double& v : x) v *= inv;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

std::size_t Dataset::count_label(int label) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [&](const Sample& s) { return s.label == label; }));
}

Dataset synthetic_gaussian_dataset(std::size_t d, std::size_t n, double separation,
                                   std::uint64_t seed) {
  if (d < 2) raise(ErrorKind::Argument, "synthetic data needs dimension >= 2");
  if (n < 2) raise(ErrorKind::Argument, "synthetic data needs at least 2 samples");
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    raise(ErrorKind::Argument, "class separation must be > 0");
  }
  Rng rng(derive_seed(seed, {stream::kData}));
  std::normal_distribution<double> noise(0.0, 1.0);
  const double offset = 0.5 * separation / std::sqrt(static_cast<double>(d));

  Dataset data;
  data.dimension = d;
  data.samples.reserve(n);
  const std::size_t n_neg = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = i < n_neg ? -1 : 1;
    Sample s;
    s.label = label;
    s.features.resize(d);
    double sq = 0.0;
    do {
      sq = 0.0;
      for (double& f : s.features) {
        f = label * offset + noise(rng);
        sq += f * f;
      }
    } while (!(sq > 0.0));
    normalise(s.features);
    data.samples.push_back(std::move(s));
  }
  std::shuffle(data.samples.begin(), data.samples.end(), rng);
  std::ostringstream prov;
  prov << "synthetic(seed=" << seed << ",separation=" << separation << ")";
  data.provenance = prov.str();
  return data;
}

std::pair<Dataset, Dataset> split_train_test(const Dataset& data, double train_fraction,
                                             std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    raise(ErrorKind::Argument, "train fraction must be in (0, 1)");
  }
  Rng rng(derive_seed(seed, {stream::kSplit}));
  Dataset train, test;
  train.dimension = test.dimension = data.dimension;
  train.provenance = data.provenance + "/train";
  test.provenance = data.provenance + "/test";
  for (int label : {-1, 1}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
      if (data.samples[i].label == label) idx.push_back(i);
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(idx.size())));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      (k < n_train ? train : test).samples.push_back(data.samples[idx[k]]);
    }
  }
  if (train.samples.empty() || test.samples.empty()) {
    raise(ErrorKind::Argument, "split would leave one side empty");
  }
  std::shuffle(train.samples.begin(), train.samples.end(), rng);
  std::shuffle(test.samples.begin(), test.samples.end(), rng);
  return {std::move(train), std::move(test)};
}

Dataset load_csv_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open " + path.string());

  Dataset data;
  data.provenance = "csv(" + path.string() + ")";
  std::vector<std::vector<double>> rows;
  std::vector<double> raw_labels;
  std::vector<std::size_t> row_numbers;
  std::string line;
  std::size_t row_no = 0;
  std::size_t width = 0;
  bool header_seen = false;
  const std::string where = path.string() + " row ";
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    double probe;
    if (rows.empty() && !header_seen && !parse_double(cells.front(), probe)) {
      header_seen = true;
      width = cells.size();
      continue;
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      raise(ErrorKind::Parse, where + std::to_string(row_no) + ": expected " +
                                  std::to_string(width) + " fields, got " +
                                  std::to_string(cells.size()));
    }
    if (width < 2) raise(ErrorKind::Parse, where + std::to_string(row_no) + ": no feature columns");
    std::vector<double> values(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (!parse_double(cells[c], values[c])) {
        raise(ErrorKind::Parse, where + std::to_string(row_no) + ": non-numeric cell '" +
                                    cells[c] + "' in column " + std::to_string(c));
      }
    }
    raw_labels.push_back(values.back());
    values.pop_back();
    double sq = 0.0;
    for (double v : values) sq += v * v;
    if (!(sq > 0.0)) raise(ErrorKind::Parse, where + std::to_string(row_no) + ": all-zero features");
    rows.push_back(std::move(values));
    row_numbers.push_back(row_no);
  }
  if (rows.empty()) raise(ErrorKind::Parse, path.string() + ": no data rows");

  const bool has_zero = std::find(raw_labels.begin(), raw_labels.end(), 0.0) != raw_labels.end();
  const bool has_minus = std::find(raw_labels.begin(), raw_labels.end(), -1.0) != raw_labels.end();
  for (std::size_t i = 0; i < raw_labels.size(); ++i) {
    const double y = raw_labels[i];
    const bool ok = (y == 1.0) || (y == -1.0 && !has_zero) || (y == 0.0 && !has_minus);
    if (!ok) {
      raise(ErrorKind::Parse, where + std::to_string(row_numbers[i]) +
                                  ": unknown label " + std::to_string(y) +
                                  " (labels must be -1/+1 or 0/1)");
    }
  }
  data.dimension = rows.front().size();
  data.samples.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Sample s;
    s.features = std::move(rows[i]);
    normalise(s.features);
    s.label = raw_labels[i] > 0.0 ? 1 : -1;
    data.samples.push_back(std::move(s));
  }
  return data;
}

void write_csv_dataset(const Dataset& data, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) raise(ErrorKind::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::Io, "cannot write " + path.string());
  for (std::size_t c = 0; c < data.dimension; ++c) out << 'f' << c << ',';
  out << "label\n";
  char buf[64];
  for (const Sample& s : data.samples) {
    for (double f : s.features) {
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, f, std::chars_format::general, 17);
      out.write(buf, p - buf);
      out << ',';
    }
    out << s.label << '\n';
  }
  if (!out) raise(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace plateau
