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

#include "plateau/ansatz.hpp"

namespace plateau {

struct Dataset {
  std::vector<Sample> samples;
  std::size_t dimension = 0;
  std::string provenance;  // "synthetic(seed=..,separation=..)" or "csv(path)"

  std::size_t size() const noexcept { return samples.size(); }
  std::size_t count_label(int label) const noexcept;
};

/// n unit-norm samples in R^d, half per class. Class c in {-1, +1} is drawn
/// from N(c * separation/2 * u, I) with u = (1, ..., 1)/sqrt(d), then
/// normalised. Samples are shuffled.
Dataset synthetic_gaussian_dataset(std::size_t d, std::size_t n, double separation,
                                   std::uint64_t seed);

/// Stratified shuffle split; round(fraction * class size) of each class goes
/// to the training side.
std::pair<Dataset, Dataset> split_train_test(const Dataset& data, double train_fraction,
                                             std::uint64_t seed);

/// Rows of d numbers plus a trailing label in {-1, +1} or {0, 1}. An optional
/// header row `f0,...,f{d-1},label` is recognised by a non-numeric first cell.
Dataset load_csv_dataset(const std::filesystem::path& path);

/// Inverse of load_csv_dataset, header included, 17 significant digits.
void write_csv_dataset(const Dataset& data, const std::filesystem::path& path);

}  // namespace plateau
