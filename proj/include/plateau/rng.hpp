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
#include <initializer_list>
#include <random>

namespace plateau {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and a tuple of
/// indices, e.g. (base, parameter, direction, sample). Order matters.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(base);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p + 0x632BE59BD9B4E019ULL));
  return h;
}

// Stream tags for derive_seed so that unrelated consumers of one base seed
// never collide.
namespace stream {
inline constexpr std::uint64_t kData = 1;
inline constexpr std::uint64_t kSplit = 2;
inline constexpr std::uint64_t kInit = 3;
inline constexpr std::uint64_t kBatch = 4;
inline constexpr std::uint64_t kShots = 5;
inline constexpr std::uint64_t kGradNoise = 6;
inline constexpr std::uint64_t kOptimizer = 7;
inline constexpr std::uint64_t kTrajectory = 8;
inline constexpr std::uint64_t kBootstrap = 9;
inline constexpr std::uint64_t kEval = 10;
}  // namespace stream

}  // namespace plateau
