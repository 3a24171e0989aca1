// Copyright 2026 The qae-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qae {

/// Random stream used everywhere in the library. Streams are always passed
/// explicitly; nothing holds a global generator.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Derives a child seed from a root seed and a path of stream tags.
///
/// Each tag is folded in with one SplitMix64 round:
///   s_0 = splitmix64(root), s_{k+1} = splitmix64(s_k ^ (tag_k * golden))
/// so sibling streams (same path prefix, different last tag) are decorrelated
/// and the scheme is stable across platforms.
std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path);

inline Rng make_rng(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
  return Rng(derive_seed(root, path));
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Well-known tags for the top-level streams of an experiment.
namespace stream {
inline constexpr std::uint64_t kInit = 1;
inline constexpr std::uint64_t kTrainPairs = 2;
inline constexpr std::uint64_t kValidationPairs = 3;
inline constexpr std::uint64_t kShots = 4;
inline constexpr std::uint64_t kEvaluation = 5;
inline constexpr std::uint64_t kGateNoise = 6;
inline constexpr std::uint64_t kQss = 7;
inline constexpr std::uint64_t kReplicate = 8;
}  // namespace stream

}  // namespace qae
