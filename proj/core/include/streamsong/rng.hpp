// Copyright 2026 The streamsong Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Portable random helpers.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are implementation-defined, so every
// derived quantity below is computed from raw 64-bit draws with a documented
// recipe. Given the same seed, all platforms produce identical streams.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace streamsong {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1): top 53 bits of one draw.
double uniform01(Rng& rng);

/// Standard normal via Box-Muller; consumes exactly two draws per call.
double standard_normal(Rng& rng);

/// Uniform integer in [0, n) by rejection sampling on the 64-bit draw. n > 0.
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Index drawn with probability proportional to `weights` (all >= 0).
/// Falls back to uniform when every weight is zero. Consumes one or two draws.
std::size_t weighted_index(Rng& rng, std::span<const double> weights);

/// Fisher-Yates permutation of [0, n).
std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

/// `k` distinct indices from [0, n), in selection order (partial Fisher-Yates).
std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n, std::size_t k);

/// Textual engine state as produced by operator<<; round-trips exactly.
std::string serialize_rng(const Rng& rng);
Rng deserialize_rng(const std::string& state);

}  // namespace streamsong
