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

#include <span>
#include <vector>

#include "streamsong/core.hpp"

namespace streamsong {

/// One adaptation step of Neural Gas.
///
/// Prototypes are ranked by distance to `x` (rank 1 = nearest, ties by index)
/// and the rank-k prototype moves by epsilon * exp(-k / lambda) * (x - p).
void ng_adapt_step(std::span<FeatureVector> prototypes, std::span<const double> x,
                   double epsilon, double lambda);

/// Trains `n_prototypes` Neural Gas prototypes on `points`.
///
/// Prototypes start at distinct points sampled without replacement; each epoch
/// presents the points in a fresh random permutation. Epsilon and lambda decay
/// exponentially per presentation, param(t) = start * (end / start)^(t / t_max).
/// `n_prototypes` is clamped to the point count. Deterministic in `seed`.
std::vector<FeatureVector> train_ng(std::span<const FeatureVector> points, std::size_t n_prototypes,
                                    const NgSchedule& schedule, std::uint64_t seed);

/// Sum over points of the squared distance to the closest prototype.
double representation_error(std::span<const FeatureVector> points,
                            std::span<const FeatureVector> prototypes);

}  // namespace streamsong
