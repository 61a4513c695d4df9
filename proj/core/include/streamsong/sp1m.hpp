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

/// Floor applied to every dynamically estimated eta.
inline constexpr double kEtaFloor = 1e-12;

/// Multiplier on the weighted mean squared distance when eta is re-estimated.
/// With 1 the estimate is a truncated mean that shrinks every iteration and
/// collapses onto a single point; 3 settles at the scale of the cluster.
inline constexpr double kDefaultP1mEtaScale = 3.0;

struct P1mResult {
  FeatureVector center;
  double eta = kEtaFloor;
  std::vector<double> typicalities;  // one per input point, from the final center and eta
  int iterations = 0;
  bool converged = false;
};

/// A cluster region used for seeding and coincidence tests: a center and its
/// squared-distance scale (typicality 0.5 at d^2 = eta).
struct ClusterRegion {
  FeatureVector center;
  double eta;
};

/// Possibilistic one-means started from points[seed_index].
///
/// Initial eta is the mean squared distance from the seed to its five nearest
/// other points. Each iteration after the first re-estimates
/// eta = eta_scale * sum(u^m d^2) / sum(u^m), recomputes typicalities and moves
/// the center to the u^m-weighted mean. Stops when the center moves less than
/// `tol` and eta changes by at most `tol` relative.
/// Throws ArgumentError on empty input or a bad seed index.
P1mResult p1m(std::span<const FeatureVector> points, std::size_t seed_index, double m,
              double tol, int max_iter, double eta_scale = kDefaultP1mEtaScale);

/// Highest typicality of `x` under any of `regions`; 0 when there are none.
double max_region_typicality(std::span<const double> x, std::span<const ClusterRegion> regions,
                             double m);

/// Picks a P1M seed with weight 1 - max typicality to the existing regions
/// (uniform with no regions, or when every weight is zero).
std::size_t seed_sampling(std::span<const FeatureVector> points,
                          std::span<const ClusterRegion> existing, double m, Rng& rng);

/// True when the candidate region (center, eta) overlaps an existing one: the
/// candidate center has typicality above 0.5 under an existing region, or an
/// existing center has typicality above 0.5 under the candidate.
bool coincidence_check(std::span<const double> center, double eta,
                       std::span<const ClusterRegion> existing, double m);

/// Sequential possibilistic one-means.
///
/// Repeats seed_sampling -> p1m -> coincidence_check, accepting non-coincident
/// clusters, until `max_clusters` are accepted or `restart_cap` P1M runs have
/// been made. Seeds and coincidence are tested against `existing` plus the
/// clusters accepted so far.
std::vector<P1mResult> sp1m(std::span<const FeatureVector> points, std::size_t max_clusters,
                            std::size_t restart_cap, double m, double tol, int max_iter, Rng& rng,
                            std::span<const ClusterRegion> existing = {},
                            double eta_scale = kDefaultP1mEtaScale);

}  // namespace streamsong
