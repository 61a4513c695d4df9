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

#include "streamsong/sp1m.hpp"

#include <algorithm>
#include <cmath>

#include "streamsong/possibilistic.hpp"

namespace streamsong {

namespace {

constexpr std::size_t kInitialEtaNeighbors = 5;

}  // namespace

P1mResult p1m(std::span<const FeatureVector> points, std::size_t seed_index, double m, double tol,
              int max_iter, double eta_scale) {
  if (points.empty()) throw ArgumentError("p1m: no points");
  if (seed_index >= points.size()) throw ArgumentError("p1m: seed index out of range");
  if (!(m > 1.0)) throw ArgumentError("p1m: fuzzifier must be > 1");
  if (max_iter < 1) throw ArgumentError("p1m: max_iter must be >= 1");
  if (!(eta_scale > 0.0)) throw ArgumentError("p1m: eta_scale must be > 0");

  const std::size_t n = points.size();
  const std::size_t dim = points[seed_index].size();
  P1mResult r;
  r.center = points[seed_index];

  std::vector<double> d2(n);
  for (std::size_t j = 0; j < n; ++j) d2[j] = squared_distance(points[j], r.center);
  {
    std::vector<double> others;
    others.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != seed_index) others.push_back(d2[j]);
    }
    const std::size_t k = std::min(kInitialEtaNeighbors, others.size());
    std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k), others.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += others[i];
    r.eta = std::max(k > 0 ? sum / static_cast<double>(k) : 0.0, kEtaFloor);
  }

  std::vector<double> w(n);  // u^m from the previous iteration
  for (int it = 1; it <= max_iter; ++it) {
    r.iterations = it;
    const double previous_eta = r.eta;
    if (it > 1) {
      for (std::size_t j = 0; j < n; ++j) d2[j] = squared_distance(points[j], r.center);
      double num = 0.0;
      double den = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        num += w[j] * d2[j];
        den += w[j];
      }
      if (den > 0.0) r.eta = std::max(eta_scale * num / den, kEtaFloor);
    }

    double den = 0.0;
    FeatureVector next(dim, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      w[j] = std::pow(pcm_typicality(d2[j], r.eta, m), m);
      den += w[j];
      for (std::size_t d = 0; d < dim; ++d) next[d] += w[j] * points[j][d];
    }
    if (!(den > 0.0)) break;
    for (double& c : next) c /= den;
    const double move = distance(next, r.center);
    r.center = std::move(next);
    if (it > 1 && move < tol && std::abs(r.eta - previous_eta) <= tol * previous_eta) {
      r.converged = true;
      break;
    }
  }

  r.typicalities.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    r.typicalities[j] = pcm_typicality(squared_distance(points[j], r.center), r.eta, m);
  }
  return r;
}

double max_region_typicality(std::span<const double> x, std::span<const ClusterRegion> regions,
                             double m) {
  double best = 0.0;
  for (const auto& region : regions) {
    best = std::max(best, pcm_typicality(squared_distance(x, region.center), region.eta, m));
  }
  return best;
}

std::size_t seed_sampling(std::span<const FeatureVector> points,
                          std::span<const ClusterRegion> existing, double m, Rng& rng) {
  if (points.empty()) throw ArgumentError("seed_sampling: no points");
  std::vector<double> weights(points.size(), 1.0);
  if (!existing.empty()) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      weights[j] = std::max(0.0, 1.0 - max_region_typicality(points[j], existing, m));
    }
  }
  return weighted_index(rng, weights);
}

bool coincidence_check(std::span<const double> center, double eta,
                       std::span<const ClusterRegion> existing, double m) {
  if (max_region_typicality(center, existing, m) > 0.5) return true;
  for (const auto& region : existing) {
    if (pcm_typicality(squared_distance(region.center, center), eta, m) > 0.5) return true;
  }
  return false;
}

std::vector<P1mResult> sp1m(std::span<const FeatureVector> points, std::size_t max_clusters,
                            std::size_t restart_cap, double m, double tol, int max_iter, Rng& rng,
                            std::span<const ClusterRegion> existing, double eta_scale) {
  std::vector<P1mResult> accepted;
  if (points.empty() || max_clusters == 0) return accepted;
  std::vector<ClusterRegion> regions(existing.begin(), existing.end());
  std::size_t runs = 0;
  while (accepted.size() < max_clusters && runs < restart_cap) {
    const std::size_t seed = seed_sampling(points, regions, m, rng);
    P1mResult r = p1m(points, seed, m, tol, max_iter, eta_scale);
    ++runs;
    if (coincidence_check(r.center, r.eta, regions, m)) continue;
    regions.push_back({r.center, r.eta});
    accepted.push_back(std::move(r));
  }
  return accepted;
}

}  // namespace streamsong
