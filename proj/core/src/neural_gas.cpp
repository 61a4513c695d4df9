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

#include "streamsong/neural_gas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace streamsong {

namespace {

struct RankScratch {
  std::vector<double> dist;
  std::vector<std::size_t> order;
};

void adapt(std::span<FeatureVector> prototypes, std::span<const double> x, double epsilon,
           double lambda, RankScratch& s) {
  const std::size_t n = prototypes.size();
  s.dist.resize(n);
  s.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.dist[i] = squared_distance(prototypes[i], x);
  std::iota(s.order.begin(), s.order.end(), std::size_t{0});
  std::sort(s.order.begin(), s.order.end(), [&](std::size_t a, std::size_t b) {
    return s.dist[a] != s.dist[b] ? s.dist[a] < s.dist[b] : a < b;
  });
  for (std::size_t rank = 0; rank < n; ++rank) {
    const double step = epsilon * std::exp(-static_cast<double>(rank + 1) / lambda);
    if (step == 0.0) break;  // later ranks only get smaller
    auto& p = prototypes[s.order[rank]];
    for (std::size_t d = 0; d < p.size(); ++d) p[d] += step * (x[d] - p[d]);
  }
}

}  // namespace

void ng_adapt_step(std::span<FeatureVector> prototypes, std::span<const double> x, double epsilon,
                   double lambda) {
  if (prototypes.empty()) throw ArgumentError("ng_adapt_step: no prototypes");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ArgumentError("ng_adapt_step: epsilon outside (0, 1]");
  if (!(lambda > 0.0)) throw ArgumentError("ng_adapt_step: lambda must be > 0");
  RankScratch scratch;
  adapt(prototypes, x, epsilon, lambda, scratch);
}

std::vector<FeatureVector> train_ng(std::span<const FeatureVector> points, std::size_t n_prototypes,
                                    const NgSchedule& schedule, std::uint64_t seed) {
  if (points.empty()) throw ArgumentError("train_ng: no points");
  if (n_prototypes == 0) throw ArgumentError("train_ng: n_prototypes must be >= 1");
  schedule.validate();
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionError("train_ng: inconsistent point dimensions");
  }

  Rng rng(seed);
  const std::size_t n = std::min(n_prototypes, points.size());
  std::vector<FeatureVector> protos;
  protos.reserve(n);
  for (std::size_t i : sample_without_replacement(rng, points.size(), n)) protos.push_back(points[i]);

  const double eps0 = schedule.epsilon_start;
  const double eps1 = schedule.epsilon_end;
  const double lam0 = schedule.lambda_start > 0.0 ? schedule.lambda_start
                                                  : std::max(static_cast<double>(n) / 2.0,
                                                             schedule.lambda_end);
  const double lam1 = schedule.lambda_end;
  const double t_max = static_cast<double>(schedule.epochs) * static_cast<double>(points.size());

  RankScratch scratch;
  std::size_t t = 0;
  for (int epoch = 0; epoch < schedule.epochs; ++epoch) {
    for (std::size_t idx : random_permutation(rng, points.size())) {
      const double frac = static_cast<double>(t) / t_max;
      const double eps = eps0 * std::pow(eps1 / eps0, frac);
      const double lam = lam0 * std::pow(lam1 / lam0, frac);
      adapt(protos, points[idx], eps, lam, scratch);
      ++t;
    }
  }
  return protos;
}

double representation_error(std::span<const FeatureVector> points,
                            std::span<const FeatureVector> prototypes) {
  if (points.empty() || prototypes.empty()) throw ArgumentError("representation_error: empty input");
  double total = 0.0;
  for (const auto& x : points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : prototypes) best = std::min(best, squared_distance(x, p));
    total += best;
  }
  return total;
}

}  // namespace streamsong
