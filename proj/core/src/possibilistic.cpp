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

#include "streamsong/possibilistic.hpp"

#include <algorithm>
#include <cmath>

namespace streamsong {

std::optional<double> mean_neighbor_distance(std::span<const FeatureVector> positions,
                                             std::size_t k_eta) {
  const std::size_t n = positions.size();
  if (n < 2 || k_eta == 0) return std::nullopt;
  const std::size_t k = std::min(k_eta, n - 1);
  std::vector<double> d;
  d.reserve(n - 1);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    d.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) d.push_back(distance(positions[i], positions[j]));
    }
    std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
    for (std::size_t i = 0; i < k; ++i) total += d[i];
  }
  const double eta = total / static_cast<double>(n * k);
  if (!(eta > 0.0)) return std::nullopt;
  return eta;
}

double estimate_eta(const ClassFootprint& footprint, const Model& model, std::size_t k_eta) {
  std::vector<FeatureVector> positions;
  positions.reserve(footprint.prototypes.size());
  for (const auto& p : footprint.prototypes) positions.push_back(p.position);
  if (auto eta = mean_neighbor_distance(positions, k_eta)) return *eta;

  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& [cls, fp] : model.footprints()) {
    if (cls == footprint.cls) continue;
    sum += fp.eta;
    ++count;
  }
  return count > 0 ? sum / static_cast<double>(count) : 1.0;
}

FuzzyMembershipVector prototype_fuzzy_membership(const Prototype& p, const Model& model,
                                                 std::size_t k) {
  FuzzyMembershipVector mu;
  for (ClassId c : model.class_ids()) mu[c] = 0.0;
  const auto neighbors = k_nearest_prototypes(p.position, model, k, p.id);
  if (neighbors.empty()) {
    mu[p.cls] = 1.0;
    return mu;
  }
  const double k_eff = static_cast<double>(neighbors.size());
  std::map<ClassId, int> counts;
  for (const auto& nb : neighbors) ++counts[nb.prototype->cls];
  for (auto& [cls, value] : mu) {
    const auto it = counts.find(cls);
    const double share = it == counts.end() ? 0.0 : static_cast<double>(it->second) / k_eff;
    value = (cls == p.cls ? 0.51 : 0.0) + share * 0.49;
  }
  mu.try_emplace(p.cls, 0.51);
  return mu;
}

double pcm_typicality(double d_squared, double eta, double m) {
  return 1.0 / (1.0 + std::pow(d_squared / eta, 1.0 / (m - 1.0)));
}

double scale_typicality(double t_bar) {
  if (t_bar <= 0.0) return 0.0;
  if (t_bar > 1.0) return 1.0;
  return 2.0 * t_bar - t_bar * t_bar;
}

TypicalityVector class_typicalities(std::span<const double> x, const Model& model) {
  return class_typicalities(x, model, static_cast<std::size_t>(model.params().k_query),
                            model.params().fuzzifier);
}

TypicalityVector class_typicalities(std::span<const double> x, const Model& model,
                                    std::size_t k_query, double m) {
  const auto neighbors = k_nearest_prototypes(x, model, k_query);
  std::map<ClassId, double> t_bar;
  for (ClassId c : model.class_ids()) t_bar[c] = 0.0;
  for (const auto& nb : neighbors) {
    const Prototype& p = *nb.prototype;
    const double raw = pcm_typicality(nb.distance * nb.distance, model.footprint(p.cls).eta, m);
    if (raw == 0.0) continue;
    for (const auto& [cls, mu] : prototype_fuzzy_membership(p, model, k_query)) {
      t_bar[cls] += mu * raw;
    }
  }
  TypicalityVector out;
  const double k_eff = static_cast<double>(neighbors.size());
  for (const auto& [cls, sum] : t_bar) out[cls] = scale_typicality(sum / k_eff);
  return out;
}

double pknn_reference_weight(double d, double eta1, double eta2, double m) {
  const double excess = std::max(0.0, (d - eta1) / eta2);
  return 1.0 / (1.0 + std::pow(excess, 2.0 / (m - 1.0)));
}

}  // namespace streamsong
