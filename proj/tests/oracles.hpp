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


// Independent reference implementations used as test oracles. They share no
// code with the library beyond its data types.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "streamsong/core.hpp"

namespace oracle {

using streamsong::ClassId;
using streamsong::FeatureVector;
using streamsong::Model;

inline double dist(const FeatureVector& a, const FeatureVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct Ranked {
  double d;
  std::int64_t proto_id;
  ClassId cls;
  FeatureVector position;
};

// Every prototype of the model, fully sorted by (distance, proto id).
inline std::vector<Ranked> rank_all(const FeatureVector& x, const Model& model,
                                    std::int64_t exclude = -1) {
  std::vector<Ranked> all;
  for (const auto& [cls, fp] : model.footprints()) {
    for (const auto& p : fp.prototypes) {
      if (streamsong::to_int(p.id) == exclude) continue;
      all.push_back({dist(x, p.position), streamsong::to_int(p.id), cls, p.position});
    }
  }
  std::sort(all.begin(), all.end(), [](const Ranked& a, const Ranked& b) {
    return std::tie(a.d, a.proto_id) < std::tie(b.d, b.proto_id);
  });
  return all;
}

inline double typicality(double d2, double eta, double m) {
  return 1.0 / (1.0 + std::pow(d2 / eta, 1.0 / (m - 1.0)));
}

// Class typicalities recomputed from scratch: neighbor memberships by counting,
// raw typicality with the neighbor's class eta, average over K, then 2t - t^2.
inline std::map<ClassId, double> class_typicalities(const FeatureVector& x, const Model& model,
                                                    std::size_t k, double m) {
  const auto ranked = rank_all(x, model);
  const std::size_t kq = std::min(k, ranked.size());
  std::map<ClassId, double> sum;
  for (const auto& [cls, fp] : model.footprints()) sum[cls] = 0.0;
  for (std::size_t j = 0; j < kq; ++j) {
    const auto& nb = ranked[j];
    const auto around = rank_all(nb.position, model, nb.proto_id);
    const std::size_t kp = std::min(k, around.size());
    std::map<ClassId, double> mu;
    for (const auto& [cls, fp] : model.footprints()) mu[cls] = 0.0;
    if (kp == 0) {
      mu[nb.cls] = 1.0;
    } else {
      for (std::size_t i = 0; i < kp; ++i) mu[around[i].cls] += 0.49 / static_cast<double>(kp);
      mu[nb.cls] += 0.51;
    }
    const double t = typicality(nb.d * nb.d, model.footprint(nb.cls).eta, m);
    for (auto& [cls, s] : sum) s += mu[cls] * t;
  }
  for (auto& [cls, s] : sum) {
    const double tbar = s / static_cast<double>(kq);
    s = tbar <= 0.0 ? 0.0 : (tbar >= 1.0 ? 1.0 : 2.0 * tbar - tbar * tbar);
  }
  return sum;
}

// Builds a model from explicit footprints with the given etas.
struct FootprintSpec {
  std::int64_t cls;
  std::vector<FeatureVector> positions;
  double eta;
};

inline Model make_model(std::size_t dim, const std::vector<FootprintSpec>& specs,
                        streamsong::HyperParams params = {}, std::uint64_t seed = 1) {
  Model model(dim, params, seed);
  for (const auto& s : specs) model.add_footprint(ClassId{s.cls}, s.positions, s.eta, 0);
  return model;
}

}  // namespace oracle
