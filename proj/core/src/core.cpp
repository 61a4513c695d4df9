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

#include "streamsong/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace streamsong {

// ---- random helpers --------------------------------------------------------

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw ArgumentError("uniform_index: empty range");
  const std::uint64_t bound = n;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return static_cast<std::size_t>(r % bound);
  }
}

std::size_t weighted_index(Rng& rng, std::span<const double> weights) {
  if (weights.empty()) throw ArgumentError("weighted_index: no weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ArgumentError("weighted_index: invalid weight");
    total += w;
  }
  if (total <= 0.0) return uniform_index(rng, weights.size());
  const double target = uniform01(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    acc += weights[i];
    if (target < acc) return i;
  }
  return last_positive;
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
  }
  return perm;
}

std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n, std::size_t k) {
  if (k > n) throw ArgumentError("sample_without_replacement: k > n");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + uniform_index(rng, n - i)]);
  }
  pool.resize(k);
  return pool;
}

std::string serialize_rng(const Rng& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

Rng deserialize_rng(const std::string& state) {
  std::istringstream is(state);
  Rng rng;
  is >> rng;
  if (is.fail()) throw ParseError("malformed rng_state");
  return rng;
}

// ---- ids -------------------------------------------------------------------

std::string to_string(ClassId c) {
  return c == kOutlier ? std::string("OUTLIER") : std::to_string(to_int(c));
}

ClassId parse_class_id(const std::string& s) {
  if (s == "OUTLIER") return kOutlier;
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid class id '" + s + "'");
  }
  if (used != s.size() || v < 0) throw ParseError("invalid class id '" + s + "'");
  return ClassId{v};
}

std::pair<ClassId, double> argmax(const TypicalityVector& t) {
  std::pair<ClassId, double> best{kOutlier, 0.0};
  bool first = true;
  for (const auto& [cls, value] : t) {
    // std::map iterates in ascending id order, so strict > keeps the lowest id on ties.
    if (first || value > best.second) {
      best = {cls, value};
      first = false;
    }
  }
  return best;
}

// ---- parameters ------------------------------------------------------------

void NgSchedule::validate() const {
  if (!(epsilon_start > 0.0 && epsilon_end > 0.0 && epsilon_start <= 1.0))
    throw ArgumentError("ng.epsilon must lie in (0, 1]");
  if (epsilon_end > epsilon_start) throw ArgumentError("ng.epsilon_end exceeds epsilon_start");
  if (!(lambda_end > 0.0)) throw ArgumentError("ng.lambda_end must be > 0");
  if (lambda_start > 0.0 && lambda_end > lambda_start)
    throw ArgumentError("ng.lambda_end exceeds lambda_start");
  if (epochs < 1) throw ArgumentError("ng.epochs must be >= 1");
}

void HyperParams::validate() const {
  if (n_neurons_per_class < 1) throw ArgumentError("n_neurons_per_class must be >= 1");
  if (k_query < 1) throw ArgumentError("k_query must be >= 1");
  if (k_eta < 1) throw ArgumentError("k_eta must be >= 1");
  if (!(typicality_threshold > 0.0 && typicality_threshold < 1.0))
    throw ArgumentError("typicality_threshold must lie in (0, 1)");
  if (min_new_class_points < 0) throw ArgumentError("min_new_class_points must be >= 0");
  if (!(fuzzifier > 1.0) || !std::isfinite(fuzzifier)) throw ArgumentError("fuzzifier must be > 1");
  if (!(learning_rate > 0.0 && learning_rate < 1.0))
    throw ArgumentError("learning_rate must lie in (0, 1)");
  if (!(neighborhood > 0.0)) throw ArgumentError("neighborhood must be > 0");
  if (p1m_restarts < 1) throw ArgumentError("p1m_restarts must be >= 1");
  if (!(p1m_conv_tol > 0.0)) throw ArgumentError("p1m_conv_tol must be > 0");
  if (p1m_max_iter < 1) throw ArgumentError("p1m_max_iter must be >= 1");
  if (!(p1m_eta_scale > 0.0)) throw ArgumentError("p1m_eta_scale must be > 0");
  ng.validate();
}

// ---- geometry --------------------------------------------------------------

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

void check_feature(std::span<const double> x, std::size_t dimension) {
  if (x.size() != dimension) {
    throw DimensionError("expected dimension " + std::to_string(dimension) + ", got " +
                         std::to_string(x.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw ArgumentError("feature vector has a non-finite coordinate");
  }
}

std::vector<Neighbor> k_nearest_prototypes(std::span<const double> x, const Model& model,
                                           std::size_t k, std::optional<ProtoId> exclude) {
  if (model.empty()) throw StateError("model has no prototypes");
  std::vector<Neighbor> all;
  all.reserve(model.prototype_count());
  for (const auto& [cls, fp] : model.footprints()) {
    for (const auto& p : fp.prototypes) {
      if (exclude && p.id == *exclude) continue;
      all.push_back({&p, distance(x, p.position)});
    }
  }
  const auto closer = [](const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.prototype->id < b.prototype->id;
  };
  const std::size_t n = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), closer);
  all.resize(n);
  return all;
}

// ---- model -----------------------------------------------------------------

Model::Model(std::size_t dimension, HyperParams params, std::uint64_t seed)
    : dimension_(dimension), params_(std::move(params)), rng_(seed) {
  if (dimension_ == 0) throw ArgumentError("dimension must be >= 1");
  params_.validate();
}

ClassFootprint& Model::footprint(ClassId c) {
  auto it = footprints_.find(c);
  if (it == footprints_.end()) throw StateError("unknown class " + to_string(c));
  return it->second;
}

const ClassFootprint& Model::footprint(ClassId c) const {
  auto it = footprints_.find(c);
  if (it == footprints_.end()) throw StateError("unknown class " + to_string(c));
  return it->second;
}

std::vector<ClassId> Model::class_ids() const {
  std::vector<ClassId> ids;
  ids.reserve(footprints_.size());
  for (const auto& [c, fp] : footprints_) ids.push_back(c);
  return ids;
}

std::size_t Model::prototype_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [c, fp] : footprints_) n += fp.prototypes.size();
  return n;
}

ClassFootprint& Model::add_footprint(ClassId cls, std::span<const FeatureVector> positions,
                                     double eta, std::size_t created_at) {
  if (cls == kOutlier || to_int(cls) < 0) throw ArgumentError("invalid class id");
  if (footprints_.contains(cls)) throw ArgumentError("class " + to_string(cls) + " already exists");
  if (positions.empty()) throw ArgumentError("footprint needs at least one prototype");
  if (!(eta > 0.0)) throw ArgumentError("eta must be > 0");
  ClassFootprint fp;
  fp.cls = cls;
  fp.eta = eta;
  fp.created_at = created_at;
  for (const auto& pos : positions) {
    check_feature(pos, dimension_);
    fp.prototypes.push_back({pos, cls, next_proto_});
    next_proto_ = ProtoId{to_int(next_proto_) + 1};
  }
  if (to_int(cls) >= to_int(next_class_)) next_class_ = ClassId{to_int(cls) + 1};
  return footprints_.emplace(cls, std::move(fp)).first->second;
}

void Model::set_positions(ClassId cls, std::span<const FeatureVector> positions) {
  if (positions.empty()) throw ArgumentError("footprint needs at least one prototype");
  auto& fp = footprint(cls);
  for (const auto& pos : positions) check_feature(pos, dimension_);
  fp.prototypes.resize(std::min(fp.prototypes.size(), positions.size()));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i < fp.prototypes.size()) {
      fp.prototypes[i].position = positions[i];
    } else {
      fp.prototypes.push_back({positions[i], cls, next_proto_});
      next_proto_ = ProtoId{to_int(next_proto_) + 1};
    }
  }
}

Model Model::from_raw(Raw raw) {
  Model m;
  m.dimension_ = raw.dimension;
  m.params_ = std::move(raw.params);
  m.footprints_ = std::move(raw.footprints);
  m.rng_ = raw.rng;
  m.next_class_ = raw.next_class;
  m.next_proto_ = raw.next_proto;
  if (m.dimension_ == 0) throw ArgumentError("dimension must be >= 1");
  m.params_.validate();
  m.check_invariants();
  return m;
}

void Model::check_invariants() const {
  std::vector<std::int64_t> ids;
  for (const auto& [cls, fp] : footprints_) {
    if (fp.cls != cls) throw StateError("footprint key/class mismatch");
    if (!(fp.eta > 0.0) || !std::isfinite(fp.eta))
      throw StateError("class " + to_string(cls) + " has non-positive eta");
    if (fp.prototypes.empty()) throw StateError("class " + to_string(cls) + " has no prototypes");
    if (to_int(cls) >= to_int(next_class_)) throw StateError("next class id is stale");
    for (const auto& p : fp.prototypes) {
      if (p.cls != cls) throw StateError("prototype class differs from its footprint");
      check_feature(p.position, dimension_);
      if (to_int(p.id) >= to_int(next_proto_)) throw StateError("next proto id is stale");
      ids.push_back(to_int(p.id));
    }
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw StateError("duplicate prototype id");
}

}  // namespace streamsong
