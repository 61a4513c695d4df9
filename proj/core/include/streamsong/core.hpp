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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streamsong/error.hpp"
#include "streamsong/rng.hpp"

namespace streamsong {

/// A point in R^q.
using FeatureVector = std::vector<double>;

/// Class identifier. Non-negative for real classes; kOutlier marks buffered points.
enum class ClassId : std::int64_t {};
inline constexpr ClassId kOutlier{-1};

constexpr std::int64_t to_int(ClassId c) noexcept { return static_cast<std::int64_t>(c); }
std::string to_string(ClassId c);
/// Parses "OUTLIER" or a non-negative integer.
ClassId parse_class_id(const std::string& s);

enum class ProtoId : std::int64_t {};
constexpr std::int64_t to_int(ProtoId p) noexcept { return static_cast<std::int64_t>(p); }

struct Prototype {
  FeatureVector position;
  ClassId cls{};
  ProtoId id{};
};

struct ClassFootprint {
  ClassId cls{};
  std::vector<Prototype> prototypes;
  double eta = 1.0;
  std::size_t created_at = 0;
  std::size_t update_count = 0;
};

/// Batch Neural Gas schedule. A non-positive lambda_start means "half the prototype count".
struct NgSchedule {
  double epsilon_start = 0.5;
  double epsilon_end = 0.005;
  double lambda_start = 0.0;
  double lambda_end = 0.01;
  int epochs = 50;

  void validate() const;
};

struct HyperParams {
  int n_neurons_per_class = 10;
  int k_query = 3;
  int k_eta = 5;
  double typicality_threshold = 0.1;
  int min_new_class_points = 30;
  double fuzzifier = 1.5;
  double learning_rate = 0.1;
  double neighborhood = 2.0;
  int p1m_restarts = 3;
  double p1m_conv_tol = 1e-4;
  int p1m_max_iter = 100;
  double p1m_eta_scale = 3.0;
  NgSchedule ng;

  /// Throws ArgumentError naming the first offending field.
  void validate() const;
};

/// Per-class typicality, one entry per class of the model.
using TypicalityVector = std::map<ClassId, double>;

/// Largest entry with ties resolved to the lowest ClassId. Empty vector gives {kOutlier, 0}.
std::pair<ClassId, double> argmax(const TypicalityVector& t);

/// The live set of class footprints. Owns its random state so that every
/// stochastic step of the streaming lifecycle is reproducible from a saved file.
class Model {
 public:
  Model(std::size_t dimension, HyperParams params, std::uint64_t seed);

  std::size_t dimension() const noexcept { return dimension_; }
  const HyperParams& params() const noexcept { return params_; }

  const std::map<ClassId, ClassFootprint>& footprints() const noexcept { return footprints_; }
  ClassFootprint& footprint(ClassId c);
  const ClassFootprint& footprint(ClassId c) const;
  bool has_class(ClassId c) const { return footprints_.contains(c); }
  std::vector<ClassId> class_ids() const;
  std::size_t prototype_count() const noexcept;
  bool empty() const noexcept { return prototype_count() == 0; }

  /// Smallest id larger than every id ever used.
  ClassId next_class_id() const noexcept { return next_class_; }

  /// Adds a footprint built from `positions`; assigns fresh proto ids.
  /// The footprint's eta is left at `eta` and must be set by the caller if needed.
  ClassFootprint& add_footprint(ClassId cls, std::span<const FeatureVector> positions,
                                double eta, std::size_t created_at);

  /// Replaces every prototype position of `cls` (count may change; ids are reissued for new ones).
  void set_positions(ClassId cls, std::span<const FeatureVector> positions);

  Rng& rng() noexcept { return rng_; }
  const Rng& rng() const noexcept { return rng_; }

  // Used by persistence only.
  struct Raw {
    std::size_t dimension;
    HyperParams params;
    std::map<ClassId, ClassFootprint> footprints;
    Rng rng;
    ClassId next_class;
    ProtoId next_proto;
  };
  static Model from_raw(Raw raw);
  ProtoId next_proto_id() const noexcept { return next_proto_; }

  /// Checks every structural invariant; throws StateError on violation.
  void check_invariants() const;

 private:
  Model() = default;

  std::size_t dimension_ = 0;
  HyperParams params_;
  std::map<ClassId, ClassFootprint> footprints_;
  Rng rng_;
  ClassId next_class_{0};
  ProtoId next_proto_{0};
};

/// Euclidean distance. Throws DimensionError on size mismatch.
double distance(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Throws ArgumentError if any coordinate is NaN or infinite, DimensionError if the size is wrong.
void check_feature(std::span<const double> x, std::size_t dimension);

struct Neighbor {
  const Prototype* prototype;  // points into the model; invalidated by mutation
  double distance;
};

/// K nearest prototypes across all classes, ascending by distance, ties by proto id.
/// Throws StateError on an empty model.
std::vector<Neighbor> k_nearest_prototypes(std::span<const double> x, const Model& model,
                                           std::size_t k,
                                           std::optional<ProtoId> exclude = std::nullopt);

}  // namespace streamsong
