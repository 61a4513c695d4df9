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

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "streamsong/core.hpp"
#include "streamsong/stream_engine.hpp"

namespace streamsong {

struct BenchmarkSpec {
  int dataset_id = 1;
  std::size_t points_per_init_class = 200;
  std::size_t points_per_stream_segment = 200;
  std::uint64_t seed = 0;
  /// Interleave the new-class segments with each other instead of presenting them in order.
  bool interleave_new_classes = false;

  void validate() const;
};

struct LabeledStream {
  std::vector<LabeledPoint> init;
  std::vector<LabeledPoint> stream;  // arrival order, ground-truth labels
  std::vector<ClassId> new_class_ids;

  std::vector<FeatureVector> stream_points() const;
  std::vector<ClassId> stream_labels() const;
};

/// Diagonal-covariance Gaussian samples.
std::vector<FeatureVector> gen_gaussian_class(std::span<const double> mean,
                                              std::span<const double> cov_diag, std::size_t n,
                                              Rng& rng);

/// Noisy circle: center + r (cos a, sin a), a ~ U[0, 2 pi), r ~ N(radius, radial_sigma).
std::vector<FeatureVector> gen_ring_class(std::span<const double> center, double radius,
                                          double radial_sigma, std::size_t n, Rng& rng);

/// Class layout of one synthetic benchmark.
struct BenchmarkLayout {
  struct ClassDef {
    FeatureVector center;
    double variance = 0.0;  // isotropic Gaussian variance; ignored for rings
    double ring_radius = 0.0;  // > 0 selects a ring class
  };
  std::vector<ClassDef> known;
  std::vector<ClassDef> novel;
};
BenchmarkLayout benchmark_layout(int dataset_id);

/// Init set for the known classes, then a stream of fresh known-class points
/// (points_per_stream_segment per class, shuffled together) followed by one
/// contiguous segment per new class. Known classes get ids 0..C-1, new ones C...
LabeledStream make_benchmark(const BenchmarkSpec& spec);

/// Uniform permutation of the stream; the init set is untouched.
LabeledStream shuffle_stream(const LabeledStream& s, Rng& rng);

struct FeatureTable {
  std::vector<FeatureVector> points;
  std::optional<std::vector<ClassId>> labels;
};

/// Reads numeric rows; when `has_labels` the last column is an integer class id.
/// Throws ParseError with the 1-based line number on ragged or non-numeric rows.
FeatureTable load_features_csv(const std::filesystem::path& path, bool has_labels,
                               bool has_header = false);

void write_features_csv(const std::filesystem::path& path, std::span<const LabeledPoint> rows);

/// {dataset_id, seed, counts, class_means, ...}
nlohmann::json benchmark_manifest(const BenchmarkSpec& spec, const LabeledStream& s);

}  // namespace streamsong
