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

#include <map>
#include <span>
#include <vector>

#include "streamsong/core.hpp"
#include "streamsong/stream_engine.hpp"

namespace streamsong {

/// Partial injective map from predicted class to ground-truth class.
struct LabelAlignment {
  std::map<ClassId, ClassId> mapping;

  /// Ground-truth class for a prediction; kOutlier when unmapped or an outlier.
  ClassId map(ClassId predicted) const;
  bool instantiates(ClassId truth) const;
};

/// Greedy majority matching: repeatedly pairs the unmatched (predicted, truth)
/// classes with the largest co-occurrence count. Outlier predictions never match.
LabelAlignment align_labels(std::span<const ClassId> pred, std::span<const ClassId> truth);

/// Fraction of points whose aligned prediction equals the truth. An outlier
/// prediction counts as correct only when its truth class was never
/// instantiated by the alignment. Throws ArgumentError on length mismatch or empty input.
double precision(std::span<const ClassId> pred, std::span<const ClassId> truth,
                 const LabelAlignment& alignment);

struct ConfidentPrecision {
  double precision;
  double coverage;
};

/// Precision over the points whose max typicality exceeds `threshold`.
/// Returns {1.0, 0.0} when no point qualifies.
ConfidentPrecision confident_precision(std::span<const ClassId> pred,
                                       std::span<const ClassId> truth,
                                       std::span<const double> max_typicality,
                                       const LabelAlignment& alignment, double threshold = 0.2);

/// Max-typicality time series: one row per stream point, one column per probe.
struct ProbeTable {
  std::vector<std::size_t> stream_index;
  std::vector<std::vector<double>> rows;
  std::size_t probe_count = 0;
};

ProbeTable probe_series(std::span<const StreamOutput> outputs);
/// Header "stream_index,probe_0,...". Nothing but the header for zero rows.
void write_probe_csv(std::ostream& os, const ProbeTable& table);

}  // namespace streamsong
