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

#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "streamsong/core.hpp"

namespace streamsong {

enum class UpdateStrategy {
  kKnnIncremental,          // move the winning class's prototypes toward x
  kRetrainAll,              // keep every point of the class and retrain NG from scratch
  kRetrainProtosPlusPoint,  // retrain NG on the current prototypes plus x
};

std::string to_string(UpdateStrategy s);
/// Accepts "knn_incremental", "retrain_all", "retrain_protos".
UpdateStrategy parse_update_strategy(const std::string& s);

/// Typicality factor in the incremental update.
enum class UpdateGain {
  kClass,      // the class typicality of x, shared by every moved prototype
  kPrototype,  // each prototype's own typicality of x under the class eta
};

std::string to_string(UpdateGain g);
/// Accepts "class", "prototype".
UpdateGain parse_update_gain(const std::string& s);

/// Rank cutoff that moves every prototype of the class.
inline constexpr std::size_t kAllRanks = static_cast<std::size_t>(-1);

enum class EventKind { kClassified, kOutlierBuffered, kNewClassCreated };
std::string to_string(EventKind e);

struct StreamOutput {
  std::size_t stream_index = 0;
  ClassId label = kOutlier;  // label at emission time
  TypicalityVector typicality;
  EventKind event = EventKind::kClassified;
  std::optional<ClassId> new_class;       // set for kNewClassCreated
  std::vector<std::size_t> absorbed;      // stream indices moved into new_class
  std::vector<TypicalityVector> probes;   // probe scores after this point, if configured

  double max_typicality() const;
};

struct OutlierBuffer {
  struct Entry {
    FeatureVector x;
    std::size_t stream_index;
  };
  std::deque<Entry> entries;
  std::optional<std::size_t> capacity;  // FIFO eviction when set

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  /// Appends; returns the evicted entry's index if the capacity was exceeded.
  std::optional<std::size_t> push(FeatureVector x, std::size_t stream_index);
};

struct LabeledPoint {
  FeatureVector x;
  ClassId label{};
};

struct EngineOptions {
  UpdateStrategy strategy = UpdateStrategy::kKnnIncremental;
  UpdateGain gain = UpdateGain::kPrototype;
  /// Incremental update moves the nearest `rank_cutoff` prototypes; k_query when unset.
  std::optional<std::size_t> rank_cutoff;
  std::optional<std::size_t> buffer_capacity;
  /// Scored against the model after every stream point; never used for updates.
  std::vector<FeatureVector> probes;
};

/// Builds one footprint per class by Neural Gas on that class's points.
/// Throws ArgumentError on empty input or inconsistent dimensions.
Model initialize(std::span<const LabeledPoint> init, const HyperParams& params, std::uint64_t seed);

/// Incremental update of class `cls`: the rank-k prototype (1 = nearest to x)
/// moves by alpha * typicality * exp(-k / lambda) * (x - p) for k <= rank_cutoff.
/// Eta is re-estimated afterwards.
void update_footprint_knn(Model& model, ClassId cls, std::span<const double> x, double typicality,
                          std::size_t rank_cutoff = kAllRanks);

/// Same as update_footprint_knn, with each prototype's gain scaled by its own
/// typicality of x, pcm_typicality(|x - p|^2, eta, m), instead of a shared value.
void update_footprint_knn_local(Model& model, ClassId cls, std::span<const double> x,
                                std::size_t rank_cutoff = kAllRanks);

/// Appends x to `retained` and retrains the class from scratch on it.
void update_footprint_retrain_all(Model& model, ClassId cls, std::vector<FeatureVector>& retained,
                                  std::span<const double> x);

/// Retrains the class on its own prototypes plus x, keeping the prototype count.
void update_footprint_retrain_protos(Model& model, ClassId cls, std::span<const double> x);

struct Discovery {
  ClassId cls{};
  std::vector<std::size_t> absorbed;       // stream indices, ascending
  std::vector<FeatureVector> absorbed_points;
};

/// Looks for a new class in the outlier buffer. On success the new footprint is
/// added to `model`, its points are removed from `buffer`, and the absorbed
/// stream indices are returned.
std::optional<Discovery> discover(Model& model, OutlierBuffer& buffer, std::size_t stream_index);

/// Scores probes against a model without touching it.
std::vector<TypicalityVector> probe_typicalities(const Model& model,
                                                 std::span<const FeatureVector> probes);

/// The streaming classifier: owns a model and its outlier buffer.
class StreamEngine {
 public:
  explicit StreamEngine(Model model, EngineOptions options = {});

  /// Initializes from labeled data and, for kRetrainAll, retains that data.
  static StreamEngine from_labeled(std::span<const LabeledPoint> init, const HyperParams& params,
                                   std::uint64_t seed, EngineOptions options = {});

  /// Classifies x, then updates a footprint or buffers x and tries discovery.
  StreamOutput process_point(std::span<const double> x);

  const Model& model() const noexcept { return model_; }
  const OutlierBuffer& buffer() const noexcept { return buffer_; }
  const EngineOptions& options() const noexcept { return options_; }

  std::size_t points_seen() const noexcept { return next_index_; }
  std::size_t classified_count() const noexcept { return classified_; }
  std::size_t absorbed_count() const noexcept { return absorbed_; }
  std::size_t evicted_count() const noexcept { return evicted_; }

 private:
  void update(ClassId cls, std::span<const double> x, double typicality);

  Model model_;
  EngineOptions options_;
  OutlierBuffer buffer_;
  std::map<ClassId, std::vector<FeatureVector>> retained_;
  std::size_t next_index_ = 0;
  std::size_t classified_ = 0;
  std::size_t absorbed_ = 0;
  std::size_t evicted_ = 0;
};

struct RelabelEntry {
  std::size_t index;
  ClassId old_label;
  ClassId new_label;
};

struct StreamRun {
  std::vector<StreamOutput> outputs;
  std::vector<ClassId> labels;  // final labels after retroactive relabeling
  std::vector<RelabelEntry> relabels;
};

/// Runs every point through the engine. Failures are rethrown as StreamError
/// carrying the stream index.
StreamRun run_stream(StreamEngine& engine, std::span<const FeatureVector> stream);

/// {index, label, event, typicality:{class: value}} plus new_class/absorbed when present.
nlohmann::json output_to_json(const StreamOutput& out);
nlohmann::json relabels_to_json(std::span<const RelabelEntry> relabels);

}  // namespace streamsong
