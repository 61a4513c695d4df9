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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "streamsong/core.hpp"
#include "streamsong/stream_engine.hpp"

namespace streamsong::tools {

enum ExitCode : int { kOk = 0, kUsage = 2, kDataError = 3, kRuntimeError = 4 };

/// Everything a `run` needs. Every field has a default; `validate` runs before any work.
struct RunConfig {
  HyperParams params;
  std::uint64_t seed = 1;

  // Input: a synthetic benchmark, or labeled CSV files.
  std::optional<int> dataset = 1;
  std::size_t points_per_init_class = 200;
  std::size_t points_per_stream_segment = 200;
  bool interleave_new_classes = false;
  std::optional<std::filesystem::path> init_csv;
  std::optional<std::filesystem::path> stream_csv;
  bool stream_has_labels = true;
  bool csv_header = false;

  UpdateStrategy strategy = UpdateStrategy::kKnnIncremental;
  UpdateGain gain = UpdateGain::kPrototype;
  std::optional<std::size_t> rank_cutoff;  // 0 in files and flags means every prototype
  std::optional<std::size_t> buffer_capacity;

  bool shuffle = false;
  std::optional<std::uint64_t> shuffle_seed;  // seed + 1000 when unset

  std::vector<FeatureVector> probes;
  double confidence_threshold = 0.2;
  std::filesystem::path out_dir = "out";

  void validate() const;
  std::uint64_t effective_shuffle_seed() const { return shuffle_seed.value_or(seed + 1000); }
};

/// Fully materialized, suitable for reproducing a run.
nlohmann::json config_to_json(const RunConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);

/// Parses "x,y,..." into a feature vector. Throws ArgumentError.
FeatureVector parse_point(const std::string& s);

/// Reads one label per line ("OUTLIER" or an integer). Throws IoError/ParseError.
std::vector<ClassId> read_labels(const std::filesystem::path& path);
std::vector<double> read_values(const std::filesystem::path& path);

/// Entry point shared by the binary and the tests. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace streamsong::tools
