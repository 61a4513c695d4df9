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

#include <nlohmann/json.hpp>

#include "streamsong/core.hpp"

namespace streamsong {

/// Schema version written into every model file.
inline constexpr int kModelFormatVersion = 1;

nlohmann::json hyperparams_to_json(const HyperParams& p);
/// Missing keys keep their defaults.
HyperParams hyperparams_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

void save_model(const Model& model, const std::filesystem::path& path);

/// Loads a model file. When `expected_dimension` is given and differs from the
/// file's dimension a DimensionError is thrown.
Model load_model(const std::filesystem::path& path,
                 std::optional<std::size_t> expected_dimension = std::nullopt);

}  // namespace streamsong
