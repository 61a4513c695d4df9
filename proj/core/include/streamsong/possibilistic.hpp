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
#include <optional>
#include <span>

#include "streamsong/core.hpp"

namespace streamsong {

/// Fuzzy class membership of one prototype, keyed by class.
using FuzzyMembershipVector = std::map<ClassId, double>;

/// Mean distance from each prototype to its `k_eta` nearest siblings (self excluded).
/// `k_eta` is clamped to n - 1. Returns nullopt for fewer than two prototypes
/// or when every sibling distance is zero.
std::optional<double> mean_neighbor_distance(std::span<const FeatureVector> positions,
                                             std::size_t k_eta);

/// Region-of-influence scale of a class footprint. Falls back to the mean eta of
/// the other classes in `model` (or 1.0 if there are none) when the footprint
/// cannot define one on its own.
double estimate_eta(const ClassFootprint& footprint, const Model& model, std::size_t k_eta);

/// Class memberships of prototype `p` from the labels of its `k` nearest
/// prototypes in `model` (p excluded): 0.51 + 0.49 * n_i / k for its own class,
/// 0.49 * n_i / k otherwise. When fewer than k other prototypes exist, k shrinks
/// to the available count. Every class of the model gets an entry.
FuzzyMembershipVector prototype_fuzzy_membership(const Prototype& p, const Model& model,
                                                 std::size_t k);

/// Possibilistic typicality 1 / (1 + (d2 / eta)^(1 / (m - 1))).
double pcm_typicality(double d_squared, double eta, double m);

/// Maps an averaged typicality onto [0, 1]: 0 below 0, 2t - t^2 on (0, 1], 1 above.
double scale_typicality(double t_bar);

/// Possibilistic K-NN class typicalities of `x`, using the model's k_query and fuzzifier.
///
/// Each of the K nearest prototypes contributes its raw typicality (computed
/// with the eta of its own class) weighted by its fuzzy membership in each
/// class; contributions are averaged over K and passed through scale_typicality.
TypicalityVector class_typicalities(std::span<const double> x, const Model& model);

/// Same with explicit K and fuzzifier.
TypicalityVector class_typicalities(std::span<const double> x, const Model& model,
                                    std::size_t k_query, double m);

/// Reference two-parameter PKNN weight 1 / (1 + max(0, (d - eta1) / eta2)^(2 / (m - 1))).
/// Not used by the streaming path.
double pknn_reference_weight(double d, double eta1, double eta2, double m);

}  // namespace streamsong
