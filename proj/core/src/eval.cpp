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

#include "streamsong/eval.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <tuple>

namespace streamsong {

ClassId LabelAlignment::map(ClassId predicted) const {
  const auto it = mapping.find(predicted);
  return it == mapping.end() ? kOutlier : it->second;
}

bool LabelAlignment::instantiates(ClassId truth) const {
  return std::any_of(mapping.begin(), mapping.end(),
                     [truth](const auto& kv) { return kv.second == truth; });
}

LabelAlignment align_labels(std::span<const ClassId> pred, std::span<const ClassId> truth) {
  if (pred.size() != truth.size()) throw ArgumentError("align_labels: length mismatch");
  std::map<std::pair<ClassId, ClassId>, std::size_t> counts;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == kOutlier) continue;
    ++counts[{pred[i], truth[i]}];
  }
  std::vector<std::tuple<std::size_t, ClassId, ClassId>> pairs;
  for (const auto& [key, n] : counts) pairs.emplace_back(n, key.first, key.second);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });

  LabelAlignment out;
  std::set<ClassId> used_truth;
  for (const auto& [n, p, t] : pairs) {
    if (out.mapping.contains(p) || used_truth.contains(t)) continue;
    out.mapping.emplace(p, t);
    used_truth.insert(t);
  }
  return out;
}

namespace {

bool correct(ClassId pred, ClassId truth, const LabelAlignment& alignment) {
  if (pred == kOutlier) return !alignment.instantiates(truth);
  return alignment.map(pred) == truth;
}

}  // namespace

double precision(std::span<const ClassId> pred, std::span<const ClassId> truth,
                 const LabelAlignment& alignment) {
  if (pred.size() != truth.size()) {
    throw ArgumentError("precision: " + std::to_string(pred.size()) + " predictions vs " +
                        std::to_string(truth.size()) + " ground-truth labels");
  }
  if (pred.empty()) throw ArgumentError("precision: empty label vectors");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += correct(pred[i], truth[i], alignment);
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

ConfidentPrecision confident_precision(std::span<const ClassId> pred,
                                       std::span<const ClassId> truth,
                                       std::span<const double> max_typicality,
                                       const LabelAlignment& alignment, double threshold) {
  if (pred.size() != truth.size() || pred.size() != max_typicality.size()) {
    throw ArgumentError("confident_precision: length mismatch");
  }
  std::size_t kept = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!(max_typicality[i] > threshold)) continue;
    ++kept;
    hits += correct(pred[i], truth[i], alignment);
  }
  if (kept == 0) return {1.0, 0.0};
  return {static_cast<double>(hits) / static_cast<double>(kept),
          static_cast<double>(kept) / static_cast<double>(pred.size())};
}

ProbeTable probe_series(std::span<const StreamOutput> outputs) {
  ProbeTable table;
  if (outputs.empty()) return table;
  table.probe_count = outputs.front().probes.size();
  if (table.probe_count == 0) return table;
  for (const auto& out : outputs) {
    if (out.probes.size() != table.probe_count) throw ArgumentError("probe_series: ragged probe output");
    std::vector<double> row;
    row.reserve(table.probe_count);
    for (const auto& t : out.probes) row.push_back(argmax(t).second);
    table.stream_index.push_back(out.stream_index);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_probe_csv(std::ostream& os, const ProbeTable& table) {
  os << "stream_index";
  for (std::size_t p = 0; p < table.probe_count; ++p) os << ",probe_" << p;
  os << '\n';
  const auto old_precision = os.precision(17);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << table.stream_index[r];
    for (double v : table.rows[r]) os << ',' << v;
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace streamsong
