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

#include "streamsong/stream_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "streamsong/neural_gas.hpp"
#include "streamsong/possibilistic.hpp"
#include "streamsong/sp1m.hpp"

namespace streamsong {

std::string to_string(UpdateStrategy s) {
  switch (s) {
    case UpdateStrategy::kKnnIncremental: return "knn_incremental";
    case UpdateStrategy::kRetrainAll: return "retrain_all";
    case UpdateStrategy::kRetrainProtosPlusPoint: return "retrain_protos";
  }
  return "unknown";
}

std::string to_string(UpdateGain g) {
  return g == UpdateGain::kClass ? "class" : "prototype";
}

UpdateGain parse_update_gain(const std::string& s) {
  if (s == "class") return UpdateGain::kClass;
  if (s == "prototype") return UpdateGain::kPrototype;
  throw ArgumentError("unknown update gain '" + s + "'");
}

UpdateStrategy parse_update_strategy(const std::string& s) {
  if (s == "knn_incremental" || s == "knn") return UpdateStrategy::kKnnIncremental;
  if (s == "retrain_all") return UpdateStrategy::kRetrainAll;
  if (s == "retrain_protos") return UpdateStrategy::kRetrainProtosPlusPoint;
  throw ArgumentError("unknown update strategy '" + s + "'");
}

std::string to_string(EventKind e) {
  switch (e) {
    case EventKind::kClassified: return "CLASSIFIED";
    case EventKind::kOutlierBuffered: return "OUTLIER_BUFFERED";
    case EventKind::kNewClassCreated: return "NEW_CLASS_CREATED";
  }
  return "UNKNOWN";
}

double StreamOutput::max_typicality() const { return argmax(typicality).second; }

std::optional<std::size_t> OutlierBuffer::push(FeatureVector x, std::size_t stream_index) {
  if (!entries.empty() && entries.back().stream_index >= stream_index) {
    throw StateError("outlier buffer indices must increase");
  }
  entries.push_back({std::move(x), stream_index});
  if (capacity && entries.size() > *capacity) {
    const std::size_t evicted = entries.front().stream_index;
    entries.pop_front();
    return evicted;
  }
  return std::nullopt;
}

namespace {

std::vector<FeatureVector> positions_of(const ClassFootprint& fp) {
  std::vector<FeatureVector> out;
  out.reserve(fp.prototypes.size());
  for (const auto& p : fp.prototypes) out.push_back(p.position);
  return out;
}

void refresh_eta(Model& model, ClassId cls) {
  auto& fp = model.footprint(cls);
  fp.eta = estimate_eta(fp, model, static_cast<std::size_t>(model.params().k_eta));
}

void retrain(Model& model, ClassId cls, std::span<const FeatureVector> data, std::size_t n) {
  const std::uint64_t seed = model.rng()();
  model.set_positions(cls, train_ng(data, n, model.params().ng, seed));
  refresh_eta(model, cls);
  ++model.footprint(cls).update_count;
}

}  // namespace

Model initialize(std::span<const LabeledPoint> init, const HyperParams& params, std::uint64_t seed) {
  if (init.empty()) throw ArgumentError("initialize: no labeled points");
  const std::size_t dim = init.front().x.size();
  std::map<ClassId, std::vector<FeatureVector>> by_class;
  for (const auto& lp : init) {
    if (lp.label == kOutlier || to_int(lp.label) < 0) throw ArgumentError("initialize: invalid label");
    check_feature(lp.x, dim);
    by_class[lp.label].push_back(lp.x);
  }

  Model model(dim, params, seed);
  const auto n = static_cast<std::size_t>(params.n_neurons_per_class);
  for (const auto& [cls, points] : by_class) {
    const std::uint64_t ng_seed = model.rng()();
    model.add_footprint(cls, train_ng(points, n, params.ng, ng_seed), 1.0, 0);
  }
  // Classes that can define their own eta go first so the fallback sees them.
  const auto k_eta = static_cast<std::size_t>(params.k_eta);
  std::vector<ClassId> deferred;
  for (ClassId cls : model.class_ids()) {
    auto& fp = model.footprint(cls);
    if (auto eta = mean_neighbor_distance(positions_of(fp), k_eta)) {
      fp.eta = *eta;
    } else {
      deferred.push_back(cls);
    }
  }
  std::map<ClassId, double> fallback;
  for (ClassId cls : deferred) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& [other, fp] : model.footprints()) {
      if (std::find(deferred.begin(), deferred.end(), other) != deferred.end()) continue;
      sum += fp.eta;
      ++count;
    }
    fallback[cls] = count > 0 ? sum / static_cast<double>(count) : 1.0;
  }
  for (const auto& [cls, eta] : fallback) model.footprint(cls).eta = eta;
  return model;
}

namespace {

// Moves the nearest `ranks` prototypes of `cls` toward x; gain(d2) supplies the
// per-prototype typicality factor.
template <typename Gain>
void knn_step(Model& model, ClassId cls, std::span<const double> x, std::size_t rank_cutoff,
              Gain gain_of) {
  auto& fp = model.footprint(cls);
  check_feature(x, model.dimension());
  const std::size_t n = fp.prototypes.size();
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(fp.prototypes[i].position, x);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (d2[a] != d2[b]) return d2[a] < d2[b];
    return fp.prototypes[a].id < fp.prototypes[b].id;
  });

  const double alpha = model.params().learning_rate;
  const double lambda = model.params().neighborhood;
  const std::size_t ranks = std::min(rank_cutoff, n);
  for (std::size_t r = 0; r < ranks; ++r) {
    const double gain =
        alpha * gain_of(d2[order[r]]) * std::exp(-static_cast<double>(r + 1) / lambda);
    auto& p = fp.prototypes[order[r]].position;
    for (std::size_t d = 0; d < p.size(); ++d) p[d] += gain * (x[d] - p[d]);
  }
  refresh_eta(model, cls);
  ++fp.update_count;
}

}  // namespace

void update_footprint_knn(Model& model, ClassId cls, std::span<const double> x, double typicality,
                          std::size_t rank_cutoff) {
  if (!(typicality >= 0.0 && typicality <= 1.0)) throw ArgumentError("typicality outside [0, 1]");
  knn_step(model, cls, x, rank_cutoff, [typicality](double) { return typicality; });
}

void update_footprint_knn_local(Model& model, ClassId cls, std::span<const double> x,
                                std::size_t rank_cutoff) {
  const double eta = model.footprint(cls).eta;
  const double m = model.params().fuzzifier;
  knn_step(model, cls, x, rank_cutoff, [eta, m](double d2) { return pcm_typicality(d2, eta, m); });
}

void update_footprint_retrain_all(Model& model, ClassId cls, std::vector<FeatureVector>& retained,
                                  std::span<const double> x) {
  check_feature(x, model.dimension());
  retained.emplace_back(x.begin(), x.end());
  retrain(model, cls, retained, static_cast<std::size_t>(model.params().n_neurons_per_class));
}

void update_footprint_retrain_protos(Model& model, ClassId cls, std::span<const double> x) {
  check_feature(x, model.dimension());
  auto data = positions_of(model.footprint(cls));
  const std::size_t n = data.size();
  data.emplace_back(x.begin(), x.end());
  retrain(model, cls, data, n);
}

std::optional<Discovery> discover(Model& model, OutlierBuffer& buffer, std::size_t stream_index) {
  const HyperParams& hp = model.params();
  const auto min_points = static_cast<std::size_t>(hp.min_new_class_points);
  // The absorbed set is a subset of the buffer and must exceed M.
  if (buffer.size() <= min_points) return std::nullopt;

  std::vector<FeatureVector> points;
  points.reserve(buffer.size());
  for (const auto& e : buffer.entries) points.push_back(e.x);

  std::vector<ClusterRegion> existing;
  for (const auto& [cls, fp] : model.footprints()) {
    for (const auto& p : fp.prototypes) existing.push_back({p.position, fp.eta});
  }
  const auto found = sp1m(points, 1, static_cast<std::size_t>(hp.p1m_restarts), hp.fuzzifier,
                          hp.p1m_conv_tol, hp.p1m_max_iter, model.rng(), existing, hp.p1m_eta_scale);
  if (found.empty()) return std::nullopt;

  const auto& typ = found.front().typicalities;
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < typ.size(); ++j) {
    if (typ[j] > 0.5) members.push_back(j);
  }
  if (members.size() <= min_points) return std::nullopt;

  Discovery d;
  d.cls = model.next_class_id();
  for (std::size_t j : members) {
    d.absorbed.push_back(buffer.entries[j].stream_index);
    d.absorbed_points.push_back(points[j]);
  }
  const std::uint64_t ng_seed = model.rng()();
  auto& fp = model.add_footprint(
      d.cls,
      train_ng(d.absorbed_points, static_cast<std::size_t>(hp.n_neurons_per_class), hp.ng, ng_seed),
      1.0, stream_index);
  fp.eta = estimate_eta(fp, model, static_cast<std::size_t>(hp.k_eta));

  std::deque<OutlierBuffer::Entry> kept;
  std::size_t next = 0;
  for (std::size_t j = 0; j < buffer.entries.size(); ++j) {
    if (next < members.size() && members[next] == j) {
      ++next;
      continue;
    }
    kept.push_back(std::move(buffer.entries[j]));
  }
  buffer.entries = std::move(kept);
  return d;
}

std::vector<TypicalityVector> probe_typicalities(const Model& model,
                                                 std::span<const FeatureVector> probes) {
  std::vector<TypicalityVector> out;
  out.reserve(probes.size());
  for (const auto& probe : probes) {
    check_feature(probe, model.dimension());
    out.push_back(class_typicalities(probe, model));
  }
  return out;
}

StreamEngine::StreamEngine(Model model, EngineOptions options)
    : model_(std::move(model)), options_(std::move(options)) {
  if (model_.empty()) throw StateError("stream engine needs an initialized model");
  buffer_.capacity = options_.buffer_capacity;
  for (const auto& probe : options_.probes) check_feature(probe, model_.dimension());
}

StreamEngine StreamEngine::from_labeled(std::span<const LabeledPoint> init, const HyperParams& params,
                                        std::uint64_t seed, EngineOptions options) {
  StreamEngine engine(initialize(init, params, seed), std::move(options));
  if (engine.options_.strategy == UpdateStrategy::kRetrainAll) {
    for (const auto& lp : init) engine.retained_[lp.label].push_back(lp.x);
  }
  return engine;
}

void StreamEngine::update(ClassId cls, std::span<const double> x, double typicality) {
  switch (options_.strategy) {
    case UpdateStrategy::kKnnIncremental: {
      const std::size_t cutoff =
          options_.rank_cutoff.value_or(static_cast<std::size_t>(model_.params().k_query));
      if (options_.gain == UpdateGain::kPrototype) {
        update_footprint_knn_local(model_, cls, x, cutoff);
      } else {
        update_footprint_knn(model_, cls, x, typicality, cutoff);
      }
      break;
    }
    case UpdateStrategy::kRetrainAll: {
      auto [it, inserted] = retained_.try_emplace(cls);
      // Without retained history the prototypes are the best available summary.
      if (inserted) it->second = positions_of(model_.footprint(cls));
      update_footprint_retrain_all(model_, cls, it->second, x);
      break;
    }
    case UpdateStrategy::kRetrainProtosPlusPoint:
      update_footprint_retrain_protos(model_, cls, x);
      break;
  }
}

StreamOutput StreamEngine::process_point(std::span<const double> x) {
  check_feature(x, model_.dimension());
  StreamOutput out;
  out.stream_index = next_index_++;
  out.typicality = class_typicalities(x, model_);
  const auto [best, value] = argmax(out.typicality);

  if (value > model_.params().typicality_threshold) {
    out.label = best;
    out.event = EventKind::kClassified;
    update(best, x, value);
    ++classified_;
  } else {
    out.label = kOutlier;
    out.event = EventKind::kOutlierBuffered;
    if (buffer_.push(FeatureVector(x.begin(), x.end()), out.stream_index)) ++evicted_;
    if (auto found = discover(model_, buffer_, out.stream_index)) {
      out.event = EventKind::kNewClassCreated;
      out.new_class = found->cls;
      out.absorbed = found->absorbed;
      absorbed_ += found->absorbed.size();
      if (options_.strategy == UpdateStrategy::kRetrainAll) {
        retained_[found->cls] = std::move(found->absorbed_points);
      }
    }
  }

  if (!options_.probes.empty()) out.probes = probe_typicalities(model_, options_.probes);
  return out;
}

StreamRun run_stream(StreamEngine& engine, std::span<const FeatureVector> stream) {
  StreamRun run;
  run.outputs.reserve(stream.size());
  run.labels.reserve(stream.size());
  const std::size_t base = engine.points_seen();
  for (std::size_t i = 0; i < stream.size(); ++i) {
    StreamOutput out;
    try {
      out = engine.process_point(stream[i]);
    } catch (const StreamError&) {
      throw;
    } catch (const std::exception& e) {
      throw StreamError(base + i, e.what());
    }
    run.labels.push_back(out.label);
    if (out.event == EventKind::kNewClassCreated) {
      for (std::size_t idx : out.absorbed) {
        if (idx < base) continue;
        auto& label = run.labels.at(idx - base);
        run.relabels.push_back({idx, label, *out.new_class});
        label = *out.new_class;
      }
    }
    run.outputs.push_back(std::move(out));
  }
  return run;
}

namespace {

nlohmann::json label_json(ClassId c) {
  if (c == kOutlier) return "OUTLIER";
  return to_int(c);
}

}  // namespace

nlohmann::json output_to_json(const StreamOutput& out) {
  nlohmann::json typ = nlohmann::json::object();
  for (const auto& [cls, v] : out.typicality) typ[to_string(cls)] = v;
  nlohmann::json j = {{"index", out.stream_index},
                      {"label", label_json(out.label)},
                      {"event", to_string(out.event)},
                      {"typicality", std::move(typ)}};
  if (out.new_class) {
    j["new_class"] = to_int(*out.new_class);
    j["absorbed"] = out.absorbed;
  }
  return j;
}

nlohmann::json relabels_to_json(std::span<const RelabelEntry> relabels) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : relabels) {
    arr.push_back({{"index", r.index}, {"old", label_json(r.old_label)}, {"new", label_json(r.new_label)}});
  }
  return arr;
}

}  // namespace streamsong
