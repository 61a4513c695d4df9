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

#include "streamsong/datasets.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

namespace streamsong {

void BenchmarkSpec::validate() const {
  if (dataset_id < 1 || dataset_id > 4) {
    throw ArgumentError("dataset_id must be 1..4, got " + std::to_string(dataset_id));
  }
  if (points_per_init_class == 0 || points_per_stream_segment == 0) {
    throw ArgumentError("benchmark point counts must be positive");
  }
}

std::vector<FeatureVector> LabeledStream::stream_points() const {
  std::vector<FeatureVector> out;
  out.reserve(stream.size());
  for (const auto& lp : stream) out.push_back(lp.x);
  return out;
}

std::vector<ClassId> LabeledStream::stream_labels() const {
  std::vector<ClassId> out;
  out.reserve(stream.size());
  for (const auto& lp : stream) out.push_back(lp.label);
  return out;
}

std::vector<FeatureVector> gen_gaussian_class(std::span<const double> mean,
                                              std::span<const double> cov_diag, std::size_t n,
                                              Rng& rng) {
  if (mean.size() != cov_diag.size()) throw DimensionError("mean and covariance sizes differ");
  for (double v : cov_diag) {
    if (!(v > 0.0)) throw ArgumentError("variances must be > 0");
  }
  std::vector<FeatureVector> out(n, FeatureVector(mean.size()));
  for (auto& x : out) {
    for (std::size_t d = 0; d < mean.size(); ++d) {
      x[d] = mean[d] + std::sqrt(cov_diag[d]) * standard_normal(rng);
    }
  }
  return out;
}

std::vector<FeatureVector> gen_ring_class(std::span<const double> center, double radius,
                                          double radial_sigma, std::size_t n, Rng& rng) {
  if (center.size() != 2) throw DimensionError("ring classes are two-dimensional");
  if (!(radius > 0.0) || radial_sigma < 0.0) throw ArgumentError("invalid ring parameters");
  std::vector<FeatureVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * uniform01(rng);
    const double r = radius + radial_sigma * standard_normal(rng);
    out.push_back({center[0] + r * std::cos(angle), center[1] + r * std::sin(angle)});
  }
  return out;
}

BenchmarkLayout benchmark_layout(int dataset_id) {
  using Def = BenchmarkLayout::ClassDef;
  switch (dataset_id) {
    case 1:
      return {{Def{{10, 10}, 4}, Def{{20, 20}, 4}, Def{{30, 30}, 4}},
              {Def{{40, 40}, 4}, Def{{50, 50}, 4}}};
    case 2:
      return {{Def{{10, 10}, 15}, Def{{20, 20}, 15}, Def{{30, 30}, 15}},
              {Def{{40, 40}, 15}, Def{{50, 50}, 15}}};
    case 3:
      return {{Def{{10, 20}, 5}, Def{{20, 30}, 5}, Def{{30, 20}, 5}},
              {Def{{20, 10}, 5}, Def{{20, 20}, 5}}};
    case 4:
      return {{Def{{10, 20}, 0, 10}, Def{{20, 15}, 0, 10}}, {Def{{40, 30}, 10}}};
    default:
      throw ArgumentError("dataset_id must be 1..4, got " + std::to_string(dataset_id));
  }
}

namespace {

constexpr double kRingRadialSigma = 1.0;

std::vector<FeatureVector> sample_class(const BenchmarkLayout::ClassDef& def, std::size_t n, Rng& rng) {
  if (def.ring_radius > 0.0) return gen_ring_class(def.center, def.ring_radius, kRingRadialSigma, n, rng);
  const std::vector<double> cov(def.center.size(), def.variance);
  return gen_gaussian_class(def.center, cov, n, rng);
}

void append_shuffled(std::vector<LabeledPoint>& dst, std::vector<LabeledPoint> src, Rng& rng) {
  for (std::size_t i : random_permutation(rng, src.size())) dst.push_back(std::move(src[i]));
}

}  // namespace

LabeledStream make_benchmark(const BenchmarkSpec& spec) {
  spec.validate();
  const BenchmarkLayout layout = benchmark_layout(spec.dataset_id);
  Rng rng(spec.seed);
  LabeledStream s;

  for (std::size_t c = 0; c < layout.known.size(); ++c) {
    for (auto& x : sample_class(layout.known[c], spec.points_per_init_class, rng)) {
      s.init.push_back({std::move(x), ClassId{static_cast<std::int64_t>(c)}});
    }
  }

  std::vector<LabeledPoint> known;
  for (std::size_t c = 0; c < layout.known.size(); ++c) {
    for (auto& x : sample_class(layout.known[c], spec.points_per_stream_segment, rng)) {
      known.push_back({std::move(x), ClassId{static_cast<std::int64_t>(c)}});
    }
  }
  append_shuffled(s.stream, std::move(known), rng);

  std::vector<LabeledPoint> novel;
  for (std::size_t j = 0; j < layout.novel.size(); ++j) {
    const ClassId id{static_cast<std::int64_t>(layout.known.size() + j)};
    s.new_class_ids.push_back(id);
    for (auto& x : sample_class(layout.novel[j], spec.points_per_stream_segment, rng)) {
      novel.push_back({std::move(x), id});
    }
  }
  if (spec.interleave_new_classes) {
    append_shuffled(s.stream, std::move(novel), rng);
  } else {
    for (auto& lp : novel) s.stream.push_back(std::move(lp));
  }
  return s;
}

LabeledStream shuffle_stream(const LabeledStream& s, Rng& rng) {
  LabeledStream out;
  out.init = s.init;
  out.new_class_ids = s.new_class_ids;
  out.stream.reserve(s.stream.size());
  for (std::size_t i : random_permutation(rng, s.stream.size())) out.stream.push_back(s.stream[i]);
  return out;
}

namespace {

std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
  return v;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_double(std::string_view cell, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw ParseError("non-numeric cell '" + std::string(cell) + "'", line);
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

FeatureTable load_features_csv(const std::filesystem::path& path, bool has_labels, bool has_header) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  FeatureTable table;
  if (has_labels) table.labels.emplace();
  std::optional<std::size_t> columns;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (has_header && line_no == 1) continue;
    const auto cells = split_commas(line);
    if (!columns) {
      columns = cells.size();
      if (has_labels && *columns < 2) throw ParseError("labeled rows need a feature and a label", line_no);
    } else if (cells.size() != *columns) {
      throw ParseError("expected " + std::to_string(*columns) + " columns, found " +
                           std::to_string(cells.size()),
                       line_no);
    }
    const std::size_t n_features = has_labels ? cells.size() - 1 : cells.size();
    FeatureVector x(n_features);
    for (std::size_t d = 0; d < n_features; ++d) x[d] = parse_double(cells[d], line_no);
    if (has_labels) {
      const std::string_view cell = cells.back();
      long long id = 0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), id);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || id < 0) {
        throw ParseError("invalid class label '" + std::string(cell) + "'", line_no);
      }
      table.labels->push_back(ClassId{id});
    }
    table.points.push_back(std::move(x));
  }
  if (table.points.empty()) throw ParseError("'" + path.string() + "' contains no rows");
  return table;
}

void write_features_csv(const std::filesystem::path& path, std::span<const LabeledPoint> rows) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  for (const auto& lp : rows) {
    for (double v : lp.x) os << format_double(v) << ',';
    os << to_int(lp.label) << '\n';
  }
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

nlohmann::json benchmark_manifest(const BenchmarkSpec& spec, const LabeledStream& s) {
  const BenchmarkLayout layout = benchmark_layout(spec.dataset_id);
  std::map<std::string, std::size_t> init_counts;
  std::map<std::string, std::size_t> stream_counts;
  for (const auto& lp : s.init) ++init_counts[to_string(lp.label)];
  for (const auto& lp : s.stream) ++stream_counts[to_string(lp.label)];

  nlohmann::json means = nlohmann::json::object();
  nlohmann::json kinds = nlohmann::json::object();
  std::size_t c = 0;
  for (const auto* group : {&layout.known, &layout.novel}) {
    for (const auto& def : *group) {
      means[std::to_string(c)] = def.center;
      kinds[std::to_string(c)] = def.ring_radius > 0.0 ? "ring" : "gaussian";
      ++c;
    }
  }
  nlohmann::json new_ids = nlohmann::json::array();
  for (ClassId id : s.new_class_ids) new_ids.push_back(to_int(id));

  return {
      {"dataset_id", spec.dataset_id},
      {"seed", spec.seed},
      {"points_per_init_class", spec.points_per_init_class},
      {"points_per_stream_segment", spec.points_per_stream_segment},
      {"interleave_new_classes", spec.interleave_new_classes},
      {"init_classes", layout.known.size()},
      {"new_class_ids", std::move(new_ids)},
      {"counts", {{"init", init_counts}, {"stream", stream_counts}}},
      {"class_means", std::move(means)},
      {"class_kinds", std::move(kinds)},
  };
}

}  // namespace streamsong
