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


#include "streamsong_tools/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "streamsong/datasets.hpp"
#include "streamsong/eval.hpp"
#include "streamsong/persistence.hpp"
#include "streamsong/sp1m.hpp"

namespace streamsong::tools {

namespace fs = std::filesystem;
using nlohmann::json;

void RunConfig::validate() const {
  params.validate();
  if (init_csv.has_value() != stream_csv.has_value()) {
    throw ArgumentError("init_csv and stream_csv must be given together");
  }
  if (!init_csv && !dataset) throw ArgumentError("no input: set dataset or init_csv/stream_csv");
  if (!init_csv) {
    BenchmarkSpec spec;
    spec.dataset_id = *dataset;
    spec.points_per_init_class = points_per_init_class;
    spec.points_per_stream_segment = points_per_stream_segment;
    spec.validate();
  }
  if (!(confidence_threshold >= 0.0 && confidence_threshold <= 1.0)) {
    throw ArgumentError("confidence_threshold must lie in [0, 1]");
  }
  if (buffer_capacity && *buffer_capacity == 0) throw ArgumentError("buffer_capacity must be > 0");
  for (const auto& p : probes) {
    if (p.empty()) throw ArgumentError("empty probe point");
    if (!std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); })) {
      throw ArgumentError("probe coordinates must be finite");
    }
  }
}

namespace {

template <typename T>
void read_if(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

template <typename T>
void read_opt(const json& j, const char* key, std::optional<T>& dst) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    dst.reset();
  } else {
    dst = j.at(key).get<T>();
  }
}

template <typename T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json path_json(const std::optional<fs::path>& p) { return p ? json(p->string()) : json(nullptr); }

}  // namespace

json config_to_json(const RunConfig& c) {
  return {
      {"hyperparams", hyperparams_to_json(c.params)},
      {"seed", c.seed},
      {"dataset", opt_json(c.dataset)},
      {"points_per_init_class", c.points_per_init_class},
      {"points_per_stream_segment", c.points_per_stream_segment},
      {"interleave_new_classes", c.interleave_new_classes},
      {"init_csv", path_json(c.init_csv)},
      {"stream_csv", path_json(c.stream_csv)},
      {"stream_has_labels", c.stream_has_labels},
      {"csv_header", c.csv_header},
      {"update_strategy", to_string(c.strategy)},
      {"update_gain", to_string(c.gain)},
      {"rank_cutoff", c.rank_cutoff ? json(*c.rank_cutoff) : json(c.params.k_query)},
      {"buffer_capacity", opt_json(c.buffer_capacity)},
      {"shuffle", c.shuffle},
      {"shuffle_seed", c.effective_shuffle_seed()},
      {"probes", c.probes},
      {"confidence_threshold", c.confidence_threshold},
      {"out_dir", c.out_dir.string()},
  };
}

RunConfig config_from_json(const json& j) {
  static const std::vector<std::string> known = {
      "hyperparams", "seed", "dataset", "points_per_init_class", "points_per_stream_segment",
      "interleave_new_classes", "init_csv", "stream_csv", "stream_has_labels", "csv_header",
      "update_strategy", "update_gain", "rank_cutoff", "buffer_capacity", "shuffle",
      "shuffle_seed", "probes", "confidence_threshold", "out_dir"};
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ArgumentError("unknown config key '" + key + "'");
    }
  }
  RunConfig c;
  try {
    if (j.contains("hyperparams")) c.params = hyperparams_from_json(j.at("hyperparams"));
    read_if(j, "seed", c.seed);
    read_opt(j, "dataset", c.dataset);
    read_if(j, "points_per_init_class", c.points_per_init_class);
    read_if(j, "points_per_stream_segment", c.points_per_stream_segment);
    read_if(j, "interleave_new_classes", c.interleave_new_classes);
    std::optional<std::string> path;
    read_opt(j, "init_csv", path);
    if (path) c.init_csv = *path;
    path.reset();
    read_opt(j, "stream_csv", path);
    if (path) c.stream_csv = *path;
    read_if(j, "stream_has_labels", c.stream_has_labels);
    read_if(j, "csv_header", c.csv_header);
    if (j.contains("update_strategy")) {
      c.strategy = parse_update_strategy(j.at("update_strategy").get<std::string>());
    }
    if (j.contains("update_gain")) c.gain = parse_update_gain(j.at("update_gain").get<std::string>());
    read_opt(j, "rank_cutoff", c.rank_cutoff);
    read_opt(j, "buffer_capacity", c.buffer_capacity);
    read_if(j, "shuffle", c.shuffle);
    read_opt(j, "shuffle_seed", c.shuffle_seed);
    read_if(j, "probes", c.probes);
    read_if(j, "confidence_threshold", c.confidence_threshold);
    std::string out;
    read_if(j, "out_dir", out);
    if (!out.empty()) c.out_dir = out;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad config value: ") + e.what());
  }
  return c;
}

FeatureVector parse_point(const std::string& s) {
  FeatureVector p;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(',', start), s.size());
    const std::string cell = s.substr(start, end - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
      throw ArgumentError("bad point '" + s + "'");
    }
    p.push_back(v);
    start = end + 1;
  }
  return p;
}

namespace {

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

}  // namespace

std::vector<ClassId> read_labels(const fs::path& path) {
  auto in = open_in(path);
  std::vector<ClassId> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty()) continue;
    try {
      out.push_back(parse_class_id(line));
    } catch (const Error& e) {
      throw ParseError(path.string() + ": " + e.what(), n);
    }
  }
  return out;
}

std::vector<double> read_values(const fs::path& path) {
  auto in = open_in(path);
  std::vector<double> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty()) continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size() || !std::isfinite(v)) {
      throw ParseError(path.string() + ": bad value '" + line + "'", n);
    }
    out.push_back(v);
  }
  return out;
}

namespace {

void write_lines(const fs::path& path, const std::vector<ClassId>& labels) {
  auto out = open_out(path);
  for (ClassId c : labels) out << to_string(c) << '\n';
}

json metrics_json(std::span<const ClassId> pred, std::span<const ClassId> truth,
                  std::span<const double> max_typ, double threshold,
                  std::size_t n_discovered) {
  const LabelAlignment al = align_labels(pred, truth);
  json j = {{"precision", precision(pred, truth, al)}, {"n_classes_discovered", n_discovered}};
  if (!max_typ.empty()) {
    const auto cp = confident_precision(pred, truth, max_typ, al, threshold);
    j["confident_precision"] = cp.precision;
    j["coverage"] = cp.coverage;
  } else {
    j["confident_precision"] = nullptr;
    j["coverage"] = nullptr;
  }
  json mapping = json::object();
  for (const auto& [p, t] : al.mapping) mapping[to_string(p)] = to_int(t);
  j["alignment"] = std::move(mapping);
  return j;
}

struct Inputs {
  std::vector<LabeledPoint> init;
  std::vector<FeatureVector> stream;
  std::optional<std::vector<ClassId>> truth;
};

Inputs load_inputs(const RunConfig& c) {
  Inputs in;
  if (c.init_csv) {
    auto init = load_features_csv(*c.init_csv, true, c.csv_header);
    for (std::size_t i = 0; i < init.points.size(); ++i) {
      in.init.push_back({std::move(init.points[i]), (*init.labels)[i]});
    }
    auto stream = load_features_csv(*c.stream_csv, c.stream_has_labels, c.csv_header);
    in.stream = std::move(stream.points);
    in.truth = std::move(stream.labels);
    if (c.shuffle) {
      Rng rng(c.effective_shuffle_seed());
      const auto perm = random_permutation(rng, in.stream.size());
      std::vector<FeatureVector> pts;
      std::vector<ClassId> labels;
      for (std::size_t i : perm) {
        pts.push_back(in.stream[i]);
        if (in.truth) labels.push_back((*in.truth)[i]);
      }
      in.stream = std::move(pts);
      if (in.truth) in.truth = std::move(labels);
    }
    return in;
  }
  BenchmarkSpec spec;
  spec.dataset_id = *c.dataset;
  spec.seed = c.seed;
  spec.points_per_init_class = c.points_per_init_class;
  spec.points_per_stream_segment = c.points_per_stream_segment;
  spec.interleave_new_classes = c.interleave_new_classes;
  LabeledStream ls = make_benchmark(spec);
  if (c.shuffle) {
    Rng rng(c.effective_shuffle_seed());
    ls = shuffle_stream(ls, rng);
  }
  in.init = std::move(ls.init);
  in.stream = ls.stream_points();
  in.truth = ls.stream_labels();
  return in;
}

int cmd_run(const RunConfig& c, std::ostream& out) {
  c.validate();
  Inputs in = load_inputs(c);
  if (in.init.empty()) throw ArgumentError("init set is empty");

  EngineOptions opt;
  opt.strategy = c.strategy;
  opt.gain = c.gain;
  if (c.rank_cutoff) opt.rank_cutoff = *c.rank_cutoff == 0 ? kAllRanks : *c.rank_cutoff;
  opt.buffer_capacity = c.buffer_capacity;
  opt.probes = c.probes;

  ensure_dir(c.out_dir);
  write_json(c.out_dir / "config.json", config_to_json(c));

  StreamEngine engine = StreamEngine::from_labeled(in.init, c.params, c.seed, opt);
  const std::size_t initial_classes = engine.model().footprints().size();
  StreamRun run = run_stream(engine, in.stream);

  {
    auto events = open_out(c.out_dir / "events.jsonl");
    for (const auto& o : run.outputs) events << output_to_json(o).dump() << '\n';
  }
  write_json(c.out_dir / "relabels.json", relabels_to_json(run.relabels));
  save_model(engine.model(), c.out_dir / "model_final.json");
  write_lines(c.out_dir / "labels.txt", run.labels);

  std::vector<double> max_typ;
  max_typ.reserve(run.outputs.size());
  for (const auto& o : run.outputs) max_typ.push_back(o.max_typicality());
  {
    auto f = open_out(c.out_dir / "typicality.txt");
    f.precision(17);
    for (double v : max_typ) f << v << '\n';
  }

  const std::size_t discovered = engine.model().footprints().size() - initial_classes;
  json metrics;
  if (in.truth && !in.stream.empty()) {
    write_lines(c.out_dir / "truth.txt", *in.truth);
    metrics = metrics_json(run.labels, *in.truth, max_typ, c.confidence_threshold, discovered);
  } else {
    metrics = {{"precision", nullptr},
               {"confident_precision", nullptr},
               {"coverage", nullptr},
               {"n_classes_discovered", discovered}};
  }
  metrics["points"] = in.stream.size();
  metrics["outliers_remaining"] = engine.buffer().size();
  write_json(c.out_dir / "metrics.json", metrics);

  if (!c.probes.empty()) {
    auto f = open_out(c.out_dir / "probes.csv");
    write_probe_csv(f, probe_series(run.outputs));
  }
  out << metrics.dump() << '\n';
  return kOk;
}

void add_run_options(CLI::App& cmd, std::string& config_path, json& overrides);

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Soft streaming classification with prototype footprints", "streamsong"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "write a synthetic benchmark as CSV");
  BenchmarkSpec gen_spec;
  gen_spec.seed = 1;
  fs::path gen_out = ".";
  gen->add_option("--dataset", gen_spec.dataset_id, "benchmark id (1-4)")->required();
  gen->add_option("--seed", gen_spec.seed, "generator seed");
  gen->add_option("--init-points", gen_spec.points_per_init_class, "init points per known class");
  gen->add_option("--stream-points", gen_spec.points_per_stream_segment,
                  "stream points per class");
  gen->add_flag("--interleave", gen_spec.interleave_new_classes, "mix the new-class segments");
  gen->add_option("--out", gen_out, "output directory");

  // run
  auto* run = app.add_subcommand("run", "stream a dataset through the engine");
  std::string config_path;
  json overrides = json::object();
  add_run_options(*run, config_path, overrides);

  // eval
  auto* ev = app.add_subcommand("eval", "score predicted labels against the truth");
  fs::path pred_path, truth_path, eval_out;
  std::optional<fs::path> typ_path;
  double eval_threshold = 0.2;
  std::int64_t known_classes = -1;
  ev->add_option("--pred", pred_path, "predicted labels, one per line")->required();
  ev->add_option("--truth", truth_path, "true labels, one per line")->required();
  ev->add_option("--typicality", typ_path, "max typicality per point, one per line");
  ev->add_option("--threshold", eval_threshold, "confidence threshold")->capture_default_str();
  ev->add_option("--known-classes", known_classes,
                 "predicted ids below this are initial classes (default: none)");
  ev->add_option("--out", eval_out, "write metrics.json here instead of stdout");

  // sp1m
  auto* sp = app.add_subcommand("sp1m", "cluster a CSV with sequential possibilistic one-means");
  fs::path sp_input, sp_out;
  bool sp_labels = false, sp_header = false;
  std::size_t sp_clusters = 5, sp_restarts = 20;
  std::uint64_t sp_seed = 1;
  HyperParams sp_hp;
  sp->add_option("--input", sp_input, "CSV of points")->required();
  sp->add_flag("--has-labels", sp_labels, "ignore a trailing label column");
  sp->add_flag("--header", sp_header, "skip a header row");
  sp->add_option("--max-clusters", sp_clusters)->capture_default_str();
  sp->add_option("--restarts", sp_restarts)->capture_default_str();
  sp->add_option("--seed", sp_seed)->capture_default_str();
  sp->add_option("--fuzzifier", sp_hp.fuzzifier)->capture_default_str();
  sp->add_option("--eta-scale", sp_hp.p1m_eta_scale)->capture_default_str();
  sp->add_option("--out", sp_out, "write clusters JSON here instead of stdout");

  // probe
  auto* pr = app.add_subcommand("probe", "score points against a saved model");
  fs::path pr_model;
  std::vector<std::string> pr_points;
  std::optional<fs::path> pr_csv;
  pr->add_option("--model", pr_model, "model file")->required();
  pr->add_option("--probe", pr_points, "point as x,y,...")->take_all();
  pr->add_option("--points", pr_csv, "CSV of points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      gen_spec.validate();
      const LabeledStream ls = make_benchmark(gen_spec);
      ensure_dir(gen_out);
      write_features_csv(gen_out / "init.csv", ls.init);
      write_features_csv(gen_out / "stream.csv", ls.stream);
      write_json(gen_out / "manifest.json", benchmark_manifest(gen_spec, ls));
      out << "wrote " << ls.init.size() << " init and " << ls.stream.size()
          << " stream points to " << gen_out.string() << '\n';
      return kOk;
    }
    if (*run) {
      RunConfig c;
      if (!config_path.empty()) {
        auto in = open_in(config_path);
        json file;
        try {
          file = json::parse(in);
        } catch (const json::parse_error& e) {
          throw ArgumentError("config " + config_path + ": " + e.what());
        }
        file.merge_patch(overrides);
        c = config_from_json(file);
      } else {
        c = config_from_json(overrides);
      }
      return cmd_run(c, out);
    }
    if (*ev) {
      const auto pred = read_labels(pred_path);
      const auto truth = read_labels(truth_path);
      if (pred.size() != truth.size()) {
        throw ArgumentError("label files differ in length: " + std::to_string(pred.size()) +
                            " vs " + std::to_string(truth.size()));
      }
      std::vector<double> typ;
      if (typ_path) {
        typ = read_values(*typ_path);
        if (typ.size() != pred.size()) throw ArgumentError("typicality file length differs");
      }
      std::set<ClassId> novel;
      for (ClassId p : pred) {
        if (p != kOutlier && to_int(p) >= known_classes) novel.insert(p);
      }
      const json m = metrics_json(pred, truth, typ, eval_threshold,
                                  known_classes < 0 ? 0 : novel.size());
      if (eval_out.empty()) {
        out << m.dump(2) << '\n';
      } else {
        write_json(eval_out, m);
      }
      return kOk;
    }
    if (*sp) {
      sp_hp.validate();
      const auto table = load_features_csv(sp_input, sp_labels, sp_header);
      Rng rng(sp_seed);
      const auto found = sp1m(table.points, sp_clusters, sp_restarts, sp_hp.fuzzifier,
                              sp_hp.p1m_conv_tol, sp_hp.p1m_max_iter, rng, {},
                              sp_hp.p1m_eta_scale);
      json arr = json::array();
      for (const auto& r : found) {
        const auto members = std::count_if(r.typicalities.begin(), r.typicalities.end(),
                                           [](double t) { return t > 0.5; });
        arr.push_back({{"center", r.center},
                       {"eta", r.eta},
                       {"members", members},
                       {"iterations", r.iterations},
                       {"converged", r.converged}});
      }
      if (sp_out.empty()) {
        out << arr.dump(2) << '\n';
      } else {
        write_json(sp_out, arr);
      }
      return kOk;
    }
    if (*pr) {
      const Model model = load_model(pr_model);
      std::vector<FeatureVector> points;
      for (const auto& s : pr_points) points.push_back(parse_point(s));
      if (pr_csv) {
        auto t = load_features_csv(*pr_csv, false);
        for (auto& p : t.points) points.push_back(std::move(p));
      }
      if (points.empty()) throw ArgumentError("no probe points given");
      const auto scores = probe_typicalities(model, points);
      for (std::size_t i = 0; i < points.size(); ++i) {
        json typ = json::object();
        for (const auto& [cls, v] : scores[i]) typ[to_string(cls)] = v;
        const auto [best, value] = argmax(scores[i]);
        out << json{{"point", points[i]},
                    {"typicality", typ},
                    {"max", value},
                    {"label", value > model.params().typicality_threshold
                                  ? json(to_int(best))
                                  : json("OUTLIER")}}
                   .dump()
            << '\n';
      }
      return kOk;
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const StreamError& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const ParseError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const DimensionError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const IoError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const VersionError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsage;
}

namespace {

// Flags are collected as a JSON patch so that they override a config file key by key.
template <typename T>
void patch_option(CLI::App& cmd, json& overrides, const std::string& name, const std::string& key,
                  const std::string& help) {
  cmd.add_option_function<T>(
      name, [&overrides, key](const T& v) { overrides[json::json_pointer(key)] = v; }, help);
}

void patch_flag(CLI::App& cmd, json& overrides, const std::string& name, const std::string& key,
                const std::string& help) {
  cmd.add_flag_callback(name, [&overrides, key] { overrides[json::json_pointer(key)] = true; },
                        help);
}

void add_run_options(CLI::App& cmd, std::string& config_path, json& overrides) {
  cmd.add_option("--config", config_path, "JSON config; flags override its keys");

  patch_option<int>(cmd, overrides, "--dataset", "/dataset", "benchmark id (1-4)");
  patch_option<std::uint64_t>(cmd, overrides, "--seed", "/seed",
                              "seed for data generation and the engine");
  patch_option<std::size_t>(cmd, overrides, "--init-points", "/points_per_init_class",
                            "init points per known class");
  patch_option<std::size_t>(cmd, overrides, "--stream-points", "/points_per_stream_segment",
                            "stream points per class");
  patch_flag(cmd, overrides, "--interleave", "/interleave_new_classes",
             "mix the new-class segments");
  patch_option<std::string>(cmd, overrides, "--init", "/init_csv",
                            "labeled init CSV (x1,...,xq,label)");
  patch_option<std::string>(cmd, overrides, "--stream", "/stream_csv",
                            "stream CSV, labeled unless --unlabeled-stream");
  cmd.add_flag_callback("--unlabeled-stream",
                        [&overrides] { overrides["stream_has_labels"] = false; },
                        "stream CSV has no label column");
  patch_flag(cmd, overrides, "--header", "/csv_header", "CSV files start with a header row");
  patch_option<std::string>(cmd, overrides, "--strategy", "/update_strategy",
                            "knn_incremental | retrain_all | retrain_protos");
  patch_option<std::string>(cmd, overrides, "--gain", "/update_gain", "prototype | class");
  patch_option<std::size_t>(cmd, overrides, "--rank-cutoff", "/rank_cutoff",
                            "prototypes moved per update, 0 = all (default k)");
  patch_option<std::size_t>(cmd, overrides, "--buffer-capacity", "/buffer_capacity",
                            "outlier buffer size");
  patch_flag(cmd, overrides, "--shuffle", "/shuffle", "permute the stream");
  patch_option<std::uint64_t>(cmd, overrides, "--shuffle-seed", "/shuffle_seed",
                              "permutation seed (default seed+1000)");
  cmd.add_option_function<std::vector<std::string>>(
         "--probe",
         [&overrides](const std::vector<std::string>& v) {
           json arr = json::array();
           try {
             for (const auto& s : v) arr.push_back(parse_point(s));
           } catch (const ArgumentError& e) {
             throw CLI::ValidationError("--probe", e.what());
           }
           overrides["probes"] = arr;
         },
         "probe point x,y,... (repeatable)")
      ->take_all();
  patch_option<double>(cmd, overrides, "--confidence-threshold", "/confidence_threshold",
                       "typicality threshold for confident precision");
  patch_option<std::string>(cmd, overrides, "--out", "/out_dir", "output directory");

  patch_option<int>(cmd, overrides, "--neurons", "/hyperparams/n_neurons_per_class",
                    "prototypes per class");
  patch_option<int>(cmd, overrides, "--k", "/hyperparams/k_query", "neighbors per query");
  patch_option<int>(cmd, overrides, "--k-eta", "/hyperparams/k_eta", "neighbors for eta");
  patch_option<double>(cmd, overrides, "--threshold", "/hyperparams/typicality_threshold",
                       "outlier threshold t");
  patch_option<int>(cmd, overrides, "--min-points", "/hyperparams/min_new_class_points",
                    "points needed for a new class (M)");
  patch_option<double>(cmd, overrides, "--fuzzifier", "/hyperparams/fuzzifier", "fuzzifier m");
  patch_option<double>(cmd, overrides, "--alpha", "/hyperparams/learning_rate",
                       "update learning rate");
  patch_option<double>(cmd, overrides, "--lambda", "/hyperparams/neighborhood",
                       "update neighborhood");
  patch_option<int>(cmd, overrides, "--p1m-restarts", "/hyperparams/p1m_restarts",
                    "P1M restarts per discovery attempt");
  patch_option<double>(cmd, overrides, "--p1m-eta-scale", "/hyperparams/p1m_eta_scale",
                       "P1M eta multiplier");
}

}  // namespace

}  // namespace streamsong::tools
