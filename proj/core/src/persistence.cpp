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

#include "streamsong/persistence.hpp"

#include <fstream>
#include <sstream>

namespace streamsong {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) {
    try {
      out = j.at(key).get<T>();
    } catch (const json::exception&) {
      throw ParseError(std::string("hyperparams: field '") + key + "' has the wrong type");
    }
  }
}

}  // namespace

json hyperparams_to_json(const HyperParams& p) {
  return {
      {"n_neurons_per_class", p.n_neurons_per_class},
      {"k_query", p.k_query},
      {"k_eta", p.k_eta},
      {"typicality_threshold", p.typicality_threshold},
      {"min_new_class_points", p.min_new_class_points},
      {"fuzzifier", p.fuzzifier},
      {"learning_rate", p.learning_rate},
      {"neighborhood", p.neighborhood},
      {"p1m_restarts", p.p1m_restarts},
      {"p1m_conv_tol", p.p1m_conv_tol},
      {"p1m_max_iter", p.p1m_max_iter},
      {"p1m_eta_scale", p.p1m_eta_scale},
      {"ng",
       {{"epsilon_start", p.ng.epsilon_start},
        {"epsilon_end", p.ng.epsilon_end},
        {"lambda_start", p.ng.lambda_start},
        {"lambda_end", p.ng.lambda_end},
        {"epochs", p.ng.epochs}}},
  };
}

HyperParams hyperparams_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("hyperparams must be an object");
  HyperParams p;
  maybe(j, "n_neurons_per_class", p.n_neurons_per_class);
  maybe(j, "k_query", p.k_query);
  maybe(j, "k_eta", p.k_eta);
  maybe(j, "typicality_threshold", p.typicality_threshold);
  maybe(j, "min_new_class_points", p.min_new_class_points);
  maybe(j, "fuzzifier", p.fuzzifier);
  maybe(j, "learning_rate", p.learning_rate);
  maybe(j, "neighborhood", p.neighborhood);
  maybe(j, "p1m_restarts", p.p1m_restarts);
  maybe(j, "p1m_conv_tol", p.p1m_conv_tol);
  maybe(j, "p1m_max_iter", p.p1m_max_iter);
  maybe(j, "p1m_eta_scale", p.p1m_eta_scale);
  if (j.contains("ng")) {
    const json& ng = j.at("ng");
    if (!ng.is_object()) throw ParseError("hyperparams.ng must be an object");
    maybe(ng, "epsilon_start", p.ng.epsilon_start);
    maybe(ng, "epsilon_end", p.ng.epsilon_end);
    maybe(ng, "lambda_start", p.ng.lambda_start);
    maybe(ng, "lambda_end", p.ng.lambda_end);
    maybe(ng, "epochs", p.ng.epochs);
  }
  return p;
}

json model_to_json(const Model& model) {
  json footprints = json::array();
  for (const auto& [cls, fp] : model.footprints()) {
    json protos = json::array();
    for (const auto& p : fp.prototypes) {
      protos.push_back({{"proto_id", to_int(p.id)}, {"position", p.position}});
    }
    footprints.push_back({{"class", to_int(cls)},
                          {"eta", fp.eta},
                          {"created_at", fp.created_at},
                          {"update_count", fp.update_count},
                          {"prototypes", std::move(protos)}});
  }
  return {
      {"version", kModelFormatVersion},
      {"dimension", model.dimension()},
      {"hyperparams", hyperparams_to_json(model.params())},
      {"footprints", std::move(footprints)},
      {"next_class_id", to_int(model.next_class_id())},
      {"next_proto_id", to_int(model.next_proto_id())},
      {"rng_state", serialize_rng(model.rng())},
  };
}

Model model_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("model: document must be an object");
  const int version = field<int>(j, "version", "model");
  if (version != kModelFormatVersion) {
    throw VersionError("model format version " + std::to_string(version) +
                       " is not supported (expected " + std::to_string(kModelFormatVersion) + ")");
  }
  Model::Raw raw;
  raw.dimension = field<std::size_t>(j, "dimension", "model");
  if (!j.contains("hyperparams")) throw ParseError("model: missing field 'hyperparams'");
  raw.params = hyperparams_from_json(j.at("hyperparams"));
  raw.rng = deserialize_rng(field<std::string>(j, "rng_state", "model"));
  raw.next_class = ClassId{field<std::int64_t>(j, "next_class_id", "model")};
  raw.next_proto = ProtoId{field<std::int64_t>(j, "next_proto_id", "model")};

  const json& fps = j.contains("footprints") ? j.at("footprints") : json();
  if (!fps.is_array()) throw ParseError("model: 'footprints' must be an array");
  for (std::size_t i = 0; i < fps.size(); ++i) {
    const std::string where = "footprints[" + std::to_string(i) + "]";
    const json& f = fps[i];
    ClassFootprint fp;
    fp.cls = ClassId{field<std::int64_t>(f, "class", where)};
    fp.eta = field<double>(f, "eta", where);
    fp.created_at = field<std::size_t>(f, "created_at", where);
    fp.update_count = field<std::size_t>(f, "update_count", where);
    const json& protos = f.contains("prototypes") ? f.at("prototypes") : json();
    if (!protos.is_array()) throw ParseError(where + ": 'prototypes' must be an array");
    for (std::size_t k = 0; k < protos.size(); ++k) {
      const std::string pw = where + ".prototypes[" + std::to_string(k) + "]";
      Prototype p;
      p.id = ProtoId{field<std::int64_t>(protos[k], "proto_id", pw)};
      p.position = field<std::vector<double>>(protos[k], "position", pw);
      p.cls = fp.cls;
      if (p.position.size() != raw.dimension) {
        throw DimensionError(pw + ": position has dimension " + std::to_string(p.position.size()) +
                             ", model has " + std::to_string(raw.dimension));
      }
      fp.prototypes.push_back(std::move(p));
    }
    if (!raw.footprints.emplace(fp.cls, fp).second) throw ParseError(where + ": duplicate class");
  }
  return Model::from_raw(std::move(raw));
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os << model_to_json(model).dump(2) << '\n';
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

Model load_model(const std::filesystem::path& path, std::optional<std::size_t> expected_dimension) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << is.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what() + " (byte " + std::to_string(e.byte) + ")");
  }
  Model m = model_from_json(j);
  if (expected_dimension && m.dimension() != *expected_dimension) {
    throw DimensionError("model '" + path.string() + "' has dimension " +
                         std::to_string(m.dimension()) + ", session expects " +
                         std::to_string(*expected_dimension));
  }
  return m;
}

}  // namespace streamsong
