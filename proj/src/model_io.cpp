// Copyright 2026 The qae-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qae/model_io.hpp"

#include <fstream>
#include <stdexcept>

namespace qae {

using nlohmann::json;

json model_to_json(const QaeModel& model) {
  json doc;
  doc["format"] = kModelFormat;
  doc["layer_sizes"] = model.topology.layers();
  doc["kappa"] = model.kappa;
  const auto& meta = model.metadata;
  doc["channel"] = meta.channel ? json(std::string(to_string(meta.channel->kind))) : json(nullptr);
  doc["p"] = meta.channel ? json(meta.channel->p) : json(nullptr);
  doc["seed"] = meta.seed;
  doc["epochs"] = meta.epochs;
  doc["final_fidelity"] = meta.final_fidelity ? json(*meta.final_fidelity) : json(nullptr);
  return doc;
}

QaeModel model_from_json(const json& doc) {
  auto field = [&](const char* name) -> const json& {
    if (!doc.contains(name)) throw std::invalid_argument(std::string("model file: missing field '") + name + "'");
    return doc.at(name);
  };
  if (doc.contains("format") && doc.at("format") != kModelFormat) {
    throw std::invalid_argument("model file: unsupported format " + doc.at("format").dump());
  }
  try {
    Topology topology(field("layer_sizes").get<std::vector<int>>());
    auto kappa = field("kappa").get<ParameterVector>();
    ModelMetadata meta;
    if (doc.contains("channel") && !doc.at("channel").is_null()) {
      ChannelSpec spec{channel_kind_from_string(doc.at("channel").get<std::string>()), field("p").get<double>()};
      spec.validate();
      meta.channel = spec;
    }
    if (doc.contains("seed")) meta.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("epochs")) meta.epochs = doc.at("epochs").get<int>();
    if (doc.contains("final_fidelity") && !doc.at("final_fidelity").is_null()) {
      meta.final_fidelity = doc.at("final_fidelity").get<double>();
    }
    return {std::move(topology), std::move(kappa), meta};
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model file: ") + e.what());
  }
}

void save_model(const QaeModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file " + path.string());
  out << model_to_json(model).dump(2) << '\n';
}

QaeModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot parse model file " + path.string() + ": " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace qae
