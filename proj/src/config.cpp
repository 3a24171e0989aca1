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

#include "qae/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace qae {
namespace {

const std::vector<double> kDefaultEvaluationGrid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
const std::vector<double> kDefaultQssGrid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
const std::vector<double> kDefaultSigmas{0.0, 0.01, 0.02, 0.03, 0.05, 0.1, 0.15, 0.2};

// Child lookup that is safe on absent parents, which yaml-cpp reports as
// invalid nodes.
YAML::Node child(const YAML::Node& parent, const char* key) {
  if (!parent.IsDefined() || !parent.IsMap()) return YAML::Node();
  return parent[key];
}

// Walks the document and records problems instead of throwing.
class Reader {
 public:
  std::vector<Diagnostic> diagnostics;

  void error(const YAML::Node& node, std::string field, std::string message) {
    Diagnostic d{0, 0, std::move(field), std::move(message)};
    if (node.IsDefined() && node.Mark().line >= 0) {
      d.line = node.Mark().line + 1;
      d.column = node.Mark().column + 1;
    }
    diagnostics.push_back(std::move(d));
  }

  void check_keys(const YAML::Node& map, const std::string& prefix, const std::set<std::string>& allowed) {
    if (!map.IsMap()) return;
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) error(kv.first, prefix + key, "unknown field");
    }
  }

  template <typename T>
  std::optional<T> scalar(const YAML::Node& node, const std::string& field, const char* type_name) {
    if (!node.IsDefined() || node.IsNull()) return std::nullopt;
    if (!node.IsScalar()) {
      error(node, field, std::string("expected ") + type_name);
      return std::nullopt;
    }
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      error(node, field, std::string("expected ") + type_name + ", got '" + node.Scalar() + "'");
      return std::nullopt;
    }
  }

  template <typename T>
  std::optional<std::vector<T>> sequence(const YAML::Node& node, const std::string& field, const char* type_name) {
    if (!node.IsDefined() || node.IsNull()) return std::nullopt;
    if (!node.IsSequence()) {
      error(node, field, std::string("expected a list of ") + type_name);
      return std::nullopt;
    }
    std::vector<T> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      auto v = scalar<T>(node[i], field + "[" + std::to_string(i) + "]", type_name);
      if (!v) return std::nullopt;
      out.push_back(*v);
    }
    return out;
  }

  void range(const YAML::Node& node, const std::string& field, double value, double lo, double hi) {
    if (!(value >= lo && value <= hi)) {
      std::ostringstream msg;
      msg << "value " << value << " outside [" << lo << ", " << hi << "]";
      error(node, field, msg.str());
    }
  }

  void positive(const YAML::Node& node, const std::string& field, double value) {
    if (!(value > 0.0)) error(node, field, "must be > 0");
  }
};

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

ExperimentConfig read(const YAML::Node& root, Reader& r) {
  ExperimentConfig c;
  if (!root.IsDefined() || root.IsNull()) {
    r.error(root, "experiment", "missing required field");
    r.error(root, "output_dir", "missing required field");
    return c;
  }
  if (!root.IsMap()) {
    r.error(root, "", "top level must be a mapping");
    return c;
  }
  r.check_keys(root, "", {"experiment", "seed", "output_dir", "topology", "channel", "training", "model", "evaluation",
                          "gate_noise", "qss"});

  if (auto kind = r.scalar<std::string>(root["experiment"], "experiment", "string")) {
    try {
      c.kind = experiment_kind_from_string(*kind);
    } catch (const std::invalid_argument& e) {
      r.error(root["experiment"], "experiment", e.what());
    }
  } else if (!root["experiment"].IsDefined()) {
    r.error(root, "experiment", "missing required field");
  }
  if (auto seed = r.scalar<std::uint64_t>(root["seed"], "seed", "non-negative integer")) c.seed = *seed;
  if (auto dir = r.scalar<std::string>(root["output_dir"], "output_dir", "path")) {
    c.output_dir = *dir;
  } else if (!root["output_dir"].IsDefined()) {
    r.error(root, "output_dir", "missing required field");
  }
  if (auto layers = r.sequence<int>(root["topology"], "topology", "integers")) {
    try {
      c.topology = Topology(*layers);
    } catch (const std::invalid_argument& e) {
      r.error(root["topology"], "topology", e.what());
    }
  }
  if (auto model = r.scalar<std::string>(root["model"], "model", "path")) c.model_path = *model;

  const YAML::Node ch = root["channel"];
  bool have_grid = false;
  if (ch.IsDefined() && !ch.IsMap()) r.error(ch, "channel", "expected a mapping");
  if (ch.IsDefined() && ch.IsMap()) {
    r.check_keys(ch, "channel.", {"kind", "p", "p_grid"});
    if (auto kind = r.scalar<std::string>(ch["kind"], "channel.kind", "string")) {
      try {
        c.channel.kind = channel_kind_from_string(*kind);
      } catch (const std::invalid_argument& e) {
        r.error(ch["kind"], "channel.kind", e.what());
      }
    }
    if (auto p = r.scalar<double>(ch["p"], "channel.p", "number")) {
      c.channel.p = *p;
      r.range(ch["p"], "channel.p", *p, 0.0, 1.0);
    }
    if (auto grid = r.sequence<double>(ch["p_grid"], "channel.p_grid", "numbers")) {
      for (std::size_t i = 0; i < grid->size(); ++i) {
        r.range(ch["p_grid"][i], "channel.p_grid[" + std::to_string(i) + "]", (*grid)[i], 0.0, 1.0);
      }
      if (grid->empty()) r.error(ch["p_grid"], "channel.p_grid", "must not be empty");
      c.p_grid = *grid;
      have_grid = true;
    }
  }

  // Paper defaults: eps = 0.1, eta = 1/4, S = 1000.
  c.training.shots = 1000;
  c.training.n_pairs = default_pair_count(c.topology);
  c.training.n_validation = c.training.n_pairs;
  const YAML::Node tr = root["training"];
  if (tr.IsDefined() && !tr.IsMap()) r.error(tr, "training", "expected a mapping");
  if (tr.IsDefined() && tr.IsMap()) {
    r.check_keys(tr, "training.", {"epsilon", "eta", "shots", "epochs", "n_pairs", "n_validation", "optimizer", "adam",
                                   "init_stddev", "replicates", "parallel"});
    if (auto v = r.scalar<double>(tr["epsilon"], "training.epsilon", "number")) {
      c.training.epsilon = *v;
      r.positive(tr["epsilon"], "training.epsilon", *v);
    }
    if (auto v = r.scalar<double>(tr["eta"], "training.eta", "number")) {
      c.training.eta = *v;
      r.positive(tr["eta"], "training.eta", *v);
    }
    const YAML::Node shots = tr["shots"];
    if (shots.IsDefined() && !shots.IsNull()) {
      if (shots.IsScalar() && shots.Scalar() == "exact") {
        c.training.shots = kExact;
      } else if (auto s = r.scalar<int>(shots, "training.shots", "positive integer or 'exact'")) {
        c.training.shots = *s;
        if (*s < 1) r.error(shots, "training.shots", "must be >= 1 or 'exact'");
      }
    }
    if (auto v = r.scalar<int>(tr["epochs"], "training.epochs", "integer")) {
      c.training.epochs = *v;
      if (*v < 0) r.error(tr["epochs"], "training.epochs", "must be >= 0");
    }
    if (auto v = r.scalar<int>(tr["n_pairs"], "training.n_pairs", "integer")) {
      c.training.n_pairs = *v;
      c.training.n_validation = *v;
      if (*v < 1) r.error(tr["n_pairs"], "training.n_pairs", "must be >= 1");
    }
    if (auto v = r.scalar<int>(tr["n_validation"], "training.n_validation", "integer")) {
      c.training.n_validation = *v;
      if (*v < 1) r.error(tr["n_validation"], "training.n_validation", "must be >= 1");
    }
    if (auto v = r.scalar<std::string>(tr["optimizer"], "training.optimizer", "string")) {
      if (*v == "vanilla") {
        c.training.optimizer = OptimizerKind::vanilla;
      } else if (*v == "adam") {
        c.training.optimizer = OptimizerKind::adam;
      } else {
        r.error(tr["optimizer"], "training.optimizer", "expected 'vanilla' or 'adam', got '" + *v + "'");
      }
    }
    const YAML::Node adam = tr["adam"];
    if (adam.IsDefined() && adam.IsMap()) {
      r.check_keys(adam, "training.adam.", {"beta1", "beta2", "epsilon"});
      if (auto v = r.scalar<double>(adam["beta1"], "training.adam.beta1", "number")) {
        c.training.adam.beta1 = *v;
        r.range(adam["beta1"], "training.adam.beta1", *v, 0.0, 1.0);
      }
      if (auto v = r.scalar<double>(adam["beta2"], "training.adam.beta2", "number")) {
        c.training.adam.beta2 = *v;
        r.range(adam["beta2"], "training.adam.beta2", *v, 0.0, 1.0);
      }
      if (auto v = r.scalar<double>(adam["epsilon"], "training.adam.epsilon", "number")) {
        c.training.adam.epsilon = *v;
        r.positive(adam["epsilon"], "training.adam.epsilon", *v);
      }
    } else if (adam.IsDefined() && !adam.IsNull()) {
      r.error(adam, "training.adam", "expected a mapping");
    }
    if (auto v = r.scalar<double>(tr["init_stddev"], "training.init_stddev", "number")) {
      c.training.init_stddev = *v;
      if (*v < 0) r.error(tr["init_stddev"], "training.init_stddev", "must be >= 0");
    }
    if (auto v = r.scalar<int>(tr["replicates"], "training.replicates", "integer")) {
      c.replicates = *v;
      if (*v < 1) r.error(tr["replicates"], "training.replicates", "must be >= 1");
    }
    if (auto v = r.scalar<bool>(tr["parallel"], "training.parallel", "boolean")) c.training.parallel = *v;
  }

  const YAML::Node ev = root["evaluation"];
  if (ev.IsDefined() && !ev.IsMap()) r.error(ev, "evaluation", "expected a mapping");
  if (ev.IsDefined() && ev.IsMap()) {
    r.check_keys(ev, "evaluation.", {"n_states", "passes", "threshold"});
    if (auto v = r.scalar<int>(ev["n_states"], "evaluation.n_states", "integer")) {
      c.n_states = *v;
      if (*v < 1) r.error(ev["n_states"], "evaluation.n_states", "must be >= 1");
    }
    if (auto v = r.scalar<int>(ev["passes"], "evaluation.passes", "integer")) {
      c.passes = *v;
      if (*v < 1) r.error(ev["passes"], "evaluation.passes", "must be >= 1");
    }
    if (auto v = r.scalar<double>(ev["threshold"], "evaluation.threshold", "number")) {
      c.threshold = *v;
      r.range(ev["threshold"], "evaluation.threshold", *v, 0.0, 1.0);
    }
  }

  const YAML::Node gn = root["gate_noise"];
  if (gn.IsDefined() && !gn.IsMap()) r.error(gn, "gate_noise", "expected a mapping");
  if (gn.IsDefined() && gn.IsMap()) {
    r.check_keys(gn, "gate_noise.", {"sigmas"});
    if (auto v = r.sequence<double>(gn["sigmas"], "gate_noise.sigmas", "numbers")) {
      for (std::size_t i = 0; i < v->size(); ++i) {
        if ((*v)[i] < 0) r.error(gn["sigmas"][i], "gate_noise.sigmas[" + std::to_string(i) + "]", "must be >= 0");
      }
      if (v->empty()) r.error(gn["sigmas"], "gate_noise.sigmas", "must not be empty");
      c.sigmas = *v;
    }
  }

  const YAML::Node qs = root["qss"];
  if (qs.IsDefined() && !qs.IsMap()) r.error(qs, "qss", "expected a mapping");
  if (qs.IsDefined() && qs.IsMap()) {
    r.check_keys(qs, "qss.", {"rounds", "modes"});
    if (auto v = r.scalar<int>(qs["rounds"], "qss.rounds", "integer")) {
      c.qss_rounds = *v;
      if (*v < 1) r.error(qs["rounds"], "qss.rounds", "must be >= 1");
    }
    if (auto v = r.sequence<std::string>(qs["modes"], "qss.modes", "strings")) {
      c.qss_modes.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        try {
          c.qss_modes.push_back(qss_mode_from_string((*v)[i]));
        } catch (const std::invalid_argument& e) {
          r.error(qs["modes"][i], "qss.modes[" + std::to_string(i) + "]", e.what());
        }
      }
      if (v->empty()) r.error(qs["modes"], "qss.modes", "must not be empty");
    }
  }

  if (!have_grid) {
    switch (c.kind) {
      case ExperimentKind::evaluate_sweep: c.p_grid = kDefaultEvaluationGrid; break;
      case ExperimentKind::qss_sweep: c.p_grid = kDefaultQssGrid; break;
      default: c.p_grid = {c.channel.p}; break;
    }
  }
  sort_unique(c.p_grid);
  if (c.sigmas.empty()) c.sigmas = kDefaultSigmas;
  sort_unique(c.sigmas);

  const bool needs_313 = c.kind == ExperimentKind::qss_sweep &&
                         std::any_of(c.qss_modes.begin(), c.qss_modes.end(), [](QssMode m) {
                           return m != QssMode::clean && m != QssMode::noisy;
                         });
  if (needs_313 && (c.topology.input_size() != 3 || c.topology.output_size() != 3)) {
    r.error(root["topology"], "topology", "QSS modes that use the QAE need 3 input and 3 output qubits");
  }
  if (c.kind == ExperimentKind::qss_sweep && c.channel.kind != ChannelKind::depolarizing) {
    r.error(child(ch, "kind"), "channel.kind", "the QSS experiment uses the depolarizing channel");
  }
  if (c.passes > 1 && c.topology.input_size() != c.topology.output_size()) {
    r.error(child(ev, "passes"), "evaluation.passes", "repeated application needs matching input and output sizes");
  }
  return c;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::train: return "train";
    case ExperimentKind::evaluate_sweep: return "evaluate-sweep";
    case ExperimentKind::generate: return "generate";
    case ExperimentKind::gate_noise_sweep: return "gate-noise-sweep";
    case ExperimentKind::qss_sweep: return "qss-sweep";
    case ExperimentKind::state_city: return "state-city";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(std::string_view text) {
  for (ExperimentKind k : {ExperimentKind::train, ExperimentKind::evaluate_sweep, ExperimentKind::generate,
                           ExperimentKind::gate_noise_sweep, ExperimentKind::qss_sweep, ExperimentKind::state_city}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown experiment '" + std::string(text) +
                              "' (expected train, evaluate-sweep, generate, gate-noise-sweep, qss-sweep or state-city)");
}

std::string Diagnostic::str() const {
  std::ostringstream out;
  if (line > 0) out << "line " << line << ", column " << column << ": ";
  if (!field.empty()) out << field << ": ";
  out << message;
  return out.str();
}

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
        std::string msg = "invalid config";
        for (const auto& d : diagnostics) msg += "\n  " + d.str();
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

int default_pair_count(const Topology& topology) { return topology.input_size() == 3 ? 150 : 100; }

ConfigResult parse_config(const std::string& text) {
  Reader r;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    return {std::nullopt, {Diagnostic{e.mark.line + 1, e.mark.column + 1, "", e.msg}}};
  }
  ExperimentConfig c = read(root, r);
  if (!r.diagnostics.empty()) return {std::nullopt, std::move(r.diagnostics)};
  return {std::move(c), {}};
}

ConfigResult parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return {std::nullopt, {Diagnostic{0, 0, "", "cannot read config file " + path.string()}}};
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw std::runtime_error("config file not found: " + path.string());
  auto result = parse_config_file(path);
  if (!result.config) throw ConfigError(std::move(result.diagnostics));
  return std::move(*result.config);
}

namespace {

// Shortest text that reads back to the same double.
std::string num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<std::string> nums(const std::vector<double>& xs) {
  std::vector<std::string> out;
  for (double x : xs) out.push_back(num(x));
  return out;
}

}  // namespace

std::string to_yaml(const ExperimentConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "experiment" << YAML::Value << std::string(to_string(c.kind));
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "output_dir" << YAML::Value << c.output_dir.string();
  out << YAML::Key << "topology" << YAML::Value << YAML::Flow << c.topology.layers();
  if (c.model_path) out << YAML::Key << "model" << YAML::Value << c.model_path->string();

  out << YAML::Key << "channel" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << std::string(to_string(c.channel.kind));
  out << YAML::Key << "p" << YAML::Value << num(c.channel.p);
  out << YAML::Key << "p_grid" << YAML::Value << YAML::Flow << nums(c.p_grid);
  out << YAML::EndMap;

  out << YAML::Key << "training" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "epsilon" << YAML::Value << num(c.training.epsilon);
  out << YAML::Key << "eta" << YAML::Value << num(c.training.eta);
  if (c.training.shots) {
    out << YAML::Key << "shots" << YAML::Value << *c.training.shots;
  } else {
    out << YAML::Key << "shots" << YAML::Value << "exact";
  }
  out << YAML::Key << "epochs" << YAML::Value << c.training.epochs;
  out << YAML::Key << "n_pairs" << YAML::Value << c.training.n_pairs;
  out << YAML::Key << "n_validation" << YAML::Value << c.training.n_validation;
  out << YAML::Key << "optimizer" << YAML::Value
      << (c.training.optimizer == OptimizerKind::adam ? "adam" : "vanilla");
  out << YAML::Key << "adam" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "beta1" << YAML::Value << num(c.training.adam.beta1);
  out << YAML::Key << "beta2" << YAML::Value << num(c.training.adam.beta2);
  out << YAML::Key << "epsilon" << YAML::Value << num(c.training.adam.epsilon);
  out << YAML::EndMap;
  out << YAML::Key << "init_stddev" << YAML::Value << num(c.training.init_stddev);
  out << YAML::Key << "replicates" << YAML::Value << c.replicates;
  out << YAML::Key << "parallel" << YAML::Value << c.training.parallel;
  out << YAML::EndMap;

  out << YAML::Key << "evaluation" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n_states" << YAML::Value << c.n_states;
  out << YAML::Key << "passes" << YAML::Value << c.passes;
  out << YAML::Key << "threshold" << YAML::Value << num(c.threshold);
  out << YAML::EndMap;

  out << YAML::Key << "gate_noise" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "sigmas" << YAML::Value << YAML::Flow << nums(c.sigmas);
  out << YAML::EndMap;

  out << YAML::Key << "qss" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "rounds" << YAML::Value << c.qss_rounds;
  out << YAML::Key << "modes" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (QssMode m : c.qss_modes) out << std::string(to_string(m));
  out << YAML::EndSeq;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace qae
