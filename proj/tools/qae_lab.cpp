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

// qae-lab: runs the experiments behind every figure from a config file, or
// from command-line flags that mirror the config fields.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include "qae/config.hpp"
#include "qae/experiments.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
};

int execute(qae::ExperimentConfig config, const Overrides& o) {
  if (o.seed) config.seed = *o.seed;
  if (o.output_dir) config.output_dir = *o.output_dir;
  const auto output = qae::run_experiment(config);
  qae::write_outputs(output, config.output_dir);
  std::cout << output.summary << "\n";
  return kOk;
}

int report(const std::vector<qae::Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << "config error: " << d.str() << "\n";
  return kUsageError;
}

// Flag-driven subcommands build the same document a config file would hold,
// so they share its validation.
struct FlagConfig {
  std::string experiment;
  std::string output_dir = "out";
  std::optional<std::uint64_t> seed;
  std::vector<int> topology;
  std::optional<std::string> channel;
  std::optional<double> p;
  std::vector<double> p_grid;
  std::optional<double> epsilon, eta;
  std::optional<std::string> shots;
  std::optional<int> epochs, n_pairs, replicates, n_states, passes, rounds;
  std::optional<std::string> optimizer, model;
  std::vector<double> sigmas;
  std::vector<std::string> modes;

  void add_common(CLI::App* app) {
    app->add_option("--output-dir", output_dir, "Directory for tables and models")->capture_default_str();
    app->add_option("--seed", seed, "Root seed");
    app->add_option("--topology", topology, "Layer sizes, e.g. 2,1,2")->delimiter(',');
    app->add_option("--channel", channel, "bitflip or depolarizing");
    app->add_option("--p", p, "Noise strength");
    app->add_option("--p-grid", p_grid, "Sweep values of p")->delimiter(',');
  }
  void add_training(CLI::App* app) {
    app->add_option("--epsilon", epsilon, "Finite-difference step");
    app->add_option("--eta", eta, "Learning rate");
    app->add_option("--shots", shots, "Shots per cost evaluation, or 'exact'");
    app->add_option("--epochs", epochs);
    app->add_option("--n-pairs", n_pairs, "Training pairs");
    app->add_option("--optimizer", optimizer, "vanilla or adam");
  }

  std::string yaml() const {
    YAML::Node n;
    n["experiment"] = experiment;
    n["output_dir"] = output_dir;
    if (seed) n["seed"] = *seed;
    if (!topology.empty()) n["topology"] = topology;
    if (channel) n["channel"]["kind"] = *channel;
    if (p) n["channel"]["p"] = *p;
    if (!p_grid.empty()) n["channel"]["p_grid"] = p_grid;
    if (epsilon) n["training"]["epsilon"] = *epsilon;
    if (eta) n["training"]["eta"] = *eta;
    if (shots) n["training"]["shots"] = *shots;
    if (epochs) n["training"]["epochs"] = *epochs;
    if (n_pairs) n["training"]["n_pairs"] = *n_pairs;
    if (replicates) n["training"]["replicates"] = *replicates;
    if (optimizer) n["training"]["optimizer"] = *optimizer;
    if (model) n["model"] = *model;
    if (n_states) n["evaluation"]["n_states"] = *n_states;
    if (passes) n["evaluation"]["passes"] = *passes;
    if (!sigmas.empty()) n["gate_noise"]["sigmas"] = sigmas;
    if (rounds) n["qss"]["rounds"] = *rounds;
    if (!modes.empty()) n["qss"]["modes"] = modes;
    return YAML::Dump(n);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum autoencoder experiments: training, robustness sweeps and secret sharing"};
  app.require_subcommand(1);
  Overrides overrides;

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "YAML config")->required();
  run->add_option("--seed", overrides.seed, "Override the config's root seed");
  run->add_option("--output-dir", overrides.output_dir, "Override the config's output directory");

  auto* validate = app.add_subcommand("validate", "Check a config file and print it with defaults resolved");
  validate->add_option("config", config_path, "YAML config")->required();

  FlagConfig flags;
  auto* train = app.add_subcommand("train", "Train a QAE");
  flags.add_common(train);
  flags.add_training(train);
  train->add_option("--replicates", flags.replicates, "Independent runs per p");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a QAE (trained on the fly unless --model is given)");
  std::string eval_kind = "evaluate-sweep";
  evaluate->add_option("--experiment", eval_kind, "evaluate-sweep, generate, gate-noise-sweep or state-city")
      ->check(CLI::IsMember({"evaluate-sweep", "generate", "gate-noise-sweep", "state-city"}))
      ->capture_default_str();
  flags.add_common(evaluate);
  flags.add_training(evaluate);
  evaluate->add_option("--model", flags.model, "Model file");
  evaluate->add_option("--n-states", flags.n_states, "Test states per sweep point");
  evaluate->add_option("--passes", flags.passes, "Applications of the network");
  evaluate->add_option("--sigmas", flags.sigmas, "Gate-noise widths")->delimiter(',');

  auto* qss = app.add_subcommand("qss", "Quantum secret sharing failure-rate sweep");
  flags.add_common(qss);
  flags.add_training(qss);
  qss->add_option("--model", flags.model, "Model file for the denoised modes");
  qss->add_option("--rounds", flags.rounds, "Rounds per sweep point");
  qss->add_option("--modes", flags.modes, "clean, noisy, denoised, denoised_shot, generated")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*validate) {
      const auto result = qae::parse_config_file(config_path);
      if (!result.config) return report(result.diagnostics);
      std::cout << qae::to_yaml(*result.config);
      return kOk;
    }
    if (*run) {
      const auto result = qae::parse_config_file(config_path);
      if (!result.config) return report(result.diagnostics);
      return execute(*result.config, overrides);
    }
    flags.experiment = *train ? "train" : *qss ? "qss-sweep" : eval_kind;
    const auto result = qae::parse_config(flags.yaml());
    if (!result.config) return report(result.diagnostics);
    return execute(*result.config, {});
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
}
