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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qae/noise.hpp"
#include "qae/qss.hpp"
#include "qae/training.hpp"

namespace qae {

enum class ExperimentKind { train, evaluate_sweep, generate, gate_noise_sweep, qss_sweep, state_city };

std::string_view to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(std::string_view text);

/// One experiment, fully resolved. Every optional field of the file has been
/// replaced by its default.
///
/// File layout (YAML):
///
///   experiment: evaluate-sweep
///   seed: 7
///   output_dir: out/fig7
///   topology: [2, 1, 2]
///   channel: {kind: depolarizing, p: 0.2, p_grid: [0.1, 0.2, ...]}
///   training: {epsilon: 0.1, eta: 0.25, shots: exact, epochs: 150, ...}
///   model: models/qdc_212.json          # skip training, load this instead
///   evaluation: {n_states: 200, passes: 1, threshold: 0.9}
///   gate_noise: {sigmas: [0, 0.01, ...]}
///   qss: {rounds: 1000, modes: [noisy]}
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::train;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  Topology topology{std::vector<int>{2, 1, 2}};

  ChannelSpec channel{ChannelKind::depolarizing, 0.2};
  /// Sweep values of p, sorted ascending. For train it lists the noise
  /// strengths to train at (one log per p).
  std::vector<double> p_grid;

  TrainingConfig training;
  /// Independent training runs per p (train only).
  int replicates = 1;
  std::optional<std::filesystem::path> model_path;

  int n_states = 200;
  int passes = 1;
  /// Fidelity level whose first crossing is reported per training run.
  double threshold = 0.9;

  std::vector<double> sigmas;

  int qss_rounds = 1000;
  std::vector<QssMode> qss_modes{QssMode::noisy};
};

struct Diagnostic {
  int line = 0;    // 1-based; 0 when the problem is not tied to a line
  int column = 0;  // 1-based
  std::string field;
  std::string message;

  std::string str() const;
};

/// Thrown by load_config with every problem found, not only the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct ConfigResult {
  std::optional<ExperimentConfig> config;  // absent when diagnostics has errors
  std::vector<Diagnostic> diagnostics;
};

/// Schema and range checks. Never throws on bad content.
ConfigResult parse_config(const std::string& text);
ConfigResult parse_config_file(const std::filesystem::path& path);

/// Throws ConfigError on any diagnostic, std::runtime_error if the file cannot
/// be read.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical YAML rendering of a resolved config, defaults included.
std::string to_yaml(const ExperimentConfig& config);

/// Default training-pair count for a topology: 150 for three input qubits,
/// 100 otherwise.
int default_pair_count(const Topology& topology);

}  // namespace qae
