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

#include <atomic>
#include <cstdint>
#include <vector>

#include "qae/network.hpp"
#include "qae/noise.hpp"
#include "qae/swap_test.hpp"

namespace qae {

/// Two independent draws from the same channel, both applied to a clean GHZ.
struct TrainingPair {
  Syndrome input_syndrome;
  Syndrome target_syndrome;
};

std::vector<TrainingPair> make_pairs(const ChannelSpec& channel, int m, int n, Rng& rng);

/// A pair materialized as states.
struct PreparedPair {
  StateVector input;
  StateVector target;
};

std::vector<PreparedPair> prepare_pairs(const std::vector<TrainingPair>& pairs, int m);

/// Mean fidelity between each pair's target and the QAE output on its input.
///
/// In exact mode this is the analytic fidelity. With S shots each pair's
/// swap-test outcome count is drawn from Binomial(S, (1 + F) / 2), which is the
/// distribution of S runs of the training circuit, and the estimate
/// 2 zeros / S - 1 is used instead.
class CostFunction {
 public:
  CostFunction(Topology topology, std::vector<PreparedPair> pairs, Shots shots = kExact, std::uint64_t shot_seed = 0);

  const Topology& topology() const { return topology_; }
  const std::vector<PreparedPair>& pairs() const { return pairs_; }
  Shots shots() const { return shots_; }

  /// `stream` selects the shot-noise stream (ignored in exact mode), so that
  /// concurrent evaluations do not share a generator.
  double operator()(const CompiledQae& net, std::uint64_t stream = 0) const;
  double operator()(const ParameterVector& kappa, std::uint64_t stream = 0) const;

  std::uint64_t evaluations() const { return evaluations_.load(); }
  std::uint64_t circuit_executions() const { return executions_.load(); }
  void reset_counters() const;

 private:
  Topology topology_;
  std::vector<PreparedPair> pairs_;
  Shots shots_;
  std::uint64_t shot_seed_;
  mutable std::atomic<std::uint64_t> evaluations_{0};
  mutable std::atomic<std::uint64_t> executions_{0};
};

/// Convenience form of CostFunction for a one-off evaluation.
double cost(const ParameterVector& kappa, const std::vector<PreparedPair>& pairs, const Topology& topology,
            Shots shots, Rng& rng);

struct Gradient {
  double base_cost;  // C(kappa)
  ParameterVector values;
};

/// Forward differences (C(kappa + eps e_k) - C(kappa)) / eps. Makes exactly
/// |kappa| + 1 cost evaluations. Components run concurrently under OpenMP
/// when `parallel` is set; results are identical to the serial order.
Gradient grad_fd(const CostFunction& cost, const ParameterVector& kappa, double epsilon, std::uint64_t stream = 0,
                 bool parallel = true);

/// Central differences, diagnostic only (2 |kappa| evaluations).
ParameterVector grad_central(const CostFunction& cost, const ParameterVector& kappa, double epsilon);

/// kappa + eta grad
ParameterVector step_vanilla(const ParameterVector& kappa, const ParameterVector& grad, double eta);

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
  std::vector<double> m;
  std::vector<double> v;
  int t = 0;
};

/// Bias-corrected Adam step in the ascent direction; advances `state`.
ParameterVector step_adam(AdamState& state, const ParameterVector& kappa, const ParameterVector& grad, double eta,
                          const AdamParams& params = {});

enum class OptimizerKind { vanilla, adam };

struct TrainingConfig {
  double epsilon = 0.1;
  double eta = 0.25;
  Shots shots = kExact;
  int epochs = 150;
  int n_pairs = 100;
  int n_validation = 100;
  OptimizerKind optimizer = OptimizerKind::vanilla;
  AdamParams adam{};
  double init_stddev = 0.05;
  std::uint64_t seed = 0;
  bool parallel = true;

  void validate() const;
};

struct EpochRecord {
  int epoch;
  double train_fidelity;  // mean fidelity of outputs on training inputs vs clean GHZ
  double val_fidelity;    // same on the validation inputs
  double train_cost;      // C(kappa) at the start of the epoch (noisy targets)
  double elapsed_seconds;
};

using TrainingLog = std::vector<EpochRecord>;

struct TrainResult {
  QaeModel model;
  TrainingLog log;
  double initial_train_fidelity;
  std::uint64_t cost_evaluations;
  std::uint64_t circuit_executions;
};

/// Each epoch evaluates C(kappa) and the |kappa| perturbed costs, applies one
/// update, then logs training and validation fidelity. The validation pairs
/// are drawn once per run. All randomness derives from config.seed.
TrainResult train(const Topology& topology, const ChannelSpec& channel, const TrainingConfig& config);

/// Mean fidelity vs clean GHZ of the outputs on the inputs of `pairs`.
double clean_fidelity(const CompiledQae& net, const std::vector<PreparedPair>& pairs);

struct Evaluation {
  double mean;
  double stddev;
  std::vector<double> fidelities;
};

Evaluation summarize(std::vector<double> fidelities);

/// Draws n_states noisy GHZ inputs and scores each denoised output against the
/// clean GHZ. `passes` = 2 runs the network twice.
Evaluation evaluate(const QaeModel& model, const ChannelSpec& channel, int n_states, Rng& rng, int passes = 1);

/// As evaluate(), with a fresh coefficient perturbation of width sigma drawn
/// for every test state.
Evaluation evaluate_gate_noise(const QaeModel& model, const ChannelSpec& channel, double sigma, int n_states,
                               Rng& rng);

}  // namespace qae
