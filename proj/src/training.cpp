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

#include "qae/training.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qae {

std::vector<TrainingPair> make_pairs(const ChannelSpec& channel, int m, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("make_pairs needs n >= 1");
  channel.validate();
  std::vector<TrainingPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Syndrome in = sample_syndrome(channel, m, rng);
    Syndrome target = sample_syndrome(channel, m, rng);
    pairs.push_back({std::move(in), std::move(target)});
  }
  return pairs;
}

std::vector<PreparedPair> prepare_pairs(const std::vector<TrainingPair>& pairs, int m) {
  const StateVector ghz = ghz_state(m);
  std::vector<PreparedPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back({apply_syndrome(ghz, p.input_syndrome), apply_syndrome(ghz, p.target_syndrome)});
  return out;
}

CostFunction::CostFunction(Topology topology, std::vector<PreparedPair> pairs, Shots shots, std::uint64_t shot_seed)
    : topology_(std::move(topology)), pairs_(std::move(pairs)), shots_(shots), shot_seed_(shot_seed) {
  if (pairs_.empty()) throw std::invalid_argument("cost needs at least one pair");
  if (shots_ && *shots_ < 1) throw std::invalid_argument("cost needs at least one shot");
  for (const auto& p : pairs_) {
    if (p.input.n_qubits() != topology_.input_size() || p.target.n_qubits() != topology_.output_size()) {
      throw std::invalid_argument("training pair does not match topology " + topology_.str());
    }
  }
}

double CostFunction::operator()(const CompiledQae& net, std::uint64_t stream) const {
  ++evaluations_;
  double total = 0.0;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const double f = fidelity(pairs_[i].target, net.forward(pairs_[i].input));
    if (!shots_) {
      total += f;
      continue;
    }
    Rng rng = make_rng(shot_seed_, {stream, i});
    std::binomial_distribution<int> zeros(*shots_, 0.5 * (1.0 + f));
    total += 2.0 * static_cast<double>(zeros(rng)) / static_cast<double>(*shots_) - 1.0;
    executions_ += static_cast<std::uint64_t>(*shots_);
  }
  return total / static_cast<double>(pairs_.size());
}

double CostFunction::operator()(const ParameterVector& kappa, std::uint64_t stream) const {
  return (*this)(CompiledQae(topology_, kappa), stream);
}

void CostFunction::reset_counters() const {
  evaluations_ = 0;
  executions_ = 0;
}

double cost(const ParameterVector& kappa, const std::vector<PreparedPair>& pairs, const Topology& topology, Shots shots,
            Rng& rng) {
  const CostFunction c(topology, pairs, shots, rng());
  return c(kappa);
}

Gradient grad_fd(const CostFunction& cost, const ParameterVector& kappa, double epsilon, std::uint64_t stream,
                 bool parallel) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("finite-difference step must be > 0");
  const CompiledQae base(cost.topology(), kappa);
  const double c0 = cost(base, derive_seed(stream, {0}));
  const auto& slices = base.slices();

  // Map every coefficient to the perceptron it belongs to.
  std::vector<std::size_t> owner(kappa.size());
  for (std::size_t s = 0; s < slices.size(); ++s) {
    for (std::size_t k = 0; k < slices[s].size; ++k) owner[slices[s].offset + k] = s;
  }

  ParameterVector grad(kappa.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(kappa.size());
#pragma omp parallel for if (parallel) schedule(dynamic, 4)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const PerceptronSlice& slice = slices[owner[idx]];
    std::vector<double> coeffs(kappa.begin() + static_cast<std::ptrdiff_t>(slice.offset),
                               kappa.begin() + static_cast<std::ptrdiff_t>(slice.offset + slice.size));
    coeffs[idx - slice.offset] += epsilon;
    CompiledQae shifted = base;
    shifted.set_perceptron(owner[idx], coeffs);
    grad[idx] = (cost(shifted, derive_seed(stream, {idx + 1})) - c0) / epsilon;
  }
  return {c0, std::move(grad)};
}

ParameterVector grad_central(const CostFunction& cost, const ParameterVector& kappa, double epsilon) {
  ParameterVector grad(kappa.size());
  for (std::size_t k = 0; k < kappa.size(); ++k) {
    ParameterVector plus = kappa, minus = kappa;
    plus[k] += epsilon;
    minus[k] -= epsilon;
    grad[k] = (cost(plus) - cost(minus)) / (2.0 * epsilon);
  }
  return grad;
}

ParameterVector step_vanilla(const ParameterVector& kappa, const ParameterVector& grad, double eta) {
  if (kappa.size() != grad.size()) throw std::invalid_argument("step: gradient length mismatch");
  ParameterVector out(kappa.size());
  for (std::size_t k = 0; k < kappa.size(); ++k) out[k] = kappa[k] + eta * grad[k];
  return out;
}

ParameterVector step_adam(AdamState& state, const ParameterVector& kappa, const ParameterVector& grad, double eta,
                          const AdamParams& params) {
  if (kappa.size() != grad.size() || state.m.size() != kappa.size()) {
    throw std::invalid_argument("adam step: length mismatch");
  }
  ++state.t;
  const double c1 = 1.0 - std::pow(params.beta1, state.t);
  const double c2 = 1.0 - std::pow(params.beta2, state.t);
  ParameterVector out(kappa.size());
  for (std::size_t k = 0; k < kappa.size(); ++k) {
    state.m[k] = params.beta1 * state.m[k] + (1.0 - params.beta1) * grad[k];
    state.v[k] = params.beta2 * state.v[k] + (1.0 - params.beta2) * grad[k] * grad[k];
    const double m_hat = state.m[k] / c1;
    const double v_hat = state.v[k] / c2;
    out[k] = kappa[k] + eta * m_hat / (std::sqrt(v_hat) + params.epsilon);
  }
  return out;
}

void TrainingConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("training epsilon must be > 0");
  if (!(eta > 0.0)) throw std::invalid_argument("training eta must be > 0");
  if (shots && *shots < 1) throw std::invalid_argument("training shots must be >= 1");
  if (epochs < 0) throw std::invalid_argument("training epochs must be >= 0");
  if (n_pairs < 1) throw std::invalid_argument("training n_pairs must be >= 1");
  if (n_validation < 1) throw std::invalid_argument("training n_validation must be >= 1");
  if (!(init_stddev >= 0.0)) throw std::invalid_argument("training init_stddev must be >= 0");
}

double clean_fidelity(const CompiledQae& net, const std::vector<PreparedPair>& pairs) {
  const StateVector ghz = ghz_state(net.topology().output_size());
  double total = 0.0;
  for (const auto& p : pairs) total += fidelity(ghz, net.forward(p.input));
  return total / static_cast<double>(pairs.size());
}

TrainResult train(const Topology& topology, const ChannelSpec& channel, const TrainingConfig& config) {
  config.validate();
  channel.validate();
  const int m = topology.input_size();

  Rng init_rng = make_rng(config.seed, {stream::kInit});
  QaeModel model = QaeModel::random(topology, config.init_stddev, init_rng);
  model.metadata = {channel, config.seed, 0, std::nullopt};

  Rng pair_rng = make_rng(config.seed, {stream::kTrainPairs});
  Rng val_rng = make_rng(config.seed, {stream::kValidationPairs});
  const CostFunction cost(topology, prepare_pairs(make_pairs(channel, m, config.n_pairs, pair_rng), m), config.shots,
                          derive_seed(config.seed, {stream::kShots}));
  const auto validation = prepare_pairs(make_pairs(channel, m, config.n_validation, val_rng), m);

  const double initial = clean_fidelity(CompiledQae(model), cost.pairs());
  AdamState adam(model.kappa.size());
  TrainingLog log;
  const auto start = std::chrono::steady_clock::now();

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const Gradient g = grad_fd(cost, model.kappa, config.epsilon, static_cast<std::uint64_t>(epoch), config.parallel);
    model.kappa = config.optimizer == OptimizerKind::adam ? step_adam(adam, model.kappa, g.values, config.eta, config.adam)
                                                          : step_vanilla(model.kappa, g.values, config.eta);
    const CompiledQae net(model);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log.push_back({epoch, clean_fidelity(net, cost.pairs()), clean_fidelity(net, validation), g.base_cost, elapsed});
  }

  model.metadata.epochs = config.epochs;
  model.metadata.final_fidelity = log.empty() ? initial : log.back().train_fidelity;
  return {std::move(model), std::move(log), initial, cost.evaluations(), cost.circuit_executions()};
}

Evaluation summarize(std::vector<double> fidelities) {
  Evaluation e{0.0, 0.0, std::move(fidelities)};
  if (e.fidelities.empty()) return e;
  const double n = static_cast<double>(e.fidelities.size());
  e.mean = std::accumulate(e.fidelities.begin(), e.fidelities.end(), 0.0) / n;
  double ss = 0.0;
  for (double f : e.fidelities) ss += (f - e.mean) * (f - e.mean);
  e.stddev = e.fidelities.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return e;
}

Evaluation evaluate(const QaeModel& model, const ChannelSpec& channel, int n_states, Rng& rng, int passes) {
  if (n_states < 1) throw std::invalid_argument("evaluate needs n_states >= 1");
  if (passes < 1) throw std::invalid_argument("evaluate needs passes >= 1");
  if (passes > 1 && model.topology.input_size() != model.topology.output_size()) {
    throw std::invalid_argument("repeated application needs matching input and output sizes");
  }
  channel.validate();
  const CompiledQae net(model);
  const int m = model.topology.input_size();
  const StateVector ghz = ghz_state(m);
  const StateVector ghz_out = ghz_state(model.topology.output_size());
  std::vector<double> fids;
  fids.reserve(static_cast<std::size_t>(n_states));
  for (int i = 0; i < n_states; ++i) {
    DensityMatrix out = net.forward(apply_syndrome(ghz, sample_syndrome(channel, m, rng)));
    for (int k = 1; k < passes; ++k) out = net.forward(out);
    fids.push_back(fidelity(ghz_out, out));
  }
  return summarize(std::move(fids));
}

Evaluation evaluate_gate_noise(const QaeModel& model, const ChannelSpec& channel, double sigma, int n_states,
                               Rng& rng) {
  if (n_states < 1) throw std::invalid_argument("evaluate needs n_states >= 1");
  channel.validate();
  const int m = model.topology.input_size();
  const StateVector ghz = ghz_state(m);
  const StateVector ghz_out = ghz_state(model.topology.output_size());
  std::vector<double> fids;
  fids.reserve(static_cast<std::size_t>(n_states));
  for (int i = 0; i < n_states; ++i) {
    const CompiledQae net(perturb_parameters(model, sigma, rng));
    fids.push_back(fidelity(ghz_out, net.forward(apply_syndrome(ghz, sample_syndrome(channel, m, rng)))));
  }
  return summarize(std::move(fids));
}

}  // namespace qae
