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

#include "qae/network.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qae/kernels.hpp"
#include "qae/pauli.hpp"

namespace qae {

Topology::Topology(std::vector<int> layers) : layers_(std::move(layers)) {
  if (layers_.size() < 2) throw std::invalid_argument("topology needs at least two layers");
  for (int m : layers_) {
    if (m < 1) throw std::invalid_argument("topology layer sizes must be >= 1");
  }
  if (width() > kMaxQubits) throw std::invalid_argument("topology " + str() + " is too wide to simulate");
}

int Topology::width() const {
  int w = 0;
  for (std::size_t i = 0; i + 1 < layers_.size(); ++i) w = std::max(w, layers_[i] + layers_[i + 1]);
  return w;
}

int Topology::circuit_qubits() const { return 1 + input_size() + width(); }

std::size_t Topology::parameter_count() const {
  std::size_t total = 0;
  for (std::size_t i = 0; i + 1 < layers_.size(); ++i) {
    total += static_cast<std::size_t>(layers_[i + 1]) * pauli_count(layers_[i] + 1);
  }
  return total;
}

std::string Topology::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(layers_[i]);
  }
  return out + "]";
}

std::vector<PerceptronSlice> perceptron_slices(const Topology& t) {
  std::vector<PerceptronSlice> slices;
  std::size_t offset = 0;
  for (int i = 0; i + 1 < t.n_layers(); ++i) {
    const int n = t.layer(i) + 1;
    const auto size = static_cast<std::size_t>(pauli_count(n));
    for (int j = 0; j < t.layer(i + 1); ++j) {
      slices.push_back({i, j, n, offset, size});
      offset += size;
    }
  }
  return slices;
}

QaeModel::QaeModel(Topology topology_in, ParameterVector kappa_in, ModelMetadata metadata_in)
    : topology(std::move(topology_in)), kappa(std::move(kappa_in)), metadata(std::move(metadata_in)) {
  if (kappa.size() != topology.parameter_count()) {
    throw std::invalid_argument("topology " + topology.str() + " needs " + std::to_string(topology.parameter_count()) +
                                " coefficients, got " + std::to_string(kappa.size()));
  }
}

QaeModel QaeModel::zeros(const Topology& topology) {
  return {topology, ParameterVector(topology.parameter_count(), 0.0)};
}

QaeModel QaeModel::random(const Topology& topology, double stddev, Rng& rng) {
  std::normal_distribution<double> normal(0.0, stddev);
  ParameterVector kappa(topology.parameter_count());
  for (double& k : kappa) k = normal(rng);
  return {topology, std::move(kappa)};
}

UnitaryMatrix perceptron_unitary(std::span<const double> coeffs, int m) {
  if (coeffs.size() != pauli_count(m + 1)) {
    throw std::invalid_argument("perceptron on " + std::to_string(m) + " inputs needs " +
                                std::to_string(pauli_count(m + 1)) + " coefficients");
  }
  return expm_hermitian(build_generator(coeffs, m + 1));
}

CompiledQae::CompiledQae(const Topology& topology, std::span<const double> kappa)
    : topology_(topology), slices_(perceptron_slices(topology)) {
  if (kappa.size() != topology.parameter_count()) throw std::invalid_argument("parameter vector length mismatch");
  unitaries_.reserve(slices_.size());
  for (const auto& s : slices_) {
    unitaries_.push_back(perceptron_unitary(kappa.subspan(s.offset, s.size), s.n_qubits - 1));
  }
}

void CompiledQae::set_perceptron(std::size_t slice, std::span<const double> coeffs) {
  unitaries_.at(slice) = perceptron_unitary(coeffs, slices_.at(slice).n_qubits - 1);
}

namespace {

QubitList perceptron_targets(int m_in, int output) {
  QubitList targets(static_cast<std::size_t>(m_in));
  std::iota(targets.begin(), targets.end(), 0);
  targets.push_back(m_in + output);
  return targets;
}

QubitList range_list(int first, int count) {
  QubitList q(static_cast<std::size_t>(count));
  std::iota(q.begin(), q.end(), first);
  return q;
}

}  // namespace

DensityMatrix CompiledQae::run_transitions(DensityMatrix rho, int first_transition) const {
  std::size_t s = 0;
  while (s < slices_.size() && slices_[s].transition < first_transition) ++s;
  for (int i = first_transition; i + 1 < topology_.n_layers(); ++i) {
    const int m_in = topology_.layer(i);
    const int m_out = topology_.layer(i + 1);
    const int n = m_in + m_out;
    CMatrix m = kernels::append_zero_qubits(rho.matrix(), m_out);
    for (int j = 0; j < m_out; ++j, ++s) {
      kernels::apply_unitary(m, n, unitaries_[s].matrix(), perceptron_targets(m_in, j));
    }
    rho = DensityMatrix(m_out, kernels::partial_trace(m, n, range_list(m_in, m_out)));
  }
  return rho;
}

DensityMatrix CompiledQae::forward(const DensityMatrix& input) const {
  if (input.n_qubits() != topology_.input_size()) {
    throw std::invalid_argument("QAE input has " + std::to_string(input.n_qubits()) + " qubits, topology " +
                                topology_.str() + " expects " + std::to_string(topology_.input_size()));
  }
  return run_transitions(input, 0);
}

DensityMatrix CompiledQae::forward(const StateVector& input) const {
  if (input.n_qubits() != topology_.input_size()) {
    throw std::invalid_argument("QAE input has " + std::to_string(input.n_qubits()) + " qubits, topology " +
                                topology_.str() + " expects " + std::to_string(topology_.input_size()));
  }
  const int m_in = topology_.layer(0);
  const int m_out = topology_.layer(1);
  const int n = m_in + m_out;
  CVector amps = tensor(input, StateVector::zero(m_out)).amplitudes();
  for (int j = 0; j < m_out; ++j) kernels::apply_unitary(amps, n, unitaries_[static_cast<std::size_t>(j)].matrix(), perceptron_targets(m_in, j));
  const CMatrix joint = amps * amps.adjoint();
  DensityMatrix rho(m_out, kernels::partial_trace(joint, n, range_list(m_in, m_out)));
  return run_transitions(std::move(rho), 1);
}

StateVector CompiledQae::forward_shot(const StateVector& input, Rng& rng) const {
  if (input.n_qubits() != topology_.input_size()) throw std::invalid_argument("QAE input size mismatch");
  StateVector psi = input;
  std::size_t s = 0;
  for (int i = 0; i + 1 < topology_.n_layers(); ++i) {
    const int m_in = topology_.layer(i);
    const int m_out = topology_.layer(i + 1);
    const int n = m_in + m_out;
    CVector amps = tensor(psi, StateVector::zero(m_out)).amplitudes();
    for (int j = 0; j < m_out; ++j, ++s) kernels::apply_unitary(amps, n, unitaries_[s].matrix(), perceptron_targets(m_in, j));
    StateVector joint(n, std::move(amps));
    std::size_t outcome = 0;
    for (int q = 0; q < m_in; ++q) {
      auto meas = measure_qubit(joint, q, rng);
      outcome = (outcome << 1) | static_cast<std::size_t>(meas.bit);
      joint = std::move(meas.state);
    }
    // The inputs now sit in |outcome>; resetting them leaves the output block.
    const auto out_dim = Eigen::Index{1} << m_out;
    psi = StateVector(m_out, joint.amplitudes().segment(static_cast<Eigen::Index>(outcome) * out_dim, out_dim));
  }
  return psi;
}

DensityMatrix forward_exact(const QaeModel& model, const DensityMatrix& input) {
  return CompiledQae(model).forward(input);
}

DensityMatrix forward_exact(const QaeModel& model, const StateVector& input) {
  return CompiledQae(model).forward(input);
}

StateVector forward_shot(const QaeModel& model, const StateVector& input, Rng& rng) {
  return CompiledQae(model).forward_shot(input, rng);
}

DensityMatrix generate(const QaeModel& model) {
  return forward_exact(model, StateVector::zero(model.topology.input_size()));
}

DensityMatrix apply_twice(const QaeModel& model, const DensityMatrix& input) {
  if (model.topology.input_size() != model.topology.output_size()) {
    throw std::invalid_argument("apply_twice needs matching input and output sizes, got " + model.topology.str());
  }
  const CompiledQae net(model);
  return net.forward(net.forward(input));
}

QaeModel perturb_parameters(const QaeModel& model, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("gate noise sigma must be >= 0");
  QaeModel out = model;
  if (sigma == 0.0) return out;
  std::normal_distribution<double> normal(0.0, sigma);
  for (double& k : out.kappa) k += normal(rng);
  return out;
}

}  // namespace qae
