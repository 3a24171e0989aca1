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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qae/noise.hpp"
#include "qae/rng.hpp"
#include "qae/state.hpp"

namespace qae {

/// Layer sizes [m_1, ..., m_l] of a quantum autoencoder.
class Topology {
 public:
  /// Requires at least two layers, every layer >= 1 qubit, and every pair of
  /// consecutive layers to fit in kMaxQubits.
  explicit Topology(std::vector<int> layers);

  const std::vector<int>& layers() const { return layers_; }
  int n_layers() const { return static_cast<int>(layers_.size()); }
  int layer(int i) const { return layers_[static_cast<std::size_t>(i)]; }
  int input_size() const { return layers_.front(); }
  int output_size() const { return layers_.back(); }

  /// max_i (m_i + m_{i+1})
  int width() const;
  /// 1 + m_1 + width(): ancilla, reference register, QAE register.
  int circuit_qubits() const;
  /// sum_i m_{i+1} 4^{m_i + 1}
  std::size_t parameter_count() const;

  std::string str() const;
  bool operator==(const Topology&) const = default;

 private:
  std::vector<int> layers_;
};

struct CircuitSize {
  int width;
  int qubits;
};

inline std::size_t parameter_count(const Topology& t) { return t.parameter_count(); }
inline CircuitSize circuit_qubits(const Topology& t) { return {t.width(), t.circuit_qubits()}; }

/// Location of one perceptron's coefficients inside the flat parameter vector.
///
/// Perceptron j of transition i acts on the m_i input qubits (its own qubits
/// 0..m_i-1) and output qubit j (its own qubit m_i). Slices are laid out
/// transition by transition, then by ascending output qubit.
struct PerceptronSlice {
  int transition;
  int output;
  int n_qubits;
  std::size_t offset;
  std::size_t size;
};

std::vector<PerceptronSlice> perceptron_slices(const Topology& t);

/// Flat vector of every k_sigma, ordered by perceptron slice then by base-4
/// Pauli index.
using ParameterVector = std::vector<double>;

struct ModelMetadata {
  std::optional<ChannelSpec> channel;
  std::uint64_t seed = 0;
  int epochs = 0;
  std::optional<double> final_fidelity;
};

struct QaeModel {
  QaeModel(Topology topology, ParameterVector kappa, ModelMetadata metadata = {});

  static QaeModel zeros(const Topology& topology);
  /// Independent N(0, stddev^2) coefficients.
  static QaeModel random(const Topology& topology, double stddev, Rng& rng);

  Topology topology;
  ParameterVector kappa;
  ModelMetadata metadata;
};

/// exp(i sum_sigma k_sigma sigma) on m + 1 qubits.
UnitaryMatrix perceptron_unitary(std::span<const double> coeffs, int m);

/// A model with all perceptron unitaries materialized.
class CompiledQae {
 public:
  CompiledQae(const Topology& topology, std::span<const double> kappa);
  explicit CompiledQae(const QaeModel& model) : CompiledQae(model.topology, model.kappa) {}

  const Topology& topology() const { return topology_; }
  const std::vector<PerceptronSlice>& slices() const { return slices_; }
  const UnitaryMatrix& unitary(std::size_t slice) const { return unitaries_[slice]; }

  /// Rebuilds one perceptron from its coefficient slice.
  void set_perceptron(std::size_t slice, std::span<const double> coeffs);

  /// Exact forward pass: per transition, append m_{i+1} zero qubits, apply
  /// U_1 ... U_{m_{i+1}} in order, trace out the m_i inputs.
  DensityMatrix forward(const DensityMatrix& input) const;
  /// Same result for a pure input; the first transition runs on amplitudes.
  DensityMatrix forward(const StateVector& input) const;

  /// One shot: each discarded qubit is measured and reset, so the output is a
  /// pure state. Averaging shots reproduces forward().
  StateVector forward_shot(const StateVector& input, Rng& rng) const;

 private:
  DensityMatrix run_transitions(DensityMatrix rho, int first_transition) const;

  Topology topology_;
  std::vector<PerceptronSlice> slices_;
  std::vector<UnitaryMatrix> unitaries_;
};

DensityMatrix forward_exact(const QaeModel& model, const DensityMatrix& input);
DensityMatrix forward_exact(const QaeModel& model, const StateVector& input);
StateVector forward_shot(const QaeModel& model, const StateVector& input, Rng& rng);

/// Output on |0...0> input.
DensityMatrix generate(const QaeModel& model);

/// forward_exact applied twice; needs m_l == m_1.
DensityMatrix apply_twice(const QaeModel& model, const DensityMatrix& input);

/// Every k_sigma shifted by an independent N(0, sigma^2) draw; the unitaries
/// become exp(i (K + delta)).
QaeModel perturb_parameters(const QaeModel& model, double sigma, Rng& rng);

}  // namespace qae
