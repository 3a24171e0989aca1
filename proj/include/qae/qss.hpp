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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "qae/network.hpp"
#include "qae/noise.hpp"

namespace qae {

/// Measurement basis of one party. X is measured as H then Z; Y as S^dag, H, Z.
/// Outcome bit 0 means the + eigenstate, 1 the - eigenstate.
enum class Basis : std::uint8_t { X, Y };

/// Alice, Bob, Charlie.
using BasisTriple = std::array<Basis, 3>;
using BitTriple = std::array<int, 3>;

/// Even number of Y bases: XXX, YYX, XYY, YXY.
bool is_valid(const BasisTriple& bases);

/// Basis-change unitary applied before a computational-basis measurement.
UnitaryMatrix basis_rotation(Basis b);

/// Charlie's bit as inferred by Alice and Bob together:
/// XXX -> a xor b; two Y bases -> not (a xor b). Throws on an invalid triple.
int infer_charlie_bit(Basis basis_a, int bit_a, Basis basis_b, int bit_b, Basis basis_c);

/// Joint outcome distribution, index = 4 a + 2 b + c.
std::array<double, 8> outcome_distribution(const StateVector& psi, const BasisTriple& bases);
std::array<double, 8> outcome_distribution(const DensityMatrix& rho, const BasisTriple& bases);

struct QssRound {
  BasisTriple bases;
  BitTriple bits;
  bool valid;
  std::optional<int> inferred_charlie;
  std::optional<bool> failed;
};

enum class QssMode {
  clean,          // noiseless GHZ_3
  noisy,          // GHZ_3 hit by a sampled depolarizing syndrome
  denoised,       // noisy state passed through the QAE (exact density matrix)
  denoised_shot,  // same, through the shot-level circuit with resets
  generated,      // QAE output on |000>
};

std::string_view to_string(QssMode mode);
QssMode qss_mode_from_string(std::string_view text);

struct QssConfig {
  int rounds = 1000;
  double p = 0.0;
  QssMode mode = QssMode::noisy;
  std::optional<QaeModel> model;
  std::uint64_t seed = 0;

  /// Modes that use the QAE need a model with 3 input and 3 output qubits.
  void validate() const;
};

/// Runs rounds of one configuration. Holds the compiled network so that
/// repeated rounds do not rebuild it.
class QssProtocol {
 public:
  explicit QssProtocol(QssConfig config);

  const QssConfig& config() const { return config_; }
  QssRound run_round(Rng& rng) const;

 private:
  QssConfig config_;
  std::optional<CompiledQae> net_;
  std::optional<DensityMatrix> generated_;
};

QssRound run_round(const QssConfig& config, Rng& rng);

struct FailureRate {
  std::optional<double> rate;  // absent when no round was valid
  int rounds = 0;
  int valid_rounds = 0;
  int failures = 0;
};

/// Round r draws from its own stream derived from (config.seed, r).
FailureRate failure_rate(const QssConfig& config);

/// (p / 2)(p^2 - 3p + 3)
double theoretical_gamma(double p);

/// Failure probability conditioned on the Pauli error that hit Charlie's qubit.
struct GammaComponents {
  double I;
  double X;
  double Y;
  double Z;
};

GammaComponents gamma_components(double p);

/// Exact failure probability of one syndrome, averaged over the four valid
/// basis triples.
double syndrome_failure_probability(const Syndrome& s);

/// Sum over all 64 syndromes of their depolarizing probability times
/// syndrome_failure_probability(). No closed forms are used.
double brute_force_gamma(double p);

}  // namespace qae
