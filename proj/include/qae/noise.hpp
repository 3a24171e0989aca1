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

#include <string>
#include <string_view>
#include <vector>

#include "qae/pauli.hpp"
#include "qae/rng.hpp"
#include "qae/state.hpp"

namespace qae {

/// The Pauli error that hit each qubit in one channel sample.
using Syndrome = PauliString;

enum class ChannelKind { bitflip, depolarizing };

std::string_view to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(std::string_view text);

struct ChannelSpec {
  ChannelKind kind = ChannelKind::depolarizing;
  double p = 0.0;

  /// Throws std::invalid_argument unless 0 <= p <= 1.
  void validate() const;
};

/// Bit-flip: X with probability p, else I. Depolarizing: I, X, Y, Z with
/// probabilities 1 - 3p/4, p/4, p/4, p/4. Qubits are independent.
Syndrome sample_syndrome(const ChannelSpec& spec, int m, Rng& rng);

/// Probability that `spec` produces exactly `s`.
double syndrome_probability(const ChannelSpec& spec, const Syndrome& s);

/// All 4^m Pauli patterns in canonical index order.
std::vector<Syndrome> all_syndromes(int m);

StateVector apply_syndrome(const StateVector& state, const Syndrome& s);
DensityMatrix apply_syndrome(const DensityMatrix& rho, const Syndrome& s);

/// Per-qubit depolarization rho_q -> (1 - 3p/4) rho_q + p/4 (X rho X + Y rho Y + Z rho Z)
/// applied independently to every qubit.
DensityMatrix depolarize_exact(const DensityMatrix& rho, double p);

/// Per-qubit bit flip rho_q -> (1 - p) rho_q + p X rho_q X.
DensityMatrix bitflip_exact(const DensityMatrix& rho, double p);

DensityMatrix apply_channel_exact(const DensityMatrix& rho, const ChannelSpec& spec);

/// GHZ_m fidelity after the bit-flip channel: (1 - p)^m + p^m.
double theoretical_fidelity_bitflip(int m, double p);

/// GHZ_m fidelity after per-qubit depolarization:
///   sum_{k even} C(m, k) (p/4)^k (1 - 3p/4)^(m-k) + 2^(m-1) (p/4)^m.
double theoretical_fidelity_qdc(int m, double p);

double theoretical_fidelity(const ChannelSpec& spec, int m);

}  // namespace qae
