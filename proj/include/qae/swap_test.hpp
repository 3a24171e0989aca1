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

#include <optional>

#include "qae/network.hpp"

namespace qae {

/// Number of circuit repetitions; std::nullopt selects the exact
/// (infinite-shot) evaluation.
using Shots = std::optional<int>;
inline constexpr Shots kExact = std::nullopt;

/// Qubit assignment of the full training circuit:
///   qubit 0                  swap-test ancilla
///   qubits 1 .. m_1          reference register (target state)
///   qubits m_1+1 .. Q-1      QAE register of width w
///
/// Layer i of the QAE occupies a contiguous run of the QAE register starting
/// where layer i-1 ended, wrapping modulo w. Consecutive layers therefore never
/// overlap, and earlier layers are reset before their qubits are reused.
struct CircuitLayout {
  explicit CircuitLayout(const Topology& topology);

  int n_qubits;
  int ancilla;
  QubitList reference;
  std::vector<QubitList> layers;  // absolute qubit indices per QAE layer
};

struct SwapTestResult {
  double p0;        // probability (exact) or frequency (shots) of reading 0
  double fidelity;  // 2 p0 - 1
  int zeros = 0;
  int shots = 0;    // 0 in exact mode
};

/// Runs the whole training circuit: state preparation, QAE with resets,
/// controlled-SWAP test between the reference register and the QAE output,
/// measurement of the ancilla. Requires m_l == m_1.
SwapTestResult swap_test(const QaeModel& model, const StateVector& input, const StateVector& target, Shots shots,
                         Rng& rng);

/// Returns 2 (#zeros / S) - 1, or 2 p0 - 1 in exact mode.
double swap_test_fidelity(const QaeModel& model, const StateVector& input, const StateVector& target, Shots shots,
                          Rng& rng);

}  // namespace qae
