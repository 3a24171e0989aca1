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

#include "qae/kernels.hpp"

namespace qae::reference {
namespace {

int bit_at(std::size_t index, int n_qubits, int q) { return static_cast<int>((index >> (n_qubits - 1 - q)) & 1U); }

std::size_t local_index(std::size_t index, int n_qubits, const QubitList& qubits) {
  std::size_t l = 0;
  for (int q : qubits) l = (l << 1) | static_cast<std::size_t>(bit_at(index, n_qubits, q));
  return l;
}

bool contains(const QubitList& qubits, int q) {
  for (int t : qubits) {
    if (t == q) return true;
  }
  return false;
}

}  // namespace

CMatrix embed(const CMatrix& u, int n_qubits, const QubitList& targets) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  CMatrix full = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      bool spectators_match = true;
      for (int q = 0; q < n_qubits; ++q) {
        if (!contains(targets, q) && bit_at(i, n_qubits, q) != bit_at(j, n_qubits, q)) {
          spectators_match = false;
          break;
        }
      }
      if (!spectators_match) continue;
      full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          u(static_cast<Eigen::Index>(local_index(i, n_qubits, targets)),
            static_cast<Eigen::Index>(local_index(j, n_qubits, targets)));
    }
  }
  return full;
}

CVector apply_unitary(const CVector& amplitudes, int n_qubits, const CMatrix& u, const QubitList& targets) {
  return embed(u, n_qubits, targets) * amplitudes;
}

CMatrix apply_unitary(const CMatrix& rho, int n_qubits, const CMatrix& u, const QubitList& targets) {
  const CMatrix full = embed(u, n_qubits, targets);
  return full * rho * full.adjoint();
}

CMatrix partial_trace(const CMatrix& rho, int n_qubits, const QubitList& keep) {
  QubitList traced;
  for (int q = 0; q < n_qubits; ++q) {
    if (!contains(keep, q)) traced.push_back(q);
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  const auto dk = Eigen::Index{1} << keep.size();
  CMatrix out = CMatrix::Zero(dk, dk);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (local_index(i, n_qubits, traced) != local_index(j, n_qubits, traced)) continue;
      out(static_cast<Eigen::Index>(local_index(i, n_qubits, keep)),
          static_cast<Eigen::Index>(local_index(j, n_qubits, keep))) +=
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

}  // namespace qae::reference
