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

// Dense simulation kernels. Inputs are assumed valid (the checked API lives in
// state.hpp). Two implementations are kept side by side:
//
//   qae::kernels    index-gather kernels, OpenMP-parallel over independent
//                   blocks once the Hilbert space is large enough;
//   qae::reference  serial textbook versions that build the full embedded
//                   operator by explicit Kronecker indexing. Used by tests and
//                   benchmarks only.

#include <cstddef>

#include "qae/state.hpp"

namespace qae::kernels {

/// Below this dimension the OpenMP regions run single-threaded.
inline constexpr std::size_t kParallelDim = 64;

void apply_unitary(CVector& amplitudes, int n_qubits, const CMatrix& u, const QubitList& targets);

/// rho <- U rho U^dag with U embedded on `targets`.
void apply_unitary(CMatrix& rho, int n_qubits, const CMatrix& u, const QubitList& targets);

CMatrix partial_trace(const CMatrix& rho, int n_qubits, const QubitList& keep);

CMatrix reset(const CMatrix& rho, int n_qubits, const QubitList& targets);

CMatrix append_zero_qubits(const CMatrix& rho, int k);

}  // namespace qae::kernels

namespace qae::reference {

/// Full 2^n x 2^n operator for `u` acting on `targets`.
CMatrix embed(const CMatrix& u, int n_qubits, const QubitList& targets);

CVector apply_unitary(const CVector& amplitudes, int n_qubits, const CMatrix& u, const QubitList& targets);
CMatrix apply_unitary(const CMatrix& rho, int n_qubits, const CMatrix& u, const QubitList& targets);
CMatrix partial_trace(const CMatrix& rho, int n_qubits, const QubitList& keep);

}  // namespace qae::reference
