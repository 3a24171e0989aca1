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

#include <algorithm>
#include <array>
#include <span>
#include <vector>

namespace qae::kernels {
namespace {

inline std::size_t bit_of(int n_qubits, int q) { return std::size_t{1} << (n_qubits - 1 - q); }

// offsets[l] is the full-register index contribution of local index l, where
// qubits[0] is the most significant local bit.
std::vector<std::size_t> local_offsets(int n_qubits, const QubitList& qubits) {
  const std::size_t k = qubits.size();
  std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
  for (std::size_t l = 0; l < offsets.size(); ++l) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((l >> (k - 1 - j)) & 1U) off |= bit_of(n_qubits, qubits[j]);
    }
    offsets[l] = off;
  }
  return offsets;
}

std::size_t mask_of(int n_qubits, const QubitList& qubits) {
  std::size_t mask = 0;
  for (int q : qubits) mask |= bit_of(n_qubits, q);
  return mask;
}

QubitList complement(int n_qubits, const QubitList& qubits) {
  std::vector<bool> used(static_cast<std::size_t>(n_qubits), false);
  for (int q : qubits) used[static_cast<std::size_t>(q)] = true;
  QubitList rest;
  for (int q = 0; q < n_qubits; ++q) {
    if (!used[static_cast<std::size_t>(q)]) rest.push_back(q);
  }
  return rest;
}

// Applies `u` to every group {at(base + offsets[l])}, base in `bases`.
template <typename Access>
void apply_blocks(const CMatrix& u, std::span<const std::size_t> bases, const std::vector<std::size_t>& offsets,
                  Access&& at) {
  constexpr std::size_t kStack = 64;
  const std::size_t d = offsets.size();
  std::array<Complex, kStack> in_stack{}, out_stack{};
  std::vector<Complex> in_heap, out_heap;
  Complex* in = in_stack.data();
  Complex* out = out_stack.data();
  if (d > kStack) {
    in_heap.resize(d);
    out_heap.resize(d);
    in = in_heap.data();
    out = out_heap.data();
  }
  for (std::size_t base : bases) {
    for (std::size_t l = 0; l < d; ++l) in[l] = at(base + offsets[l]);
    for (std::size_t r = 0; r < d; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < d; ++c) {
        acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
      }
      out[r] = acc;
    }
    for (std::size_t l = 0; l < d; ++l) at(base + offsets[l]) = out[l];
  }
}

std::vector<std::size_t> block_bases(std::size_t dim, std::size_t mask) {
  std::vector<std::size_t> bases;
  bases.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) == 0) bases.push_back(i);
  }
  return bases;
}

}  // namespace

void apply_unitary(CVector& amplitudes, int n_qubits, const CMatrix& u, const QubitList& targets) {
  const auto offsets = local_offsets(n_qubits, targets);
  const auto bases = block_bases(static_cast<std::size_t>(amplitudes.size()), mask_of(n_qubits, targets));
  const bool parallel = static_cast<std::size_t>(amplitudes.size()) >= kParallelDim * 16;
  constexpr std::size_t kChunk = 256;
  const auto n_chunks = static_cast<std::ptrdiff_t>((bases.size() + kChunk - 1) / kChunk);
  const std::span<const std::size_t> all(bases);

#pragma omp parallel for if (parallel) schedule(static)
  for (std::ptrdiff_t c = 0; c < n_chunks; ++c) {
    const auto first = static_cast<std::size_t>(c) * kChunk;
    const auto count = std::min(kChunk, bases.size() - first);
    apply_blocks(u, all.subspan(first, count), offsets,
                 [&](std::size_t i) -> Complex& { return amplitudes[static_cast<Eigen::Index>(i)]; });
  }
}

void apply_unitary(CMatrix& rho, int n_qubits, const CMatrix& u, const QubitList& targets) {
  const auto dim = static_cast<std::size_t>(rho.rows());
  const auto offsets = local_offsets(n_qubits, targets);
  const auto bases = block_bases(dim, mask_of(n_qubits, targets));
  const CMatrix u_conj = u.conjugate();
  const auto n = static_cast<std::ptrdiff_t>(dim);
  const bool parallel = dim >= kParallelDim;

  // U rho: act on every column.
#pragma omp parallel for if (parallel) schedule(static)
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    apply_blocks(u, bases, offsets, [&](std::size_t i) -> Complex& { return rho(static_cast<Eigen::Index>(i), c); });
  }
  // (U rho) U^dag: each row r transforms as row <- conj(U) row.
#pragma omp parallel for if (parallel) schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    apply_blocks(u_conj, bases, offsets,
                 [&](std::size_t j) -> Complex& { return rho(r, static_cast<Eigen::Index>(j)); });
  }
}

CMatrix partial_trace(const CMatrix& rho, int n_qubits, const QubitList& keep) {
  const QubitList traced = complement(n_qubits, keep);
  const auto keep_off = local_offsets(n_qubits, keep);
  const auto trace_off = local_offsets(n_qubits, traced);
  const auto dk = static_cast<std::ptrdiff_t>(keep_off.size());
  CMatrix out = CMatrix::Zero(dk, dk);
  const bool parallel = static_cast<std::size_t>(rho.rows()) >= kParallelDim;

#pragma omp parallel for if (parallel) schedule(static)
  for (std::ptrdiff_t b = 0; b < dk; ++b) {
    for (std::ptrdiff_t a = 0; a < dk; ++a) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : trace_off) {
        acc += rho(static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(a)] + t),
                   static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(b)] + t));
      }
      out(a, b) = acc;
    }
  }
  return out;
}

CMatrix reset(const CMatrix& rho, int n_qubits, const QubitList& targets) {
  const QubitList kept = complement(n_qubits, targets);
  const auto keep_off = local_offsets(n_qubits, kept);
  const auto trace_off = local_offsets(n_qubits, targets);
  const auto dk = static_cast<std::ptrdiff_t>(keep_off.size());
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  const bool parallel = static_cast<std::size_t>(rho.rows()) >= kParallelDim;

#pragma omp parallel for if (parallel) schedule(static)
  for (std::ptrdiff_t b = 0; b < dk; ++b) {
    const auto col = static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(b)]);
    for (std::ptrdiff_t a = 0; a < dk; ++a) {
      const auto row = static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(a)]);
      Complex acc{0.0, 0.0};
      for (std::size_t t : trace_off) {
        acc += rho(row + static_cast<Eigen::Index>(t), col + static_cast<Eigen::Index>(t));
      }
      out(row, col) = acc;
    }
  }
  return out;
}

CMatrix append_zero_qubits(const CMatrix& rho, int k) {
  const Eigen::Index stride = Eigen::Index{1} << k;
  CMatrix out = CMatrix::Zero(rho.rows() * stride, rho.cols() * stride);
  for (Eigen::Index j = 0; j < rho.cols(); ++j) {
    for (Eigen::Index i = 0; i < rho.rows(); ++i) out(i * stride, j * stride) = rho(i, j);
  }
  return out;
}

}  // namespace qae::kernels
