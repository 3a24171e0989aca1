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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qae/state.hpp"

namespace qae {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// One Pauli letter per qubit, qubit 0 first.
///
/// index() is the base-4 number with I=0, X=1, Y=2, Z=3 and qubit 0 as the
/// most significant digit. This ordering is the canonical coefficient order of
/// persisted models.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {}
  /// Parses e.g. "XIZ".
  explicit PauliString(std::string_view text);

  static PauliString identity(int n_qubits);
  static PauliString from_index(std::uint64_t index, int n_qubits);

  int n_qubits() const { return static_cast<int>(letters_.size()); }
  Pauli operator[](int q) const { return letters_[static_cast<std::size_t>(q)]; }
  Pauli& operator[](int q) { return letters_[static_cast<std::size_t>(q)]; }
  const std::vector<Pauli>& letters() const { return letters_; }

  std::uint64_t index() const;
  std::string str() const;

  bool operator==(const PauliString&) const = default;

 private:
  std::vector<Pauli> letters_;
};

inline std::uint64_t pauli_count(int n_qubits) { return std::uint64_t{1} << (2 * n_qubits); }

/// Dense Hermitian, unitary matrix of the tensor product, qubit 0 leftmost.
CMatrix pauli_matrix(const PauliString& s);

/// K = sum_sigma coeffs[index(sigma)] * sigma over n qubits. Zero coefficients
/// are skipped.
CMatrix build_generator(std::span<const double> coeffs, int n_qubits);

/// Adds coeff * sigma to k in place (k is 2^n square).
void add_pauli_term(CMatrix& k, const PauliString& s, double coeff);

}  // namespace qae
