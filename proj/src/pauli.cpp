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

#include "qae/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qae {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
  }
}

PauliString::PauliString(std::string_view text) {
  letters_.reserve(text.size());
  for (char c : text) letters_.push_back(pauli_from_char(c));
}

PauliString PauliString::identity(int n_qubits) {
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(n_qubits), Pauli::I));
}

PauliString PauliString::from_index(std::uint64_t index, int n_qubits) {
  if (n_qubits < 0 || index >= pauli_count(n_qubits)) throw std::invalid_argument("Pauli index out of range");
  std::vector<Pauli> letters(static_cast<std::size_t>(n_qubits));
  for (int q = n_qubits - 1; q >= 0; --q) {
    letters[static_cast<std::size_t>(q)] = static_cast<Pauli>(index & 3U);
    index >>= 2;
  }
  return PauliString(std::move(letters));
}

std::uint64_t PauliString::index() const {
  std::uint64_t idx = 0;
  for (Pauli p : letters_) idx = (idx << 2) | static_cast<std::uint64_t>(p);
  return idx;
}

std::string PauliString::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Pauli p : letters_) out.push_back(to_char(p));
  return out;
}

// A Pauli string is a phased permutation: sigma|b> = i^{#Y} (-1)^{|b & zy|} |b ^ xy>,
// where xy marks X/Y qubits and zy marks Y/Z qubits.
void add_pauli_term(CMatrix& k, const PauliString& s, double coeff) {
  const int n = s.n_qubits();
  std::size_t flip = 0;
  std::size_t sign = 0;
  int n_y = 0;
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    switch (s[q]) {
      case Pauli::I: break;
      case Pauli::X: flip |= bit; break;
      case Pauli::Y:
        flip |= bit;
        sign |= bit;
        ++n_y;
        break;
      case Pauli::Z: sign |= bit; break;
    }
  }
  static constexpr Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = coeff * kPhase[n_y % 4];
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t col = 0; col < dim; ++col) {
    const Complex v = (std::popcount(col & sign) % 2 == 0) ? base : -base;
    k(static_cast<Eigen::Index>(col ^ flip), static_cast<Eigen::Index>(col)) += v;
  }
}

CMatrix pauli_matrix(const PauliString& s) {
  const auto dim = Eigen::Index{1} << s.n_qubits();
  CMatrix m = CMatrix::Zero(dim, dim);
  add_pauli_term(m, s, 1.0);
  return m;
}

CMatrix build_generator(std::span<const double> coeffs, int n_qubits) {
  if (n_qubits < 1 || coeffs.size() != pauli_count(n_qubits)) {
    throw std::invalid_argument("build_generator: expected " + std::to_string(pauli_count(n_qubits)) +
                                " coefficients, got " + std::to_string(coeffs.size()));
  }
  const auto dim = Eigen::Index{1} << n_qubits;
  CMatrix k = CMatrix::Zero(dim, dim);
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    if (coeffs[idx] == 0.0) continue;
    add_pauli_term(k, PauliString::from_index(idx, n_qubits), coeffs[idx]);
  }
  return k;
}

}  // namespace qae
