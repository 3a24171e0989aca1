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

#include "qae/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace qae {
namespace {

void check_m_p(int m, double p) {
  if (m < 2) throw std::invalid_argument("theoretical fidelity needs m >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise strength p outside [0, 1]");
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

const UnitaryMatrix& single_qubit(Pauli p) {
  static const UnitaryMatrix kGates[4] = {gates::I(), gates::X(), gates::Y(), gates::Z()};
  return kGates[static_cast<int>(p)];
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
  return kind == ChannelKind::bitflip ? "bitflip" : "depolarizing";
}

ChannelKind channel_kind_from_string(std::string_view text) {
  if (text == "bitflip" || text == "bit-flip") return ChannelKind::bitflip;
  if (text == "depolarizing" || text == "qdc") return ChannelKind::depolarizing;
  throw std::invalid_argument("unknown channel kind '" + std::string(text) + "'");
}

void ChannelSpec::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("channel p=" + std::to_string(p) + " outside [0, 1]");
}

Syndrome sample_syndrome(const ChannelSpec& spec, int m, Rng& rng) {
  spec.validate();
  std::vector<Pauli> letters(static_cast<std::size_t>(m), Pauli::I);
  for (auto& letter : letters) {
    const double u = uniform01(rng);
    if (spec.kind == ChannelKind::bitflip) {
      letter = u < spec.p ? Pauli::X : Pauli::I;
    } else {
      const double q = spec.p / 4.0;
      if (u < q) {
        letter = Pauli::X;
      } else if (u < 2.0 * q) {
        letter = Pauli::Y;
      } else if (u < 3.0 * q) {
        letter = Pauli::Z;
      }
    }
  }
  return Syndrome(std::move(letters));
}

double syndrome_probability(const ChannelSpec& spec, const Syndrome& s) {
  double prob = 1.0;
  for (Pauli letter : s.letters()) {
    if (spec.kind == ChannelKind::bitflip) {
      if (letter == Pauli::I) {
        prob *= 1.0 - spec.p;
      } else if (letter == Pauli::X) {
        prob *= spec.p;
      } else {
        return 0.0;
      }
    } else {
      prob *= letter == Pauli::I ? 1.0 - 0.75 * spec.p : 0.25 * spec.p;
    }
  }
  return prob;
}

std::vector<Syndrome> all_syndromes(int m) {
  std::vector<Syndrome> out;
  out.reserve(pauli_count(m));
  for (std::uint64_t i = 0; i < pauli_count(m); ++i) out.push_back(PauliString::from_index(i, m));
  return out;
}

StateVector apply_syndrome(const StateVector& state, const Syndrome& s) {
  if (s.n_qubits() != state.n_qubits()) throw std::invalid_argument("syndrome length does not match state");
  StateVector out = state;
  for (int q = 0; q < s.n_qubits(); ++q) {
    if (s[q] != Pauli::I) out = apply_unitary(out, single_qubit(s[q]), {q});
  }
  return out;
}

DensityMatrix apply_syndrome(const DensityMatrix& rho, const Syndrome& s) {
  if (s.n_qubits() != rho.n_qubits()) throw std::invalid_argument("syndrome length does not match state");
  DensityMatrix out = rho;
  for (int q = 0; q < s.n_qubits(); ++q) {
    if (s[q] != Pauli::I) out = apply_unitary(out, single_qubit(s[q]), {q});
  }
  return out;
}

DensityMatrix depolarize_exact(const DensityMatrix& rho, double p) {
  ChannelSpec{ChannelKind::depolarizing, p}.validate();
  CMatrix m = rho.matrix();
  for (int q = 0; q < rho.n_qubits(); ++q) {
    CMatrix mixed = (1.0 - 0.75 * p) * m;
    const DensityMatrix current(rho.n_qubits(), m);
    for (Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z}) {
      mixed += 0.25 * p * apply_unitary(current, single_qubit(letter), {q}).matrix();
    }
    m = std::move(mixed);
  }
  return {rho.n_qubits(), std::move(m)};
}

DensityMatrix bitflip_exact(const DensityMatrix& rho, double p) {
  ChannelSpec{ChannelKind::bitflip, p}.validate();
  DensityMatrix out = rho;
  for (int q = 0; q < rho.n_qubits(); ++q) {
    const DensityMatrix flipped = apply_unitary(out, gates::X(), {q});
    out = DensityMatrix(rho.n_qubits(), (1.0 - p) * out.matrix() + p * flipped.matrix());
  }
  return out;
}

DensityMatrix apply_channel_exact(const DensityMatrix& rho, const ChannelSpec& spec) {
  return spec.kind == ChannelKind::bitflip ? bitflip_exact(rho, spec.p) : depolarize_exact(rho, spec.p);
}

double theoretical_fidelity_bitflip(int m, double p) {
  check_m_p(m, p);
  return std::pow(1.0 - p, m) + std::pow(p, m);
}

double theoretical_fidelity_qdc(int m, double p) {
  check_m_p(m, p);
  const double q = p / 4.0;
  double total = 0.0;
  for (int k = 0; k <= m; k += 2) total += binomial(m, k) * std::pow(q, k) * std::pow(1.0 - 3.0 * q, m - k);
  return total + std::pow(2.0, m - 1) * std::pow(q, m);
}

double theoretical_fidelity(const ChannelSpec& spec, int m) {
  return spec.kind == ChannelKind::bitflip ? theoretical_fidelity_bitflip(m, spec.p)
                                           : theoretical_fidelity_qdc(m, spec.p);
}

}  // namespace qae
