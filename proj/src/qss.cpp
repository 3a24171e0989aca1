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

#include "qae/qss.hpp"

#include <stdexcept>
#include <string>

#include "qae/kernels.hpp"

namespace qae {
namespace {

constexpr std::array<BasisTriple, 4> kValidTriples = {{
    {Basis::X, Basis::X, Basis::X},
    {Basis::Y, Basis::Y, Basis::X},
    {Basis::X, Basis::Y, Basis::Y},
    {Basis::Y, Basis::X, Basis::Y},
}};

int sample_index(const std::array<double, 8>& dist, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    acc += dist[static_cast<std::size_t>(i)];
    if (u < acc) return i;
  }
  // Rounding left u above the running total; take the last outcome with mass.
  for (int i = 7; i >= 0; --i) {
    if (dist[static_cast<std::size_t>(i)] > 0.0) return i;
  }
  return 7;
}

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("QSS noise strength p outside [0, 1]");
}

}  // namespace

bool is_valid(const BasisTriple& bases) {
  int n_y = 0;
  for (Basis b : bases) n_y += b == Basis::Y ? 1 : 0;
  return n_y % 2 == 0;
}

UnitaryMatrix basis_rotation(Basis b) {
  if (b == Basis::X) return gates::H();
  return UnitaryMatrix(1, gates::H().matrix() * gates::Sdg().matrix());
}

int infer_charlie_bit(Basis basis_a, int bit_a, Basis basis_b, int bit_b, Basis basis_c) {
  const BasisTriple bases{basis_a, basis_b, basis_c};
  if (!is_valid(bases)) throw std::invalid_argument("basis triple has an odd number of Y measurements");
  const int parity = (bit_a ^ bit_b) & 1;
  return basis_a == Basis::X && basis_b == Basis::X && basis_c == Basis::X ? parity : 1 - parity;
}

std::array<double, 8> outcome_distribution(const StateVector& psi, const BasisTriple& bases) {
  if (psi.n_qubits() != 3) throw std::invalid_argument("QSS state must have 3 qubits");
  CVector amps = psi.amplitudes();
  for (int q = 0; q < 3; ++q) kernels::apply_unitary(amps, 3, basis_rotation(bases[static_cast<std::size_t>(q)]).matrix(), {q});
  std::array<double, 8> dist{};
  for (int i = 0; i < 8; ++i) dist[static_cast<std::size_t>(i)] = std::norm(amps[i]);
  return dist;
}

std::array<double, 8> outcome_distribution(const DensityMatrix& rho, const BasisTriple& bases) {
  if (rho.n_qubits() != 3) throw std::invalid_argument("QSS state must have 3 qubits");
  CMatrix m = rho.matrix();
  for (int q = 0; q < 3; ++q) kernels::apply_unitary(m, 3, basis_rotation(bases[static_cast<std::size_t>(q)]).matrix(), {q});
  std::array<double, 8> dist{};
  for (int i = 0; i < 8; ++i) dist[static_cast<std::size_t>(i)] = std::max(0.0, m(i, i).real());
  return dist;
}

std::string_view to_string(QssMode mode) {
  switch (mode) {
    case QssMode::clean: return "clean";
    case QssMode::noisy: return "noisy";
    case QssMode::denoised: return "denoised";
    case QssMode::denoised_shot: return "denoised_shot";
    case QssMode::generated: return "generated";
  }
  return "?";
}

QssMode qss_mode_from_string(std::string_view text) {
  for (QssMode m : {QssMode::clean, QssMode::noisy, QssMode::denoised, QssMode::denoised_shot, QssMode::generated}) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown QSS mode '" + std::string(text) + "'");
}

void QssConfig::validate() const {
  if (rounds < 1) throw std::invalid_argument("QSS rounds must be >= 1");
  check_p(p);
  const bool needs_model = mode == QssMode::denoised || mode == QssMode::denoised_shot || mode == QssMode::generated;
  if (needs_model) {
    if (!model) throw std::invalid_argument("QSS mode '" + std::string(to_string(mode)) + "' needs a model");
    if (model->topology.input_size() != 3 || model->topology.output_size() != 3) {
      throw std::invalid_argument("QSS model must map 3 qubits to 3 qubits, got " + model->topology.str());
    }
  }
}

QssProtocol::QssProtocol(QssConfig config) : config_(std::move(config)) {
  config_.validate();
  if (config_.model) {
    net_.emplace(*config_.model);
    if (config_.mode == QssMode::generated) generated_ = net_->forward(StateVector::zero(3));
  }
}

QssRound QssProtocol::run_round(Rng& rng) const {
  QssRound round{};
  std::uniform_int_distribution<int> coin(0, 1);
  for (Basis& b : round.bases) b = coin(rng) == 0 ? Basis::X : Basis::Y;

  const StateVector ghz = ghz_state(3);
  const ChannelSpec qdc{ChannelKind::depolarizing, config_.p};
  std::array<double, 8> dist{};
  switch (config_.mode) {
    case QssMode::clean: dist = outcome_distribution(ghz, round.bases); break;
    case QssMode::noisy:
      dist = outcome_distribution(apply_syndrome(ghz, sample_syndrome(qdc, 3, rng)), round.bases);
      break;
    case QssMode::denoised:
      dist = outcome_distribution(net_->forward(apply_syndrome(ghz, sample_syndrome(qdc, 3, rng))), round.bases);
      break;
    case QssMode::denoised_shot: {
      const StateVector noisy = apply_syndrome(ghz, sample_syndrome(qdc, 3, rng));
      dist = outcome_distribution(net_->forward_shot(noisy, rng), round.bases);
      break;
    }
    case QssMode::generated: dist = outcome_distribution(*generated_, round.bases); break;
  }

  const int outcome = sample_index(dist, rng);
  round.bits = {(outcome >> 2) & 1, (outcome >> 1) & 1, outcome & 1};
  round.valid = is_valid(round.bases);
  if (round.valid) {
    round.inferred_charlie = infer_charlie_bit(round.bases[0], round.bits[0], round.bases[1], round.bits[1], round.bases[2]);
    round.failed = *round.inferred_charlie != round.bits[2];
  }
  return round;
}

QssRound run_round(const QssConfig& config, Rng& rng) { return QssProtocol(config).run_round(rng); }

FailureRate failure_rate(const QssConfig& config) {
  const QssProtocol protocol(config);
  FailureRate result;
  result.rounds = config.rounds;
  for (int r = 0; r < config.rounds; ++r) {
    Rng rng = make_rng(config.seed, {static_cast<std::uint64_t>(r)});
    const QssRound round = protocol.run_round(rng);
    if (!round.valid) continue;
    ++result.valid_rounds;
    if (*round.failed) ++result.failures;
  }
  if (result.valid_rounds > 0) {
    result.rate = static_cast<double>(result.failures) / static_cast<double>(result.valid_rounds);
  }
  return result;
}

double theoretical_gamma(double p) {
  check_p(p);
  return 0.5 * p * (p * p - 3.0 * p + 3.0);
}

GammaComponents gamma_components(double p) {
  check_p(p);
  return {p * (1.0 - 0.5 * p), 0.5, 0.5, 1.0 - p + 0.5 * p * p};
}

double syndrome_failure_probability(const Syndrome& s) {
  if (s.n_qubits() != 3) throw std::invalid_argument("QSS syndrome must cover 3 qubits");
  const StateVector noisy = apply_syndrome(ghz_state(3), s);
  double fail = 0.0;
  for (const BasisTriple& bases : kValidTriples) {
    const auto dist = outcome_distribution(noisy, bases);
    for (int i = 0; i < 8; ++i) {
      const int a = (i >> 2) & 1, b = (i >> 1) & 1, c = i & 1;
      if (infer_charlie_bit(bases[0], a, bases[1], b, bases[2]) != c) fail += dist[static_cast<std::size_t>(i)];
    }
  }
  return fail / static_cast<double>(kValidTriples.size());
}

double brute_force_gamma(double p) {
  check_p(p);
  const ChannelSpec qdc{ChannelKind::depolarizing, p};
  double gamma = 0.0;
  for (const Syndrome& s : all_syndromes(3)) {
    const double weight = syndrome_probability(qdc, s);
    if (weight == 0.0) continue;
    gamma += weight * syndrome_failure_probability(s);
  }
  return gamma;
}

}  // namespace qae
