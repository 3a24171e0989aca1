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

#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "qae/qss.hpp"

using namespace qae;

namespace {

const Complex kI{0.0, 1.0};

CVector ket(Basis b, int bit) { return oracle::eigen_ket(b == Basis::X ? 'X' : 'Y', bit); }

CVector ket3(const BasisTriple& bases, const BitTriple& bits) {
  return oracle::kron(oracle::kron(ket(bases[0], bits[0]), ket(bases[1], bits[1])), ket(bases[2], bits[2]));
}

}  // namespace

TEST_CASE("basis validity and inference rule") {
  const Basis X = Basis::X, Y = Basis::Y;
  CHECK(is_valid({X, X, X}));
  CHECK(is_valid({Y, Y, X}));
  CHECK(is_valid({X, Y, Y}));
  CHECK(is_valid({Y, X, Y}));
  CHECK_FALSE(is_valid({X, X, Y}));
  CHECK_FALSE(is_valid({Y, Y, Y}));

  CHECK(infer_charlie_bit(X, 0, X, 0, X) == 0);
  CHECK(infer_charlie_bit(Y, 0, Y, 1, X) == 0);
  CHECK(infer_charlie_bit(Y, 0, X, 1, Y) == 0);
  CHECK(infer_charlie_bit(X, 1, X, 0, X) == 1);
  CHECK(infer_charlie_bit(X, 1, Y, 1, Y) == 1);
  CHECK_THROWS_AS(infer_charlie_bit(X, 0, X, 0, Y), std::invalid_argument);
}

TEST_CASE("basis rotations map eigenstates to computational states") {
  for (Basis b : {Basis::X, Basis::Y}) {
    for (int bit : {0, 1}) {
      const CVector out = basis_rotation(b).matrix() * ket(b, bit);
      CHECK(std::abs(std::abs(out[bit]) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("GHZ_3 expansion in the valid bases") {
  // Each valid triple carries exactly four outcomes of amplitude 1/2 (up to a
  // global phase shared by the whole triple), namely the ones the inference
  // rule accepts.
  const CVector ghz = ghz_state(3).amplitudes();
  const std::vector<BasisTriple> valid{{Basis::X, Basis::X, Basis::X},
                                       {Basis::Y, Basis::Y, Basis::X},
                                       {Basis::X, Basis::Y, Basis::Y},
                                       {Basis::Y, Basis::X, Basis::Y}};
  for (const auto& bases : valid) {
    CVector rebuilt = CVector::Zero(8);
    int terms = 0;
    std::optional<Complex> phase;
    for (int i = 0; i < 8; ++i) {
      const BitTriple bits{(i >> 2) & 1, (i >> 1) & 1, i & 1};
      const CVector k = ket3(bases, bits);
      const Complex c = k.dot(ghz);
      rebuilt += c * k;
      const bool allowed = infer_charlie_bit(bases[0], bits[0], bases[1], bits[1], bases[2]) == bits[2];
      if (allowed) {
        ++terms;
        CHECK(std::abs(std::abs(c) - 0.5) < 1e-12);
        if (!phase) phase = c;
        CHECK(std::abs(c - *phase) < 1e-12);
      } else {
        CHECK(std::abs(c) < 1e-12);
      }
      const auto dist = outcome_distribution(ghz_state(3), bases);
      CHECK(std::abs(dist[static_cast<std::size_t>(i)] - std::norm(c)) < 1e-12);
    }
    CHECK(terms == 4);
    CHECK((rebuilt - ghz).norm() < 1e-12);
  }
}

TEST_CASE("Pauli action on the X and Y eigenbases") {
  const CMatrix X = oracle::pauli2('X'), Y = oracle::pauli2('Y'), Z = oracle::pauli2('Z');
  const auto px = ket(Basis::X, 0), mx = ket(Basis::X, 1), py = ket(Basis::Y, 0), my = ket(Basis::Y, 1);
  auto same = [](const CVector& a, const CVector& b) { return (a - b).norm() < 1e-12; };
  CHECK(same(X * px, px));
  CHECK(same(X * mx, -mx));
  CHECK(same(Y * px, -kI * mx));
  CHECK(same(Y * mx, kI * px));
  CHECK(same(Z * px, mx));
  CHECK(same(Z * mx, px));
  CHECK(same(X * py, kI * my));
  CHECK(same(X * my, -kI * py));
  CHECK(same(Y * py, py));
  CHECK(same(Y * my, -my));
  CHECK(same(Z * py, my));
  CHECK(same(Z * my, py));
}

TEST_CASE("gamma") {
  CHECK(theoretical_gamma(0.0) == 0.0);
  CHECK(theoretical_gamma(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(theoretical_gamma(0.2) == doctest::Approx(0.244).epsilon(1e-12));
  CHECK_THROWS_AS(theoretical_gamma(1.5), std::invalid_argument);

  const auto g0 = gamma_components(0.0);
  CHECK(g0.I == 0.0);
  CHECK(g0.X == 0.5);
  CHECK(g0.Y == 0.5);
  CHECK(g0.Z == 1.0);
  const auto g1 = gamma_components(1.0);
  CHECK(g1.I == doctest::Approx(0.5));
  CHECK(g1.Z == doctest::Approx(0.5));

  for (int k = 0; k <= 20; ++k) {
    const double p = k * 0.05;
    const auto g = gamma_components(p);
    const double recombined = (1 - 0.75 * p) * g.I + 0.25 * p * (g.X + g.Y + g.Z);
    CHECK(std::abs(recombined - theoretical_gamma(p)) < 1e-12);
    CHECK(std::abs(brute_force_gamma(p) - theoretical_gamma(p)) < 1e-12);
  }
}

TEST_CASE("syndrome table with Charlie unharmed") {
  const std::map<std::string, double> expected{{"XI", 0.5}, {"YI", 0.5}, {"IX", 0.5}, {"IY", 0.5}, {"XX", 0.5},
                                               {"YY", 0.5}, {"XY", 0.5}, {"YX", 0.5}, {"XZ", 0.5}, {"ZX", 0.5},
                                               {"YZ", 0.5}, {"ZY", 0.5}, {"IZ", 1.0}, {"ZI", 1.0}, {"II", 0.0},
                                               {"ZZ", 0.0}};
  for (const auto& [ab, fail] : expected) {
    CAPTURE(ab);
    CHECK(std::abs(syndrome_failure_probability(PauliString(ab + "I")) - fail) < 1e-12);
  }
}

TEST_CASE("clean rounds") {
  QssConfig cfg;
  cfg.mode = QssMode::clean;
  cfg.rounds = 10000;
  cfg.seed = 1;
  const auto r = failure_rate(cfg);
  REQUIRE(r.rate.has_value());
  CHECK(*r.rate == 0.0);
  CHECK(std::abs(r.valid_rounds / 10000.0 - 0.5) <= oracle::three_sigma(0.5, 10000));

  // Invalid triples and Alice alone carry no information on Charlie's bit.
  const QssProtocol protocol(cfg);
  int invalid = 0, invalid_match = 0, alone_match = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    Rng rng = make_rng(2, {static_cast<std::uint64_t>(i)});
    const auto round = protocol.run_round(rng);
    CHECK(round.valid == round.inferred_charlie.has_value());
    CHECK(round.valid == round.failed.has_value());
    alone_match += round.bits[0] == round.bits[2];
    if (!round.valid) {
      ++invalid;
      invalid_match += (round.bits[0] ^ round.bits[1]) == round.bits[2];
    }
  }
  CHECK(std::abs(invalid_match / double(invalid) - 0.5) <= oracle::three_sigma(0.5, invalid));
  CHECK(std::abs(alone_match / double(n) - 0.5) <= oracle::three_sigma(0.5, n));
}

TEST_CASE("noisy rounds at p = 0.2") {
  QssConfig cfg;
  cfg.mode = QssMode::noisy;
  cfg.p = 0.2;
  cfg.rounds = 10000;
  cfg.seed = 3;
  const auto r = failure_rate(cfg);
  const double g = theoretical_gamma(0.2);
  CHECK(std::abs(*r.rate - g) <= oracle::three_sigma(g, r.valid_rounds));
}

TEST_CASE("QSS config checks") {
  QssConfig cfg;
  cfg.mode = QssMode::denoised;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.model = QaeModel::zeros(Topology({2, 1, 2}));
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.model = QaeModel::zeros(Topology({3, 1, 3}));
  CHECK_NOTHROW(cfg.validate());
  cfg.p = 2.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.rounds = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK(qss_mode_from_string("denoised_shot") == QssMode::denoised_shot);
  CHECK_THROWS_AS(qss_mode_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("exact and shot-level denoising agree statistically") {
  Rng rng(4);
  QssConfig cfg;
  cfg.model = QaeModel::random(Topology({3, 1, 3}), 0.3, rng);
  cfg.p = 0.4;
  cfg.rounds = 4000;
  cfg.seed = 5;
  cfg.mode = QssMode::denoised;
  const auto exact = failure_rate(cfg);
  cfg.mode = QssMode::denoised_shot;
  cfg.seed = 6;
  const auto shot = failure_rate(cfg);
  const double p = *exact.rate;
  const double sigma = std::sqrt(p * (1 - p) * (1.0 / exact.valid_rounds + 1.0 / shot.valid_rounds));
  CHECK(std::abs(*shot.rate - p) <= 3 * sigma);
}
