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

#include <array>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qae/noise.hpp"

using namespace qae;

namespace {

double enumerated_ghz_fidelity(const ChannelSpec& spec, int m) {
  const std::array<double, 4> q = spec.kind == ChannelKind::depolarizing
                                      ? std::array<double, 4>{1 - 0.75 * spec.p, spec.p / 4, spec.p / 4, spec.p / 4}
                                      : std::array<double, 4>{1 - spec.p, spec.p, 0.0, 0.0};
  return oracle::enumerated_ghz_fidelity(q, m);
}

}  // namespace

TEST_CASE("sample_syndrome edge cases") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_syndrome({ChannelKind::depolarizing, 0.0}, 3, rng) == PauliString("III"));
    CHECK(sample_syndrome({ChannelKind::bitflip, 0.0}, 3, rng) == PauliString("III"));
    CHECK(sample_syndrome({ChannelKind::bitflip, 1.0}, 3, rng) == PauliString("XXX"));
  }
}

TEST_CASE("depolarizing letter frequencies") {
  Rng rng(2);
  const int draws = 100000;
  std::array<int, 4> counts{};
  for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(sample_syndrome({ChannelKind::depolarizing, 0.2}, 1, rng)[0])];
  const std::array<double, 4> expected{0.85, 0.05, 0.05, 0.05};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(counts[k] / double(draws) - expected[k]) <= oracle::three_sigma(expected[k], draws));
  }
}

TEST_CASE("syndrome_probability sums to one") {
  for (auto kind : {ChannelKind::bitflip, ChannelKind::depolarizing}) {
    double total = 0.0;
    for (const auto& s : all_syndromes(3)) total += syndrome_probability({kind, 0.35}, s);
    CHECK(std::abs(total - 1.0) < 1e-14);
  }
  CHECK(syndrome_probability({ChannelKind::bitflip, 0.3}, PauliString("XY")) == 0.0);
  CHECK(std::abs(syndrome_probability({ChannelKind::bitflip, 0.3}, PauliString("XI")) - 0.21) < 1e-15);
}

TEST_CASE("apply_syndrome on GHZ_2") {
  const auto ghz = ghz_state(2);
  CHECK((apply_syndrome(ghz, PauliString("II")).amplitudes() - ghz.amplitudes()).norm() == 0.0);
  CHECK((apply_syndrome(ghz, PauliString("XX")).amplitudes() - ghz.amplitudes()).norm() < 1e-15);
  const auto flipped = apply_syndrome(ghz, PauliString("XI"));
  const double r = std::sqrt(0.5);
  CHECK(std::abs(flipped[1] - r) < 1e-15);
  CHECK(std::abs(flipped[2] - r) < 1e-15);
  CHECK_THROWS_AS(apply_syndrome(ghz, PauliString("XII")), std::invalid_argument);
}

TEST_CASE("depolarize_exact") {
  std::mt19937_64 gen(4);
  const auto rho = oracle::random_density(2, gen);
  CHECK(oracle::max_abs(depolarize_exact(rho, 0.0).matrix() - rho.matrix()) < 1e-15);

  const auto single = oracle::random_density(1, gen);
  CHECK(oracle::max_abs(depolarize_exact(single, 1.0).matrix() - CMatrix::Identity(2, 2) / 2.0) < 1e-15);

  const auto ghz = DensityMatrix::from_pure(ghz_state(2));
  CHECK(std::abs(fidelity(ghz_state(2), depolarize_exact(ghz, 0.4)) - enumerated_ghz_fidelity({ChannelKind::depolarizing, 0.4}, 2)) <
        1e-12);

  CHECK_THROWS_AS(depolarize_exact(rho, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(depolarize_exact(rho, -0.1), std::invalid_argument);
}

TEST_CASE("exact channels equal the syndrome average") {
  std::mt19937_64 gen(6);
  for (int m = 1; m <= 3; ++m) {
    const auto rho = oracle::random_density(m, gen);
    for (auto kind : {ChannelKind::bitflip, ChannelKind::depolarizing}) {
      for (double p : {0.0, 0.15, 0.6, 1.0}) {
        const ChannelSpec spec{kind, p};
        CMatrix avg = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
        for (const auto& s : all_syndromes(m)) {
          const double w = syndrome_probability(spec, s);
          if (w == 0.0) continue;
          const CMatrix ps = oracle::pauli_kron(s.str());
          avg += w * ps * rho.matrix() * ps.adjoint();
        }
        const auto exact = apply_channel_exact(rho, spec);
        CHECK(oracle::max_abs(exact.matrix() - avg) < 1e-12);
        CHECK(exact.is_physical(1e-10, 1e-10));
      }
    }
  }
}

TEST_CASE("theoretical fidelities") {
  CHECK(std::abs(theoretical_fidelity_bitflip(2, 0.2) - 0.68) < 1e-15);
  CHECK(theoretical_fidelity_bitflip(2, 0.0) == 1.0);
  CHECK(std::abs(theoretical_fidelity_bitflip(3, 0.5) - 0.25) < 1e-15);
  CHECK(std::abs(theoretical_fidelity_qdc(2, 1.0) - 0.25) < 1e-15);
  CHECK(std::abs(theoretical_fidelity_qdc(3, 1.0) - 0.125) < 1e-15);

  for (int m = 2; m <= 4; ++m) {
    for (int k = 0; k <= 10; ++k) {
      const double p = k / 10.0;
      CHECK(std::abs(theoretical_fidelity_qdc(m, p) - enumerated_ghz_fidelity({ChannelKind::depolarizing, p}, m)) <
            1e-12);
      CHECK(std::abs(theoretical_fidelity_bitflip(m, p) - enumerated_ghz_fidelity({ChannelKind::bitflip, p}, m)) <
            1e-12);
    }
  }

  CHECK_THROWS_AS(theoretical_fidelity_qdc(1, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(theoretical_fidelity_bitflip(2, 1.5), std::invalid_argument);
}

TEST_CASE("the even-count sum used in the closed form") {
  for (int m = 2; m <= 8; ++m) {
    double even = 0.0;
    for (int k = 0; k <= m; k += 2) even += oracle::choose(m, k);
    CHECK(even == std::pow(2.0, m - 1));
  }
}

TEST_CASE("Monte Carlo GHZ fidelity converges to the closed forms") {
  Rng rng(12);
  const int samples = 10000;
  for (const ChannelSpec spec : {ChannelSpec{ChannelKind::bitflip, 0.2}, ChannelSpec{ChannelKind::depolarizing, 0.3}}) {
    const auto ghz = ghz_state(2);
    int preserved = 0;
    for (int i = 0; i < samples; ++i) {
      // Pauli errors map GHZ to an orthogonal Bell state or back onto itself.
      preserved += fidelity(ghz, apply_syndrome(ghz, sample_syndrome(spec, 2, rng))) > 0.5 ? 1 : 0;
    }
    const double f = theoretical_fidelity(spec, 2);
    CHECK(std::abs(preserved / double(samples) - f) <= oracle::three_sigma(f, samples));
  }
}

TEST_CASE("fidelity-one syndromes under the depolarizing channel") {
  for (int m = 2; m <= 3; ++m) {
    const auto ghz = ghz_state(m);
    for (const auto& s : all_syndromes(m)) {
      int n_x = 0, n_y = 0, n_z = 0;
      for (Pauli l : s.letters()) {
        n_x += l == Pauli::X;
        n_y += l == Pauli::Y;
        n_z += l == Pauli::Z;
      }
      const bool z_class = n_x == 0 && n_y == 0 && n_z % 2 == 0;
      const bool xy_class = n_z == 0 && n_x + n_y == m && n_y % 2 == 0;
      const double f = fidelity(ghz, apply_syndrome(ghz, s));
      CAPTURE(s.str());
      CHECK(std::abs(f - ((z_class || xy_class) ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("channel names") {
  CHECK(channel_kind_from_string("bitflip") == ChannelKind::bitflip);
  CHECK(channel_kind_from_string("depolarizing") == ChannelKind::depolarizing);
  CHECK(to_string(ChannelKind::bitflip) == "bitflip");
  CHECK_THROWS_AS(channel_kind_from_string("amplitude"), std::invalid_argument);
  CHECK_THROWS_AS((ChannelSpec{ChannelKind::bitflip, 1.3}.validate()), std::invalid_argument);
}
