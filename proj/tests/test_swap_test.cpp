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
#include <random>

#include "oracles.hpp"
#include "qae/swap_test.hpp"

using namespace qae;

TEST_CASE("circuit layout of [3,1,3]") {
  const CircuitLayout layout(Topology({3, 1, 3}));
  CHECK(layout.n_qubits == 8);
  CHECK(layout.ancilla == 0);
  CHECK(layout.reference == QubitList{1, 2, 3});
  REQUIRE(layout.layers.size() == 3);
  CHECK(layout.layers[0] == QubitList{4, 5, 6});
  CHECK(layout.layers[1] == QubitList{7});
  CHECK(layout.layers[2] == QubitList{4, 5, 6});
}

TEST_CASE("consecutive layers never share a qubit") {
  for (const auto& layers : std::vector<std::vector<int>>{{2, 1, 2}, {3, 1, 3}, {1, 2, 1, 2}, {2, 2, 2, 2}}) {
    const CircuitLayout layout{Topology(layers)};
    for (std::size_t i = 0; i + 1 < layout.layers.size(); ++i) {
      for (int a : layout.layers[i]) {
        for (int b : layout.layers[i + 1]) CHECK(a != b);
      }
    }
  }
}

TEST_CASE("exact swap test on the zero model") {
  const auto zero = QaeModel::zeros(Topology({2, 1, 2}));
  Rng rng(1);
  const auto r = swap_test(zero, ghz_state(2), ghz_state(2), kExact, rng);
  CHECK(std::abs(r.p0 - 0.75) < 1e-12);
  CHECK(std::abs(r.fidelity - 0.5) < 1e-12);
  CHECK(r.shots == 0);

  // Output |00>, target |00>: fidelity one.
  const auto same = swap_test(zero, ghz_state(2), StateVector::zero(2), kExact, rng);
  CHECK(std::abs(same.p0 - 1.0) < 1e-12);
  CHECK(std::abs(swap_test_fidelity(zero, ghz_state(2), StateVector::zero(2), 500, rng) - 1.0) < 1e-12);
}

TEST_CASE("exact swap test equals the forward fidelity") {
  std::mt19937_64 gen(2);
  Rng rng(3);
  for (const auto& layers : std::vector<std::vector<int>>{{1, 1}, {2, 1, 2}, {1, 2, 1}}) {
    const Topology t(layers);
    for (int trial = 0; trial < 5; ++trial) {
      const auto model = QaeModel::random(t, 0.7, rng);
      const auto input = oracle::random_state(t.input_size(), gen);
      const auto target = oracle::random_state(t.input_size(), gen);
      const double f = fidelity(target, forward_exact(model, input));
      const auto r = swap_test(model, input, target, kExact, rng);
      CHECK(std::abs(r.p0 - 0.5 * (1.0 + f)) < 1e-10);
    }
  }
}

TEST_CASE("shot estimates stay inside the binomial band") {
  Rng rng(4);
  const auto model = QaeModel::random(Topology({2, 1, 2}), 0.5, rng);
  const auto input = apply_syndrome(ghz_state(2), PauliString("XI"));
  const auto target = ghz_state(2);
  const double p0 = swap_test(model, input, target, kExact, rng).p0;
  const int shots = 1000;
  int inside = 0;
  const int trials = 30;
  for (int t = 0; t < trials; ++t) {
    const auto r = swap_test(model, input, target, shots, rng);
    CHECK(r.shots == shots);
    CHECK(std::abs(r.fidelity - (2.0 * r.zeros / shots - 1.0)) < 1e-15);
    inside += std::abs(r.p0 - p0) <= oracle::three_sigma(p0, shots) ? 1 : 0;
  }
  CHECK(inside >= trials - 1);
}

TEST_CASE("swap test argument checks") {
  Rng rng(5);
  const auto m21 = QaeModel::zeros(Topology({2, 1}));
  CHECK_THROWS_AS(swap_test(m21, ghz_state(2), ghz_state(2), kExact, rng), std::invalid_argument);
  const auto m212 = QaeModel::zeros(Topology({2, 1, 2}));
  CHECK_THROWS_AS(swap_test(m212, ghz_state(2), ghz_state(3), kExact, rng), std::invalid_argument);
  CHECK_THROWS_AS(swap_test(m212, ghz_state(2), ghz_state(2), 0, rng), std::invalid_argument);
}
