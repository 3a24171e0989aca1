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

// Simulation kernels against the serial reference, and the gradient loop
// with and without OpenMP.

#include <benchmark/benchmark.h>

#include <random>

#include "qae/kernels.hpp"
#include "qae/training.hpp"

namespace {

using namespace qae;

CMatrix random_unitary(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const auto dim = Eigen::Index{1} << k;
  CMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex{normal(rng), normal(rng)};
  }
  return expm_hermitian(0.5 * (a + a.adjoint())).matrix();
}

CMatrix random_rho(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const auto dim = Eigen::Index{1} << n;
  CMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex{normal(rng), normal(rng)};
  }
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

// A four-qubit perceptron on the first qubits of an n-qubit register, the
// shape of the [3,1,3] encoder.
void BM_ApplyUnitaryDM(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const CMatrix u = random_unitary(4, rng);
  CMatrix rho = random_rho(n, rng);
  for (auto _ : state) {
    kernels::apply_unitary(rho, n, u, {0, 1, 2, 3});
    benchmark::DoNotOptimize(rho.data());
  }
}
BENCHMARK(BM_ApplyUnitaryDM)->DenseRange(4, 8, 2);

void BM_ApplyUnitaryDMReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const CMatrix u = random_unitary(4, rng);
  CMatrix rho = random_rho(n, rng);
  for (auto _ : state) {
    rho = reference::apply_unitary(rho, n, u, {0, 1, 2, 3});
    benchmark::DoNotOptimize(rho.data());
  }
}
BENCHMARK(BM_ApplyUnitaryDMReference)->DenseRange(4, 8, 2);

void BM_PartialTrace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  const CMatrix rho = random_rho(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::partial_trace(rho, n, {n - 2, n - 1}));
}
BENCHMARK(BM_PartialTrace)->DenseRange(4, 8, 2);

void BM_PartialTraceReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  const CMatrix rho = random_rho(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(reference::partial_trace(rho, n, {n - 2, n - 1}));
}
BENCHMARK(BM_PartialTraceReference)->DenseRange(4, 8, 2);

// One full finite-difference gradient of the [2,1,2] cost on 20 pairs.
void BM_Gradient(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  const Topology t({2, 1, 2});
  Rng rng(3);
  const auto pairs = prepare_pairs(make_pairs({ChannelKind::depolarizing, 0.2}, 2, 20, rng), 2);
  const CostFunction cost(t, pairs, kExact, 0);
  const auto model = QaeModel::random(t, 0.05, rng);
  for (auto _ : state) benchmark::DoNotOptimize(grad_fd(cost, model.kappa, 0.1, 1, parallel));
}
BENCHMARK(BM_Gradient)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
