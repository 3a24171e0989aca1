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

#include "qae/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qae/kernels.hpp"

namespace qae {
namespace {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

void check_qubit_count(int n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n_qubits) + " outside [0, " +
                                std::to_string(kMaxQubits) + "]");
  }
}

void check_targets(int n_qubits, const QubitList& targets, const char* what) {
  std::vector<bool> seen(static_cast<std::size_t>(n_qubits), false);
  for (int q : targets) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(q) + " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
    }
    if (seen[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument(std::string(what) + ": duplicate qubit " + std::to_string(q));
    }
    seen[static_cast<std::size_t>(q)] = true;
  }
}

}  // namespace

StateVector::StateVector(int n_qubits, CVector amplitudes) : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits);
  if (amplitudes_.size() != (Eigen::Index{1} << n_qubits)) {
    throw std::invalid_argument("state vector length " + std::to_string(amplitudes_.size()) + " is not 2^" +
                                std::to_string(n_qubits));
  }
}

StateVector StateVector::zero(int n_qubits) { return basis(n_qubits, 0); }

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  check_qubit_count(n_qubits);
  const auto dim = Eigen::Index{1} << n_qubits;
  if (static_cast<Eigen::Index>(index) >= dim) throw std::invalid_argument("basis index out of range");
  CVector v = CVector::Zero(dim);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return {n_qubits, std::move(v)};
}

bool StateVector::is_normalized(double tol) const { return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol; }

DensityMatrix::DensityMatrix(int n_qubits, CMatrix matrix) : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(n_qubits);
  const auto dim = Eigen::Index{1} << n_qubits;
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("density matrix is not 2^" + std::to_string(n_qubits) + " square");
  }
}

DensityMatrix DensityMatrix::zero(int n_qubits) { return from_pure(StateVector::zero(n_qubits)); }

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return {psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  check_qubit_count(n_qubits);
  const auto dim = Eigen::Index{1} << n_qubits;
  return {n_qubits, CMatrix::Identity(dim, dim) / static_cast<double>(dim)};
}

double DensityMatrix::hermiticity_error() const { return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_physical(double tol, double eig_tol) const {
  return hermiticity_error() <= tol && std::abs(trace() - Complex{1.0, 0.0}) <= tol && min_eigenvalue() >= -eig_tol;
}

UnitaryMatrix::UnitaryMatrix(int n_qubits, CMatrix matrix, double tol)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(n_qubits);
  const auto dim = Eigen::Index{1} << n_qubits;
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("unitary is not 2^" + std::to_string(n_qubits) + " square");
  }
  if (unitarity_error() >= tol) throw std::invalid_argument("matrix is not unitary");
}

UnitaryMatrix UnitaryMatrix::identity(int n_qubits) {
  const auto dim = Eigen::Index{1} << n_qubits;
  return {n_qubits, CMatrix::Identity(dim, dim)};
}

double UnitaryMatrix::unitarity_error() const {
  const auto dim = matrix_.rows();
  return (matrix_.adjoint() * matrix_ - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return {n_qubits_, matrix_.adjoint()}; }

StateVector tensor(const StateVector& a, const StateVector& b) {
  CVector out(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    out.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()[i] * b.amplitudes();
  }
  return {a.n_qubits() + b.n_qubits(), std::move(out)};
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const auto da = a.matrix().rows();
  const auto db = b.matrix().rows();
  CMatrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  }
  return {a.n_qubits() + b.n_qubits(), std::move(out)};
}

StateVector ghz_state(int m) {
  if (m < 1) throw std::invalid_argument("GHZ state needs at least one qubit");
  check_qubit_count(m);
  const auto dim = Eigen::Index{1} << m;
  CVector v = CVector::Zero(dim);
  v[0] = std::numbers::sqrt2 / 2.0;
  v[dim - 1] = std::numbers::sqrt2 / 2.0;
  return {m, std::move(v)};
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u, const QubitList& targets) {
  if (static_cast<int>(targets.size()) != u.n_qubits()) {
    throw std::invalid_argument("apply_unitary: target count does not match gate size");
  }
  check_targets(state.n_qubits(), targets, "apply_unitary");
  CVector amps = state.amplitudes();
  kernels::apply_unitary(amps, state.n_qubits(), u.matrix(), targets);
  return {state.n_qubits(), std::move(amps)};
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryMatrix& u, const QubitList& targets) {
  if (static_cast<int>(targets.size()) != u.n_qubits()) {
    throw std::invalid_argument("apply_unitary: target count does not match gate size");
  }
  check_targets(rho.n_qubits(), targets, "apply_unitary");
  CMatrix m = rho.matrix();
  kernels::apply_unitary(m, rho.n_qubits(), u.matrix(), targets);
  return {rho.n_qubits(), std::move(m)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitList& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep list is empty");
  check_targets(rho.n_qubits(), keep, "partial_trace");
  return {static_cast<int>(keep.size()), kernels::partial_trace(rho.matrix(), rho.n_qubits(), keep)};
}

DensityMatrix reset_qubits(const DensityMatrix& rho, const QubitList& targets) {
  check_targets(rho.n_qubits(), targets, "reset_qubits");
  if (targets.empty()) return rho;
  return {rho.n_qubits(), kernels::reset(rho.matrix(), rho.n_qubits(), targets)};
}

DensityMatrix append_zero_qubits(const DensityMatrix& rho, int k) {
  if (k < 0) throw std::invalid_argument("append_zero_qubits: negative count");
  check_qubit_count(rho.n_qubits() + k);
  return {rho.n_qubits() + k, kernels::append_zero_qubits(rho.matrix(), k)};
}

double probability_one(const StateVector& state, int target) {
  check_targets(state.n_qubits(), {target}, "probability_one");
  const std::size_t bit = std::size_t{1} << (state.n_qubits() - 1 - target);
  double p1 = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (i & bit) p1 += std::norm(state[i]);
  }
  return p1;
}

StateVector collapse(const StateVector& state, int target, int bit) {
  check_targets(state.n_qubits(), {target}, "collapse");
  const std::size_t mask = std::size_t{1} << (state.n_qubits() - 1 - target);
  CVector amps = state.amplitudes();
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (((i & mask) != 0) != (bit == 1)) amps[static_cast<Eigen::Index>(i)] = 0.0;
  }
  const double norm = amps.norm();
  if (norm == 0.0) throw std::logic_error("collapse onto a zero-probability branch");
  amps /= norm;
  return {state.n_qubits(), std::move(amps)};
}

Measurement measure_qubit(const StateVector& state, int target, Rng& rng) {
  const double p1 = probability_one(state, target);
  const int bit = uniform01(rng) < p1 ? 1 : 0;
  return {bit, collapse(state, target, bit)};
}

UnitaryMatrix expm_hermitian(const CMatrix& k) {
  if (k.rows() != k.cols() || !is_power_of_two(k.rows())) {
    throw std::invalid_argument("expm_hermitian: generator must be 2^n square");
  }
  if ((k - k.adjoint()).cwiseAbs().maxCoeff() >= 1e-9) {
    throw std::invalid_argument("expm_hermitian: generator is not Hermitian");
  }
  const int n = static_cast<int>(std::countr_zero(static_cast<std::uint64_t>(k.rows())));
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(k);
  const CVector phases = (Complex{0.0, 1.0} * solver.eigenvalues().cast<Complex>()).array().exp();
  const CMatrix& v = solver.eigenvectors();
  return {n, v * phases.asDiagonal() * v.adjoint()};
}

double fidelity(const StateVector& phi, const DensityMatrix& rho) {
  if (phi.n_qubits() != rho.n_qubits()) throw std::invalid_argument("fidelity: qubit counts differ");
  const Complex f = phi.amplitudes().dot(rho.matrix() * phi.amplitudes());
  return std::clamp(f.real(), 0.0, 1.0);
}

double fidelity(const StateVector& phi, const StateVector& psi) {
  if (phi.n_qubits() != psi.n_qubits()) throw std::invalid_argument("fidelity: qubit counts differ");
  return std::clamp(std::norm(phi.amplitudes().dot(psi.amplitudes())), 0.0, 1.0);
}

namespace gates {
namespace {
UnitaryMatrix make(int n, std::initializer_list<Complex> row_major) {
  const auto dim = Eigen::Index{1} << n;
  CMatrix m(dim, dim);
  auto it = row_major.begin();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = *it++;
  }
  return {n, std::move(m)};
}
constexpr Complex kI{0.0, 1.0};
}  // namespace

UnitaryMatrix I() { return UnitaryMatrix::identity(1); }
UnitaryMatrix X() { return make(1, {0, 1, 1, 0}); }
UnitaryMatrix Y() { return make(1, {0, -kI, kI, 0}); }
UnitaryMatrix Z() { return make(1, {1, 0, 0, -1}); }
UnitaryMatrix H() {
  const double s = std::numbers::sqrt2 / 2.0;
  return make(1, {s, s, s, -s});
}
UnitaryMatrix S() { return make(1, {1, 0, 0, kI}); }
UnitaryMatrix Sdg() { return make(1, {1, 0, 0, -kI}); }
UnitaryMatrix CNOT() { return make(2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}); }
UnitaryMatrix SWAP() { return make(2, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}); }
UnitaryMatrix CSWAP() {
  CMatrix m = CMatrix::Identity(8, 8);
  // control = qubit 0; swap |101> <-> |110>
  m(5, 5) = 0.0;
  m(6, 6) = 0.0;
  m(5, 6) = 1.0;
  m(6, 5) = 1.0;
  return {3, std::move(m)};
}
}  // namespace gates

}  // namespace qae
