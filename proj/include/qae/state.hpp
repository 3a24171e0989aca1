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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qae/rng.hpp"

namespace qae {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Ordered list of qubit indices.
///
/// Qubit 0 is the leftmost tensor factor: in a basis index i over n qubits,
/// qubit q is stored at bit (n - 1 - q). When a k-qubit operator is applied to
/// targets {t_0, ..., t_{k-1}}, t_0 plays the role of the operator's own
/// qubit 0.
using QubitList = std::vector<int>;

inline constexpr int kMaxQubits = 12;

class StateVector {
 public:
  StateVector(int n_qubits, CVector amplitudes);

  static StateVector zero(int n_qubits);
  static StateVector basis(int n_qubits, std::size_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = 1e-10) const;

 private:
  int n_qubits_;
  CVector amplitudes_;
};

class DensityMatrix {
 public:
  /// Only the shape is checked here; use is_physical() for the full invariants.
  DensityMatrix(int n_qubits, CMatrix matrix);

  static DensityMatrix zero(int n_qubits);
  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  Complex trace() const { return matrix_.trace(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;
  /// Hermitian and unit trace within tol, eigenvalues >= -eig_tol.
  bool is_physical(double tol = 1e-10, double eig_tol = 1e-10) const;

 private:
  int n_qubits_;
  CMatrix matrix_;
};

class UnitaryMatrix {
 public:
  /// Throws std::invalid_argument unless ||U^dag U - I||_max < tol.
  UnitaryMatrix(int n_qubits, CMatrix matrix, double tol = 1e-9);

  static UnitaryMatrix identity(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const CMatrix& matrix() const { return matrix_; }
  double unitarity_error() const;
  UnitaryMatrix adjoint() const;

 private:
  int n_qubits_;
  CMatrix matrix_;
};

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

StateVector ghz_state(int m);

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u, const QubitList& targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryMatrix& u, const QubitList& targets);

/// Reduced state on `keep`; output qubit j is input qubit keep[j].
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitList& keep);

/// Traces out `targets` and puts them back in |0><0| at their original positions.
DensityMatrix reset_qubits(const DensityMatrix& rho, const QubitList& targets);

/// rho (n qubits) -> rho (x) |0..0><0..0| on k fresh trailing qubits.
DensityMatrix append_zero_qubits(const DensityMatrix& rho, int k);

double probability_one(const StateVector& state, int target);

struct Measurement {
  int bit;
  StateVector state;
};

/// Born-rule sample of one qubit; the returned state is the renormalized branch.
Measurement measure_qubit(const StateVector& state, int target, Rng& rng);

/// Projects onto `bit` on `target` and renormalizes. Throws std::logic_error on a
/// zero-norm branch.
StateVector collapse(const StateVector& state, int target, int bit);

/// U = exp(iK) for Hermitian K, through K = V diag(l) V^dag.
UnitaryMatrix expm_hermitian(const CMatrix& k);

/// <phi|rho|phi>, clamped to [0, 1].
double fidelity(const StateVector& phi, const DensityMatrix& rho);
/// |<phi|psi>|^2.
double fidelity(const StateVector& phi, const StateVector& psi);

namespace gates {
UnitaryMatrix I();
UnitaryMatrix X();
UnitaryMatrix Y();
UnitaryMatrix Z();
UnitaryMatrix H();
UnitaryMatrix S();
UnitaryMatrix Sdg();
UnitaryMatrix CNOT();
UnitaryMatrix SWAP();
UnitaryMatrix CSWAP();
}  // namespace gates

}  // namespace qae
