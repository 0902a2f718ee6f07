// Copyright 2026 The qas-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qas/pauli.hpp"

namespace qas {

/// Dense 2^N amplitude vector. Basis index bit j is qubit j.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  static StateVector basis_state(int n_qubits, std::uint64_t index);

  int n_qubits() const noexcept { return n_qubits_; }
  Eigen::Index dim() const noexcept { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Eigen::VectorXcd& amplitudes() noexcept { return amps_; }
  cplx operator[](Eigen::Index i) const { return amps_[i]; }

  double norm() const { return amps_.norm(); }
  StateVector normalized() const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator*=(cplx s);
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator*(cplx s, StateVector a) { return a *= s; }

 private:
  int n_qubits_ = 0;
  Eigen::VectorXcd amps_;
};

/// <u|v>, conjugate-linear in u.
cplx inner(const StateVector& u, const StateVector& v);

/// |<u|v>|^2 / (<u|u><v|v>)
double fidelity(const StateVector& u, const StateVector& v);

/// S|v>; the result is generally not normalized.
StateVector apply_pauli_sum(const PauliSum& s, const StateVector& v);
StateVector apply_pauli_string(const PauliString& p, const StateVector& v);

/// <u|S|v>
cplx expectation(const StateVector& u, const PauliSum& s, const StateVector& v);

/// e^{-i theta P}|v> = cos(theta)|v> - i sin(theta) P|v> for a phase-free P.
void apply_pauli_rotation(const PauliString& p, double theta, StateVector& v);

/// Spectral representation of a Hermitian Hamiltonian, built once and reused
/// for any evolution time.
class ExactPropagator {
 public:
  /// Throws std::invalid_argument when `h` is not Hermitian.
  explicit ExactPropagator(const PauliSum& h, double hermitian_tol = 1e-10);

  int n_qubits() const noexcept { return n_qubits_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return evals_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return evecs_; }

  /// e^{-iHt}|v>
  StateVector evolve(double t, const StateVector& v) const;
  /// V diag(e^{-iEt}) V^dag
  Eigen::MatrixXcd unitary(double t) const;
  Eigen::MatrixXcd reconstruct() const;

 private:
  int n_qubits_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd evecs_;
};

/// Terms in the order used by one first-order Trotter step: descending
/// coefficient magnitude, ties broken by (x_mask, z_mask) ascending.
std::vector<PauliSum::Term> trotter_order(const PauliSum& h);

/// [prod_l e^{-i c_l P_l t / steps}]^steps |v>, products applied in
/// `trotter_order`. The identity term contributes a global phase.
StateVector trotter1_evolve(const PauliSum& h, double t, int steps,
                            const StateVector& v);

}  // namespace qas
