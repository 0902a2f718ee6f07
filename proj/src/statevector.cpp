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

#include "qas/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qas {

namespace {

constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_same_register(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("dimension mismatch in ") + what);
}

Eigen::Index dim_for(int n_qubits) {
  if (n_qubits <= 0 || n_qubits > 30) {
    throw std::invalid_argument("statevector qubit count must be in [1, 30]");
  }
  return Eigen::Index{1} << n_qubits;
}

// out += coef * P|v> for a phase-free string (x, z).
void accumulate_string(std::uint64_t x, std::uint64_t z, cplx coef,
                       const Eigen::VectorXcd& v, Eigen::VectorXcd& out) {
  const int base = std::popcount(x & z);
  const auto dim = static_cast<std::uint64_t>(v.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    int k = base + 2 * std::popcount(b & z);
    out[static_cast<Eigen::Index>(b ^ x)] += coef * kIPowers[k & 3] * v[static_cast<Eigen::Index>(b)];
  }
}

}  // namespace

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits), amps_(Eigen::VectorXcd::Zero(dim_for(n_qubits))) {
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != dim_for(n_qubits)) {
    throw std::invalid_argument("amplitude count does not match 2^n_qubits");
  }
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= static_cast<std::uint64_t>(s.dim())) {
    throw std::out_of_range("basis index out of range");
  }
  s.amps_[0] = 0.0;
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

StateVector StateVector::normalized() const {
  double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  return StateVector(n_qubits_, amps_ / n);
}

StateVector& StateVector::operator+=(const StateVector& other) {
  check_same_register(n_qubits_, other.n_qubits_, "state addition");
  amps_ += other.amps_;
  return *this;
}

StateVector& StateVector::operator*=(cplx s) {
  amps_ *= s;
  return *this;
}

cplx inner(const StateVector& u, const StateVector& v) {
  check_same_register(u.n_qubits(), v.n_qubits(), "inner product");
  return u.amplitudes().dot(v.amplitudes());
}

double fidelity(const StateVector& u, const StateVector& v) {
  cplx o = inner(u, v);
  return std::norm(o) / (u.amplitudes().squaredNorm() * v.amplitudes().squaredNorm());
}

StateVector apply_pauli_sum(const PauliSum& s, const StateVector& v) {
  check_same_register(s.n_qubits(), v.n_qubits(), "Pauli sum application");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.dim());
  for (const auto& [k, c] : s.raw_terms()) {
    accumulate_string(k.x, k.z, c, v.amplitudes(), out);
  }
  return StateVector(v.n_qubits(), std::move(out));
}

StateVector apply_pauli_string(const PauliString& p, const StateVector& v) {
  check_same_register(p.n_qubits(), v.n_qubits(), "Pauli string application");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.dim());
  accumulate_string(p.x_mask(), p.z_mask(), p.phase(), v.amplitudes(), out);
  return StateVector(v.n_qubits(), std::move(out));
}

cplx expectation(const StateVector& u, const PauliSum& s, const StateVector& v) {
  return inner(u, apply_pauli_sum(s, v));
}

void apply_pauli_rotation(const PauliString& p, double theta, StateVector& v) {
  check_same_register(p.n_qubits(), v.n_qubits(), "Pauli rotation");
  const double c = std::cos(theta);
  const cplx ms = cplx{0.0, -std::sin(theta)} * p.phase();
  auto& a = v.amplitudes();
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const int base = std::popcount(x & z);
  const auto dim = static_cast<std::uint64_t>(a.size());
  if (x == 0) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      int k = base + 2 * std::popcount(b & z);
      auto i = static_cast<Eigen::Index>(b);
      a[i] = (c + ms * kIPowers[k & 3]) * a[i];
    }
    return;
  }
  // P pairs b with b^x; update each pair once.
  for (std::uint64_t b = 0; b < dim; ++b) {
    std::uint64_t partner = b ^ x;
    if (partner < b) continue;
    auto i = static_cast<Eigen::Index>(b);
    auto j = static_cast<Eigen::Index>(partner);
    cplx fb = kIPowers[(base + 2 * std::popcount(b & z)) & 3];        // P|b> = fb|partner>
    cplx fp = kIPowers[(base + 2 * std::popcount(partner & z)) & 3];  // P|partner> = fp|b>
    cplx ab = a[i];
    cplx ap = a[j];
    a[i] = c * ab + ms * fp * ap;
    a[j] = c * ap + ms * fb * ab;
  }
}

ExactPropagator::ExactPropagator(const PauliSum& h, double hermitian_tol)
    : n_qubits_(h.n_qubits()) {
  if (!h.is_hermitian(hermitian_tol)) {
    throw std::invalid_argument("exact propagator needs a Hermitian Hamiltonian");
  }
  Eigen::MatrixXcd dense = to_dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigendecomposition failed");
  }
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

StateVector ExactPropagator::evolve(double t, const StateVector& v) const {
  check_same_register(n_qubits_, v.n_qubits(), "exact evolution");
  Eigen::VectorXcd c = evecs_.adjoint() * v.amplitudes();
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    c[k] *= std::exp(cplx{0.0, -evals_[k] * t});
  }
  return StateVector(n_qubits_, evecs_ * c);
}

Eigen::MatrixXcd ExactPropagator::unitary(double t) const {
  Eigen::VectorXcd phases(evals_.size());
  for (Eigen::Index k = 0; k < evals_.size(); ++k) {
    phases[k] = std::exp(cplx{0.0, -evals_[k] * t});
  }
  return evecs_ * phases.asDiagonal() * evecs_.adjoint();
}

Eigen::MatrixXcd ExactPropagator::reconstruct() const {
  return evecs_ * evals_.cast<cplx>().asDiagonal() * evecs_.adjoint();
}

std::vector<PauliSum::Term> trotter_order(const PauliSum& h) {
  auto terms = h.terms();
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    double ma = std::abs(a.coefficient);
    double mb = std::abs(b.coefficient);
    if (ma != mb) return ma > mb;
    return PauliKey{a.string.x_mask(), a.string.z_mask()} <
           PauliKey{b.string.x_mask(), b.string.z_mask()};
  });
  return terms;
}

StateVector trotter1_evolve(const PauliSum& h, double t, int steps,
                            const StateVector& v) {
  if (steps <= 0) throw std::invalid_argument("Trotter step count must be positive");
  if (!h.is_hermitian()) {
    throw std::invalid_argument("Trotter evolution needs a Hermitian Hamiltonian");
  }
  check_same_register(h.n_qubits(), v.n_qubits(), "Trotter evolution");
  const auto terms = trotter_order(h);
  const double tau = t / steps;
  StateVector out = v;
  for (int s = 0; s < steps; ++s) {
    for (const auto& term : terms) {
      apply_pauli_rotation(term.string, term.coefficient.real() * tau, out);
    }
  }
  return out;
}

}  // namespace qas
