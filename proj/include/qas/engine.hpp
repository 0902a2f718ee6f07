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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qas/chemistry.hpp"
#include "qas/pauli.hpp"
#include "qas/statevector.hpp"

namespace qas {

/// Raised when the coefficient dynamics cannot be integrated.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Propagation { kExact, kTrotter1 };

/// Parameter times of the time-evolved basis, s_0 = 0 < s_1 < ... (1/Hartree).
struct BasisSpec {
  std::vector<double> times{0.0};
  Propagation propagation = Propagation::kExact;
  int trotter_steps = 1;

  /// Throws std::invalid_argument unless s_0 == 0, the times are strictly
  /// increasing and (when given) none exceeds `horizon`.
  void validate(std::optional<double> horizon = std::nullopt) const;
};

/// |psi_j> = U(s_j)|psi_0>, with U exact or first-order Trotterized.
std::vector<StateVector> build_basis(const StateVector& psi0, const PauliSum& h,
                                     const BasisSpec& spec);
std::vector<StateVector> build_basis(const StateVector& psi0, const PauliSum& h,
                                     const ExactPropagator& propagator,
                                     const BasisSpec& spec);

/// <psi_j|P_l|psi_k> for one Pauli term of an operator.
struct TermElements {
  PauliString string;
  cplx coefficient;
  Eigen::MatrixXcd elements;
};

/// Operator matrix in the basis together with its Pauli-level estimands.
struct OperatorElements {
  Eigen::MatrixXcd matrix;
  std::vector<TermElements> terms;
};

struct QasMatrices {
  Eigen::MatrixXcd F;
  OperatorElements H;
  std::map<std::string, OperatorElements> O;
  std::optional<Eigen::MatrixXcd> H2;
  /// Normal draws used to produce these matrices (0 in exact mode).
  std::size_t n_draws = 0;

  Eigen::Index size() const noexcept { return F.rows(); }
  const Eigen::MatrixXcd& observable(const std::string& label) const;
};

/// F_jk = <psi_j|psi_k>, H_jk = <psi_j|H|psi_k>, O_jk = <psi_j|O|psi_k> and
/// (optionally) (H^2)_jk from exact inner products.
QasMatrices exact_matrices(const StateVector& psi0, const PauliSum& h,
                           const ObservableSet& observables,
                           const std::vector<StateVector>& basis, bool with_h2 = true);

/// Finite-shot Hadamard-test model: N_s shots per real and per imaginary part.
struct ShotModel {
  std::uint64_t n_shots = 10000;
  std::uint64_t seed = 0;
  /// Measure each distinct Pauli string once and reuse its estimates in H and
  /// every observable. When false, each operator term gets its own draws.
  bool share_estimates = true;
};

/// Independent 64-bit stream seed for sample `index` of a run.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Replaces every estimand component c by a draw from
/// Normal(c, sqrt((1 - c^2) / N_s)).
///
/// F is sampled on j < k with diag(F) = 1. H and O are sampled per Pauli term
/// on j <= k (real part only on the diagonal) and recombined with their
/// coefficients; identity terms reuse the sampled F since they estimate the
/// same quantity. Draw order: F, then H terms, then observables by label, each
/// in term order. The lower triangle is filled by conjugation. Draws are not
/// clamped to [-1, 1]. H2 is not carried over.
QasMatrices sample_matrices(const QasMatrices& exact, const ShotModel& model);

/// alpha' = -i F^+ H alpha, where F^+ drops eigenvalues below
/// `relative_cutoff` times the largest one.
class CoefficientGenerator {
 public:
  CoefficientGenerator(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& H,
                       double relative_cutoff = 1e-8);

  const Eigen::MatrixXcd& matrix() const noexcept { return generator_; }
  const Eigen::VectorXd& overlap_eigenvalues() const noexcept { return overlap_evals_; }
  Eigen::Index rank() const noexcept { return rank_; }
  Eigen::VectorXcd operator()(const Eigen::VectorXcd& alpha) const { return generator_ * alpha; }

 private:
  Eigen::MatrixXcd generator_;
  Eigen::VectorXd overlap_evals_;
  Eigen::Index rank_ = 0;
};

struct CoefficientTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> alphas;
  Eigen::Index overlap_rank = 0;
};

/// Number of samples 0, dt, ..., T, i.e. floor(T/dt) + 1 (with a 1e-9
/// relative allowance so that T = 4, dt = 0.001 gives 4001).
std::size_t trajectory_length(double T, double dt);

/// Fixed-step classical RK4 from alpha(0) = (1, 0, ..., 0).
CoefficientTrajectory solve_dynamics(const QasMatrices& m, double T, double dt,
                                     double relative_cutoff = 1e-8);

struct ObservableSeries {
  std::vector<double> values;
  double max_imag_residual = 0.0;
};

/// Re(alpha^dag M alpha) along the trajectory.
ObservableSeries expectation_series(const Eigen::MatrixXcd& matrix,
                                    const CoefficientTrajectory& traj);
ObservableSeries observable_trajectory(const QasMatrices& m, const CoefficientTrajectory& traj,
                                       const std::string& label);

/// alpha^dag (H^2) alpha - alpha'^dag F alpha' along the trajectory.
std::vector<double> min_error_overlap(const QasMatrices& m, const CoefficientTrajectory& traj,
                                      double relative_cutoff = 1e-8);

/// sum_j alpha_j |psi_j>
StateVector represented_state(const std::vector<StateVector>& basis,
                              const Eigen::VectorXcd& alpha);

struct LinIndependenceReport {
  Eigen::VectorXd eigenvalues;  // of F, ascending
  double determinant = 0.0;
  double condition_number = 0.0;
  double cutoff = 0.0;
  bool independent = false;
  /// Per supplied eigengap de: 2 pi k / de inside (0, horizon].
  std::vector<std::vector<double>> forbidden_times;
  /// Parameter times that fall on a forbidden time (within 1e-6).
  std::vector<double> offending_times;
};

/// The basis is flagged dependent when det F < cutoff or the smallest
/// eigenvalue falls below cutoff times the largest.
LinIndependenceReport lin_independence_report(const Eigen::MatrixXcd& F,
                                              const std::vector<double>& eigengaps,
                                              const std::vector<double>& parameter_times,
                                              double horizon, double cutoff = 1e-8);

}  // namespace qas
