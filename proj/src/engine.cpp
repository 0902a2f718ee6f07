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

#include "qas/engine.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qas {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Eigen::MatrixXcd term_elements(const PauliString& p, const std::vector<StateVector>& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    StateVector pk = apply_pauli_string(p, basis[k]);
    for (Eigen::Index j = 0; j <= k; ++j) {
      m(j, k) = inner(basis[j], pk);
      if (j != k) m(k, j) = std::conj(m(j, k));
    }
    m(k, k) = m(k, k).real();
  }
  return m;
}

OperatorElements operator_elements(const PauliSum& op, const std::vector<StateVector>& basis) {
  OperatorElements out;
  const auto n = static_cast<Eigen::Index>(basis.size());
  out.matrix = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& t : op.terms()) {
    TermElements te{t.string, t.coefficient, term_elements(t.string, basis)};
    out.matrix += t.coefficient * te.elements;
    out.terms.push_back(std::move(te));
  }
  return out;
}

class ShotSampler {
 public:
  ShotSampler(std::uint64_t n_shots, std::uint64_t seed)
      : inv_shots_(1.0 / static_cast<double>(n_shots)), rng_(seed) {}

  double draw(double c) {
    ++draws_;
    double var = std::max(0.0, 1.0 - c * c) * inv_shots_;
    return c + std::sqrt(var) * normal_(rng_);
  }
  std::size_t draws() const { return draws_; }

 private:
  double inv_shots_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::size_t draws_ = 0;
};

using EstimateCache = std::map<PauliKey, Eigen::MatrixXcd>;

OperatorElements sample_operator(const OperatorElements& exact, const Eigen::MatrixXcd& F,
                                 ShotSampler& sampler, EstimateCache* cache) {
  const Eigen::Index n = F.rows();
  OperatorElements out;
  out.matrix = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& t : exact.terms) {
    TermElements s{t.string, t.coefficient, Eigen::MatrixXcd(n, n)};
    const PauliKey key{t.string.x_mask(), t.string.z_mask()};
    const Eigen::MatrixXcd* shared = nullptr;
    if (cache) {
      if (auto it = cache->find(key); it != cache->end()) shared = &it->second;
    }
    if (t.string.is_identity()) {
      s.elements = F;
    } else if (shared) {
      s.elements = *shared;
    } else {
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j; k < n; ++k) {
          const cplx c = t.elements(j, k);
          if (j == k) {
            s.elements(j, j) = sampler.draw(c.real());
          } else {
            double re = sampler.draw(c.real());
            double im = sampler.draw(c.imag());
            s.elements(j, k) = {re, im};
            s.elements(k, j) = {re, -im};
          }
        }
      }
      if (cache) cache->emplace(key, s.elements);
    }
    out.matrix += t.coefficient * s.elements;
    out.terms.push_back(std::move(s));
  }
  return out;
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace

void BasisSpec::validate(std::optional<double> horizon) const {
  if (times.empty() || times.front() != 0.0) {
    throw std::invalid_argument("basis parameter times must start at s_0 = 0");
  }
  for (std::size_t j = 1; j < times.size(); ++j) {
    if (!(times[j] > times[j - 1])) {
      throw std::invalid_argument("basis parameter times must be strictly increasing");
    }
  }
  if (horizon && times.back() > *horizon) {
    throw std::invalid_argument("basis parameter time exceeds the simulation horizon");
  }
  if (propagation == Propagation::kTrotter1 && trotter_steps <= 0) {
    throw std::invalid_argument("Trotter step count must be positive");
  }
}

std::vector<StateVector> build_basis(const StateVector& psi0, const PauliSum& h,
                                     const BasisSpec& spec) {
  if (spec.propagation == Propagation::kTrotter1) {
    spec.validate();
    std::vector<StateVector> out{psi0};
    for (std::size_t j = 1; j < spec.times.size(); ++j) {
      out.push_back(trotter1_evolve(h, spec.times[j], spec.trotter_steps, psi0));
    }
    return out;
  }
  return build_basis(psi0, h, ExactPropagator(h), spec);
}

std::vector<StateVector> build_basis(const StateVector& psi0, const PauliSum& h,
                                     const ExactPropagator& propagator,
                                     const BasisSpec& spec) {
  spec.validate();
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("initial state must be normalized");
  }
  std::vector<StateVector> out{psi0};
  for (std::size_t j = 1; j < spec.times.size(); ++j) {
    if (spec.propagation == Propagation::kTrotter1) {
      out.push_back(trotter1_evolve(h, spec.times[j], spec.trotter_steps, psi0));
    } else {
      out.push_back(propagator.evolve(spec.times[j], psi0));
    }
  }
  return out;
}

const Eigen::MatrixXcd& QasMatrices::observable(const std::string& label) const {
  auto it = O.find(label);
  if (it == O.end()) throw std::out_of_range("no observable matrix for '" + label + "'");
  return it->second.matrix;
}

QasMatrices exact_matrices(const StateVector& psi0, const PauliSum& h,
                           const ObservableSet& observables,
                           const std::vector<StateVector>& basis, bool with_h2) {
  if (basis.empty()) throw std::invalid_argument("basis is empty");
  if (basis.front().n_qubits() != psi0.n_qubits() ||
      (basis.front().amplitudes() - psi0.amplitudes()).norm() > 1e-10) {
    throw std::invalid_argument("the first basis state must be the initial state");
  }
  for (const auto& b : basis) {
    if (b.n_qubits() != h.n_qubits()) throw std::invalid_argument("dimension mismatch");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  QasMatrices m;
  m.F.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) m.F(j, k) = inner(basis[j], basis[k]);
  m.F = hermitian_part(m.F);
  m.H = operator_elements(h, basis);
  for (const auto& [label, op] : observables.operators) {
    if (op.n_qubits() != h.n_qubits()) throw std::invalid_argument("dimension mismatch");
    m.O.emplace(label, operator_elements(op, basis));
  }
  if (with_h2) {
    std::vector<StateVector> hb;
    hb.reserve(basis.size());
    for (const auto& b : basis) hb.push_back(apply_pauli_sum(h, b));
    Eigen::MatrixXcd h2(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) h2(j, k) = inner(hb[j], hb[k]);
    m.H2 = hermitian_part(h2);
  }
  return m;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(master_seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

QasMatrices sample_matrices(const QasMatrices& exact, const ShotModel& model) {
  if (model.n_shots == 0) throw std::invalid_argument("shot count must be at least 1");
  ShotSampler sampler(model.n_shots, model.seed);
  const Eigen::Index n = exact.size();
  QasMatrices out;
  out.F = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      double re = sampler.draw(exact.F(j, k).real());
      double im = sampler.draw(exact.F(j, k).imag());
      out.F(j, k) = {re, im};
      out.F(k, j) = {re, -im};
    }
  }
  EstimateCache cache;
  EstimateCache* shared = model.share_estimates ? &cache : nullptr;
  out.H = sample_operator(exact.H, out.F, sampler, shared);
  for (const auto& [label, op] : exact.O) {
    out.O.emplace(label, sample_operator(op, out.F, sampler, shared));
  }
  out.n_draws = sampler.draws();
  return out;
}

CoefficientGenerator::CoefficientGenerator(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& H,
                                           double relative_cutoff) {
  if (F.rows() != F.cols() || H.rows() != F.rows() || H.cols() != F.cols() || F.rows() == 0) {
    throw std::invalid_argument("F and H must be square matrices of equal size");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(F));
  if (es.info() != Eigen::Success) throw NumericError("overlap eigendecomposition failed");
  overlap_evals_ = es.eigenvalues();
  const double lmax = overlap_evals_.maxCoeff();
  if (!(lmax > 0.0) || !std::isfinite(lmax)) {
    throw NumericError("overlap matrix has no eigenvalue above the cutoff");
  }
  const double cut = relative_cutoff * lmax;
  const Eigen::Index n = F.rows();
  Eigen::VectorXcd inv = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (overlap_evals_[k] > cut) {
      inv[k] = 1.0 / overlap_evals_[k];
      ++rank_;
    }
  }
  const auto& V = es.eigenvectors();
  Eigen::MatrixXcd pinv = V * inv.asDiagonal() * V.adjoint();
  generator_ = cplx{0.0, -1.0} * (pinv * H);
}

std::size_t trajectory_length(double T, double dt) {
  if (!(dt > 0.0) || !(T >= dt)) {
    throw std::invalid_argument("need dt > 0 and T >= dt");
  }
  return static_cast<std::size_t>(std::floor(T / dt * (1.0 + 1e-9))) + 1;
}

CoefficientTrajectory solve_dynamics(const QasMatrices& m, double T, double dt,
                                     double relative_cutoff) {
  const std::size_t len = trajectory_length(T, dt);
  CoefficientGenerator gen(m.F, m.H.matrix, relative_cutoff);
  const Eigen::Index n = m.size();
  CoefficientTrajectory traj;
  traj.overlap_rank = gen.rank();
  traj.times.reserve(len);
  traj.alphas.reserve(len);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(n);
  a[0] = 1.0;
  traj.times.push_back(0.0);
  traj.alphas.push_back(a);
  const auto& A = gen.matrix();
  for (std::size_t step = 1; step < len; ++step) {
    Eigen::VectorXcd k1 = A * a;
    Eigen::VectorXcd k2 = A * (a + 0.5 * dt * k1);
    Eigen::VectorXcd k3 = A * (a + 0.5 * dt * k2);
    Eigen::VectorXcd k4 = A * (a + dt * k3);
    a += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!a.allFinite()) {
      std::ostringstream os;
      os << "coefficient dynamics diverged at step " << step << " (t = " << step * dt
         << "); overlap eigenvalues: " << gen.overlap_eigenvalues().transpose();
      throw NumericError(os.str());
    }
    traj.times.push_back(static_cast<double>(step) * dt);
    traj.alphas.push_back(a);
  }
  return traj;
}

ObservableSeries expectation_series(const Eigen::MatrixXcd& matrix,
                                    const CoefficientTrajectory& traj) {
  ObservableSeries out;
  out.values.reserve(traj.alphas.size());
  for (const auto& a : traj.alphas) {
    if (a.size() != matrix.rows()) throw std::invalid_argument("dimension mismatch");
    cplx v = a.dot(matrix * a);
    out.values.push_back(v.real());
    out.max_imag_residual = std::max(out.max_imag_residual, std::abs(v.imag()));
  }
  return out;
}

ObservableSeries observable_trajectory(const QasMatrices& m, const CoefficientTrajectory& traj,
                                       const std::string& label) {
  return expectation_series(m.observable(label), traj);
}

std::vector<double> min_error_overlap(const QasMatrices& m, const CoefficientTrajectory& traj,
                                      double relative_cutoff) {
  if (!m.H2) throw std::invalid_argument("error overlap needs the (H^2) matrix");
  CoefficientGenerator gen(m.F, m.H.matrix, relative_cutoff);
  std::vector<double> out;
  out.reserve(traj.alphas.size());
  for (const auto& a : traj.alphas) {
    Eigen::VectorXcd ad = gen(a);
    cplx e = a.dot(*m.H2 * a) - ad.dot(m.F * ad);
    out.push_back(e.real());
  }
  return out;
}

StateVector represented_state(const std::vector<StateVector>& basis,
                              const Eigen::VectorXcd& alpha) {
  if (basis.empty() || static_cast<Eigen::Index>(basis.size()) != alpha.size()) {
    throw std::invalid_argument("coefficient count does not match the basis");
  }
  StateVector out(basis.front().n_qubits(),
                  Eigen::VectorXcd::Zero(basis.front().dim()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    out.amplitudes() += alpha[static_cast<Eigen::Index>(j)] * basis[j].amplitudes();
  }
  return out;
}

LinIndependenceReport lin_independence_report(const Eigen::MatrixXcd& F,
                                              const std::vector<double>& eigengaps,
                                              const std::vector<double>& parameter_times,
                                              double horizon, double cutoff) {
  if (F.rows() != F.cols() || F.rows() == 0) throw std::invalid_argument("F must be square");
  LinIndependenceReport r;
  r.cutoff = cutoff;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(F), Eigen::EigenvaluesOnly);
  r.eigenvalues = es.eigenvalues();
  r.determinant = r.eigenvalues.prod();
  const double lmin = r.eigenvalues.minCoeff();
  const double lmax = r.eigenvalues.maxCoeff();
  r.condition_number = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  r.independent = r.determinant >= cutoff && lmin >= cutoff * lmax;
  for (double gap : eigengaps) {
    std::vector<double> times;
    if (std::abs(gap) > 0.0) {
      const double period = 2.0 * std::numbers::pi / std::abs(gap);
      for (int k = 1; k * period <= horizon; ++k) times.push_back(k * period);
      for (double s : parameter_times) {
        if (s <= 0.0) continue;
        double k = std::round(s / period);
        if (k >= 1 && std::abs(s - k * period) < 1e-6) r.offending_times.push_back(s);
      }
    }
    r.forbidden_times.push_back(std::move(times));
  }
  return r;
}

}  // namespace qas
