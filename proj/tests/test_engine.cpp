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

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qas/chemistry.hpp"
#include "qas/engine.hpp"

namespace {

using qas::cplx;
using qas::PauliSum;
using qas::QasMatrices;
using qas::StateVector;

struct Problem {
  PauliSum h;
  StateVector psi0;
  qas::ObservableSet obs;
  std::vector<double> energies;
};

// Random Hermitian H on n qubits and psi0 spread over `k` of its eigenstates.
Problem random_problem(int n, int k, std::mt19937_64& rng) {
  Problem p{oracle::random_hermitian(n, 3 * n + 2, rng), StateVector(n), {}, {}};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle::dense(p.h));
  std::normal_distribution<double> g;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(es.eigenvalues().size());
  for (int j = 0; j < k; ++j) {
    const Eigen::Index col = j * (es.eigenvalues().size() - 1) / std::max(1, k - 1);
    v += cplx(g(rng), g(rng)) * es.eigenvectors().col(col);
    p.energies.push_back(es.eigenvalues()[col]);
  }
  p.psi0 = StateVector(n, v.normalized());
  p.obs.operators.emplace("z0", PauliSum(n, {{qas::PauliString::single(n, 0, qas::Pauli::Z), 1.0}}));
  p.obs.operators.emplace("rand", oracle::random_hermitian(n, 4, rng));
  return p;
}

Problem helium() {
  auto I = qas::read_fcidump(oracle::data_path("he_631g.fcidump"));
  qas::read_split_integrals(oracle::data_path("he_631g.split"), I);
  auto h = qas::build_electronic_hamiltonian(I);
  const double a = 1.0 / std::sqrt(2.0);
  auto prep = qas::build_initial_state(h, {{2, 0}, {0, -1}, {a, a}});
  return {h, prep.state, qas::build_observables(I, {"1s", "2s"}, true), prep.energies};
}

TEST(BasisSpec, Validation) {
  qas::BasisSpec ok{{0.0, 0.5}};
  EXPECT_NO_THROW(ok.validate(4.0));
  EXPECT_THROW((qas::BasisSpec{{0.1, 0.5}}.validate()), std::invalid_argument);
  EXPECT_THROW((qas::BasisSpec{{0.0, 0.5, 0.5}}.validate()), std::invalid_argument);
  EXPECT_THROW((qas::BasisSpec{{}}.validate()), std::invalid_argument);
  EXPECT_THROW(ok.validate(0.25), std::invalid_argument);
  qas::BasisSpec bad_trotter{{0.0, 0.5}, qas::Propagation::kTrotter1, 0};
  EXPECT_THROW(bad_trotter.validate(), std::invalid_argument);
}

TEST(BuildBasis, ExactStatesMatchExpm) {
  auto he = helium();
  auto one = qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0}});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].amplitudes(), he.psi0.amplitudes());
  auto two = qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, 0.5}});
  ASSERT_EQ(two.size(), 2u);
  Eigen::VectorXcd expect = oracle::expm_minus_i(oracle::dense(he.h), 0.5) * he.psi0.amplitudes();
  EXPECT_LT((two[1].amplitudes() - expect).norm(), 1e-12);
  auto trot = qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, 0.5}, qas::Propagation::kTrotter1, 1000});
  const double err = (trot[1].amplitudes() - expect).norm();
  EXPECT_GT(err, 0.0);
  EXPECT_LT(err, 1e-3);
}

TEST(ExactMatrices, MatchDenseContraction) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = random_problem(3, 3, rng);
    auto basis = qas::build_basis(p.psi0, p.h, qas::BasisSpec{{0.0, 0.3, 0.8}});
    auto m = qas::exact_matrices(p.psi0, p.h, p.obs, basis, true);
    Eigen::MatrixXcd B(8, 3);
    for (int j = 0; j < 3; ++j) B.col(j) = basis[j].amplitudes();
    Eigen::MatrixXcd H = oracle::dense(p.h);
    EXPECT_LT((m.F - B.adjoint() * B).norm(), 1e-12);
    EXPECT_LT((m.H.matrix - B.adjoint() * H * B).norm(), 1e-12);
    EXPECT_LT((*m.H2 - B.adjoint() * H * H * B).norm(), 1e-11);
    for (const auto& [label, op] : p.obs.operators) {
      EXPECT_LT((m.observable(label) - B.adjoint() * oracle::dense(op) * B).norm(), 1e-12);
    }
  }
}

TEST(ExactMatrices, OverlapIsHermitianPsdWithUnitDiagonal) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 4;
    auto p = random_problem(n, std::min(3, 1 << n), rng);
    auto basis = qas::build_basis(p.psi0, p.h, qas::BasisSpec{{0.0, 0.4, 1.1}});
    auto m = qas::exact_matrices(p.psi0, p.h, p.obs, basis);
    EXPECT_LT((m.F - m.F.adjoint()).norm(), 1e-10);
    EXPECT_LT((m.H.matrix - m.H.matrix.adjoint()).norm(), 1e-10);
    EXPECT_LT((*m.H2 - m.H2->adjoint()).norm(), 1e-10);
    for (Eigen::Index j = 0; j < m.size(); ++j) EXPECT_NEAR(std::abs(m.F(j, j) - 1.0), 0.0, 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.F);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(ExactMatrices, SingleStateAndTwoStateOverlap) {
  auto he = helium();
  auto m1 = qas::exact_matrices(he.psi0, he.h, he.obs, qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0}}));
  EXPECT_NEAR(std::abs(m1.F(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(m1.H.matrix(0, 0).real(), 0.5 * (he.energies[0] + he.energies[1]), 1e-12);
  // |F01|^2 = |b0|^4 + |b1|^4 + 2 |b0|^2 |b1|^2 cos(s1 de)
  const double s1 = 0.5;
  auto m2 = qas::exact_matrices(he.psi0, he.h, he.obs,
                                qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, s1}}));
  const double de = he.energies[1] - he.energies[0];
  EXPECT_NEAR(std::norm(m2.F(0, 1)), 0.25 + 0.25 + 0.5 * std::cos(s1 * de), 1e-12);
}

TEST(ExactMatrices, RejectsForeignFirstState) {
  auto he = helium();
  auto basis = qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, 0.5}});
  std::swap(basis[0], basis[1]);
  EXPECT_THROW(qas::exact_matrices(he.psi0, he.h, he.obs, basis), std::invalid_argument);
}

QasMatrices handmade(double f01, double term) {
  QasMatrices m;
  m.F = Eigen::MatrixXcd::Identity(2, 2);
  m.F(0, 1) = m.F(1, 0) = f01;
  Eigen::MatrixXcd el(2, 2);
  el << term, term, term, term;
  m.H.terms.push_back({qas::PauliString::from_label("Z"), 0.5, el});
  m.H.matrix = 0.5 * el;
  return m;
}

TEST(SampleMatrices, UnitMagnitudeComponentsHaveNoNoise) {
  for (double c : {1.0, -1.0}) {
    auto s = qas::sample_matrices(handmade(c, c), {100, 7});
    EXPECT_EQ(s.F(0, 1).real(), c);
    EXPECT_NE(s.F(0, 1).imag(), 0.0);  // a zero mean has the full 1/sqrt(N_s) spread
    const auto& el = s.H.terms.at(0).elements;
    EXPECT_EQ(el(0, 0), cplx(c, 0));
    EXPECT_EQ(el(1, 1), cplx(c, 0));
    EXPECT_EQ(el(0, 1).real(), c);
  }
}

TEST(SampleMatrices, HermitianWithUnitDiagonalAndDeterministic) {
  auto he = helium();
  auto basis = qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, 0.5}});
  auto exact = qas::exact_matrices(he.psi0, he.h, he.obs, basis);
  auto a = qas::sample_matrices(exact, {10000, 42});
  auto b = qas::sample_matrices(exact, {10000, 42});
  auto c = qas::sample_matrices(exact, {10000, 43});
  EXPECT_EQ(a.F, b.F);
  EXPECT_EQ(a.H.matrix, b.H.matrix);
  for (const auto& [label, op] : a.O) EXPECT_EQ(op.matrix, b.O.at(label).matrix);
  EXPECT_NE(a.F, c.F);
  EXPECT_EQ(a.F(0, 0), cplx(1, 0));
  EXPECT_EQ(a.F(1, 1), cplx(1, 0));
  EXPECT_EQ(a.F, a.F.adjoint().eval());
  EXPECT_LT((a.H.matrix - a.H.matrix.adjoint()).norm(), 1e-14);
  EXPECT_FALSE(a.H2.has_value());
  EXPECT_GT(a.n_draws, 0u);
  // Shared estimates make the total-energy observable identical to H.
  EXPECT_LT((a.observable("E_total") - a.H.matrix).norm(), 1e-12);
  auto u = qas::sample_matrices(exact, {10000, 42, false});
  EXPECT_GT((u.observable("E_total") - u.H.matrix).norm(), 1e-4);
  EXPECT_GT(u.n_draws, a.n_draws);
}

TEST(SampleMatrices, HugeShotCountApproachesExact) {
  auto he = helium();
  auto exact = qas::exact_matrices(he.psi0, he.h, he.obs,
                                   qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, 0.5}}));
  auto s = qas::sample_matrices(exact, {std::uint64_t{1} << 62, 1});
  EXPECT_LT((s.F - exact.F).norm(), 1e-8);
  EXPECT_LT((s.H.matrix - exact.H.matrix).norm(), 1e-8);
  EXPECT_THROW(qas::sample_matrices(exact, {0, 1}), std::invalid_argument);
}

// Per-element spread across 400 seeds against sqrt((1 - c^2) / N_s), and the
// mean against c (unbiasedness).
TEST(SampleMatrices, SpreadAndMeanMatchShotModel) {
  auto he = helium();
  auto exact = qas::exact_matrices(he.psi0, he.h, he.obs,
                                   qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, 0.5}}));
  const int seeds = 400;
  const double ns = 1e4;
  struct Acc { double c, sum = 0, sum2 = 0; };
  std::vector<Acc> acc;
  std::vector<std::vector<double>> draws(seeds);
  for (int s = 0; s < seeds; ++s) {
    auto m = qas::sample_matrices(exact, {10000, qas::derive_seed(99, s)});
    std::vector<double> v{m.F(0, 1).real(), m.F(0, 1).imag()};
    for (const auto& t : m.H.terms) {
      if (t.string.is_identity()) continue;
      v.push_back(t.elements(0, 0).real());
      v.push_back(t.elements(0, 1).real());
      v.push_back(t.elements(0, 1).imag());
    }
    draws[s] = v;
  }
  std::vector<double> truth{exact.F(0, 1).real(), exact.F(0, 1).imag()};
  for (const auto& t : exact.H.terms) {
    if (t.string.is_identity()) continue;
    truth.push_back(t.elements(0, 0).real());
    truth.push_back(t.elements(0, 1).real());
    truth.push_back(t.elements(0, 1).imag());
  }
  int outside3 = 0, checked = 0;
  for (std::size_t e = 0; e < truth.size(); ++e) {
    const double c = truth[e];
    const double sd = std::sqrt((1 - c * c) / ns);
    if (sd < 1e-6) continue;
    double mean = 0, ss = 0;
    for (int s = 0; s < seeds; ++s) mean += draws[s][e];
    mean /= seeds;
    for (int s = 0; s < seeds; ++s) ss += (draws[s][e] - mean) * (draws[s][e] - mean);
    const double sample_sd = std::sqrt(ss / (seeds - 1));
    const double sd_of_sd = sd / std::sqrt(2.0 * (seeds - 1));
    const double z_sd = std::abs(sample_sd - sd) / sd_of_sd;
    const double z_mean = std::abs(mean - c) / (sd / std::sqrt(seeds));
    EXPECT_LT(z_sd, 5.0) << "element " << e;
    EXPECT_LT(z_mean, 5.0) << "element " << e;
    outside3 += (z_sd > 3.0) + (z_mean > 3.0);
    checked += 2;
  }
  EXPECT_GT(checked, 40);
  EXPECT_LE(outside3, std::max(1, checked / 20));
}

TEST(SolveDynamics, ScalarPhase) {
  QasMatrices m;
  m.F = Eigen::MatrixXcd::Identity(1, 1);
  const double e = -1.7;
  m.H.matrix = Eigen::MatrixXcd::Constant(1, 1, e);
  auto traj = qas::solve_dynamics(m, 4.0, 0.001);
  ASSERT_EQ(traj.alphas.size(), 4001u);
  for (std::size_t i = 0; i < traj.alphas.size(); i += 250) {
    const double t = traj.times[i];
    EXPECT_NEAR(std::abs(traj.alphas[i][0]), 1.0, 1e-10);
    EXPECT_LT(std::abs(traj.alphas[i][0] - std::polar(1.0, -e * t)), 1e-10);
  }
}

TEST(SolveDynamics, TrajectoryLength) {
  EXPECT_EQ(qas::trajectory_length(4.0, 0.001), 4001u);
  EXPECT_EQ(qas::trajectory_length(1.0, 0.3), 4u);
  EXPECT_EQ(qas::trajectory_length(0.3, 0.1), 4u);
  EXPECT_THROW(qas::trajectory_length(0.01, 0.1), std::invalid_argument);
  EXPECT_THROW(qas::trajectory_length(1.0, 0.0), std::invalid_argument);
}

TEST(SolveDynamics, InitialCoefficients) {
  auto he = helium();
  auto basis = qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, 0.5}});
  auto traj = qas::solve_dynamics(qas::exact_matrices(he.psi0, he.h, he.obs, basis), 0.01, 0.001);
  EXPECT_EQ(traj.alphas.front(), (Eigen::VectorXcd(2) << 1.0, 0.0).finished());
  EXPECT_EQ(traj.overlap_rank, 2);
}

// Spanning basis reproduces the statevector oracle at every step and keeps
// norm and energy fixed.
TEST(SolveDynamics, SpanningBasisMatchesOracle) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 12; ++trial) {
    const int nq = 2 + trial % 3;
    const int k = 1 + trial % 3;
    auto p = random_problem(nq, k, rng);
    std::vector<double> times{0.0, 0.37, 0.81};
    times.resize(static_cast<std::size_t>(k));
    auto basis = qas::build_basis(p.psi0, p.h, qas::BasisSpec{times});
    auto m = qas::exact_matrices(p.psi0, p.h, p.obs, basis);
    const double T = 2.0, dt = 0.002;
    auto traj = qas::solve_dynamics(m, T, dt);
    Eigen::MatrixXcd step = oracle::expm_minus_i(oracle::dense(p.h), dt);
    Eigen::VectorXcd psi = p.psi0.amplitudes();
    const cplx n0 = traj.alphas[0].dot(m.F * traj.alphas[0]);
    const cplx e0 = traj.alphas[0].dot(m.H.matrix * traj.alphas[0]);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.alphas.size(); ++i) {
      if (i > 0) psi = step * psi;
      const auto& a = traj.alphas[i];
      auto phi = qas::represented_state(basis, a);
      worst = std::max(worst, 1.0 - qas::fidelity(StateVector(nq, psi), phi));
      EXPECT_NEAR(std::abs(a.dot(m.F * a) - n0), 0.0, 1e-8);
      EXPECT_NEAR(std::abs(a.dot(m.H.matrix * a) - e0), 0.0, 1e-8 * std::max(1.0, std::abs(e0)));
    }
    EXPECT_LT(worst, 1e-8) << "trial " << trial;
    auto eps = qas::min_error_overlap(m, traj);
    for (double e : eps) {
      EXPECT_GT(e, -1e-8);
      EXPECT_LT(e, 1e-8);
    }
  }
}

TEST(SolveDynamics, Rk4IsFourthOrder) {
  auto he = helium();
  auto basis = qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, 0.5}});
  auto m = qas::exact_matrices(he.psi0, he.h, he.obs, basis);
  qas::CoefficientGenerator gen(m.F, m.H.matrix);
  const double T = 2.0;
  Eigen::VectorXcd a0 = Eigen::VectorXcd::Zero(2);
  a0[0] = 1.0;
  Eigen::MatrixXcd AT = (gen.matrix() * T).eval();
  Eigen::VectorXcd exact = AT.exp() * a0;
  std::vector<double> err;
  for (double dt : {0.1, 0.05, 0.025}) {
    auto traj = qas::solve_dynamics(m, T, dt);
    err.push_back((traj.alphas.back() - exact).norm());
  }
  EXPECT_NEAR(std::log2(err[0] / err[1]), 4.0, 0.2);
  EXPECT_NEAR(std::log2(err[1] / err[2]), 4.0, 0.2);
}

TEST(MinErrorOverlap, UnderParameterizedAndEigenstate) {
  auto he = helium();
  auto basis = qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0}});
  auto m = qas::exact_matrices(he.psi0, he.h, he.obs, basis);
  auto eps = qas::min_error_overlap(m, qas::solve_dynamics(m, 1.0, 0.01));
  // One state for a two-eigenstate superposition: the residual is Var(H).
  const double var = 0.25 * std::pow(he.energies[1] - he.energies[0], 2);
  for (double e : eps) EXPECT_NEAR(e, var, 1e-8);
  EXPECT_GT(var, 1.0);

  auto prep = qas::build_initial_state(he.h, {{2, 0}, {0}, {1.0}});
  auto b1 = qas::build_basis(prep.state, he.h, qas::BasisSpec{{0.0}});
  auto m1 = qas::exact_matrices(prep.state, he.h, he.obs, b1);
  for (double e : qas::min_error_overlap(m1, qas::solve_dynamics(m1, 1.0, 0.01))) EXPECT_NEAR(e, 0.0, 1e-10);

  m.H2.reset();
  EXPECT_THROW(qas::min_error_overlap(m, qas::solve_dynamics(m, 1.0, 0.01)), std::invalid_argument);
}

TEST(ObservableTrajectory, ExactModeDiagnostics) {
  auto he = helium();
  auto basis = qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, 0.5}});
  auto m = qas::exact_matrices(he.psi0, he.h, he.obs, basis);
  auto traj = qas::solve_dynamics(m, 4.0, 0.001);
  auto pop = qas::observable_trajectory(m, traj, "pop_1s");
  EXPECT_LT(pop.max_imag_residual, 1e-8);
  const double expect0 = qas::expectation(he.psi0, he.obs.at("pop_1s"), he.psi0).real();
  EXPECT_NEAR(pop.values[0], expect0, 1e-12);
  EXPECT_THROW(qas::observable_trajectory(m, traj, "pop_9s"), std::out_of_range);

  // Stationary state: constant series.
  auto prep = qas::build_initial_state(he.h, {{2, 0}, {0}, {1.0}});
  auto b1 = qas::build_basis(prep.state, he.h, qas::BasisSpec{{0.0}});
  auto m1 = qas::exact_matrices(prep.state, he.h, he.obs, b1);
  auto s = qas::observable_trajectory(m1, qas::solve_dynamics(m1, 1.0, 0.01), "pop_2s");
  for (double v : s.values) EXPECT_NEAR(v, s.values[0], 1e-10);
}

TEST(SolveDynamics, NumericFailuresAreReported) {
  QasMatrices m;
  m.F = Eigen::MatrixXcd::Zero(1, 1);
  m.H.matrix = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  EXPECT_THROW(qas::solve_dynamics(m, 1.0, 0.1), qas::NumericError);
  m.F = Eigen::MatrixXcd::Identity(1, 1);
  m.H.matrix = Eigen::MatrixXcd::Constant(1, 1, 1e300);
  EXPECT_THROW(qas::solve_dynamics(m, 1.0, 0.5), qas::NumericError);
}

TEST(LinIndependence, ForbiddenParameterTime) {
  auto he = helium();
  const double de = he.energies[1] - he.energies[0];
  const double forbidden = 2 * std::numbers::pi / de;
  auto F = [&](double s1) {
    auto basis = qas::build_basis(he.psi0, he.h, qas::BasisSpec{{0.0, s1}});
    return qas::exact_matrices(he.psi0, he.h, qas::ObservableSet{}, basis, false).F;
  };
  auto bad = qas::lin_independence_report(F(forbidden), {de}, {0.0, forbidden}, 4.0);
  EXPECT_FALSE(bad.independent);
  EXPECT_LT(bad.determinant, 1e-8);
  EXPECT_EQ(bad.offending_times.size(), 1u);
  ASSERT_EQ(bad.forbidden_times.size(), 1u);
  ASSERT_EQ(bad.forbidden_times[0].size(), 2u);
  EXPECT_NEAR(bad.forbidden_times[0][0], 1.806, 1e-3);
  EXPECT_NEAR(bad.forbidden_times[0][1], 2 * forbidden, 1e-12);

  auto good = qas::lin_independence_report(F(0.5), {de}, {0.0, 0.5}, 4.0);
  EXPECT_TRUE(good.independent);
  EXPECT_GT(good.determinant, 0.1);
  EXPECT_TRUE(good.offending_times.empty());
  EXPECT_NEAR(good.condition_number, good.eigenvalues.maxCoeff() / good.eigenvalues.minCoeff(), 1e-12);
}

TEST(DeriveSeed, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t master : {0ULL, 1ULL, 12345ULL})
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(qas::derive_seed(master, i));
  EXPECT_EQ(seen.size(), 3000u);
  EXPECT_EQ(qas::derive_seed(7, 3), qas::derive_seed(7, 3));
}

}  // namespace
