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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qas/chemistry.hpp"

namespace {

using qas::cplx;
using qas::IntegralSet;
using qas::PauliSum;

IntegralSet load(const std::string& stem) {
  auto I = qas::read_fcidump(oracle::data_path(stem + ".fcidump"));
  qas::read_split_integrals(oracle::data_path(stem + ".split"), I);
  return I;
}

TEST(Hamiltonian, MatchesDenseSecondQuantizedOracle) {
  for (const char* stem : {"he_631g", "h2_631g"}) {
    auto I = load(stem);
    auto h = qas::build_electronic_hamiltonian(I);
    EXPECT_TRUE(h.is_hermitian());
    EXPECT_LT((oracle::dense(h) - oracle::dense_hamiltonian(I)).norm(), 1e-10) << stem;
  }
}

TEST(Hamiltonian, TermCounts) {
  EXPECT_EQ(qas::build_electronic_hamiltonian(load("he_631g")).size(), 27u);
  EXPECT_EQ(qas::build_electronic_hamiltonian(load("h2_631g")).size(), 185u);
}

TEST(Hamiltonian, ConservesParticleNumberAndSpin) {
  for (const char* stem : {"he_631g", "h2_631g"}) {
    auto I = load(stem);
    auto h = qas::build_electronic_hamiltonian(I);
    auto N = qas::particle_number(I.n_orbitals);
    auto Sz = qas::spin_z2(I.n_orbitals);
    EXPECT_TRUE((h * N - N * h).empty()) << stem;
    EXPECT_TRUE((h * Sz - Sz * h).empty()) << stem;
  }
}

TEST(Spectrum, SectorExtremes) {
  auto he = qas::sector_spectrum(qas::build_electronic_hamiltonian(load("he_631g")), {2, 0});
  auto h2 = qas::sector_spectrum(qas::build_electronic_hamiltonian(load("h2_631g")), {2, 0});
  EXPECT_NEAR(he.energies[0], -2.87, 0.01);
  EXPECT_NEAR(he.energies[he.energies.size() - 1], 0.609, 0.01);
  EXPECT_NEAR(h2.energies[0], -1.15, 0.01);
  EXPECT_NEAR(h2.energies[h2.energies.size() - 1], 1.93, 0.01);
}

TEST(Spectrum, SectorEigenpairsAreEigenpairsOfFullOperator) {
  auto I = load("h2_631g");
  auto h = qas::build_electronic_hamiltonian(I);
  auto sp = qas::sector_spectrum(h, {2, 0});
  EXPECT_EQ(sp.energies.size(), 16);
  Eigen::MatrixXcd H = oracle::dense(h);
  for (Eigen::Index k = 0; k < sp.energies.size(); ++k) {
    Eigen::VectorXcd v = sp.states.col(k);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LT((H * v - sp.energies[k] * v).norm(), 1e-10);
  }
}

TEST(Sector, BasisSizes) {
  EXPECT_EQ(qas::sector_basis(4, {2, 0}).size(), 4u);
  EXPECT_EQ(qas::sector_basis(8, {2, 0}).size(), 16u);
  EXPECT_EQ(qas::sector_basis(8, {2, 2}).size(), 6u);
  EXPECT_EQ(qas::sector_basis(4, {2, 0}).front(), 0b0011u);
}

TEST(Observables, EnergyPartsSumToHamiltonian) {
  for (const char* stem : {"he_631g", "h2_631g"}) {
    auto I = load(stem);
    auto obs = qas::build_observables(I, {}, true);
    auto h = qas::build_electronic_hamiltonian(I);
    EXPECT_TRUE(obs.at("E_total").approx_equal(h, 1e-12)) << stem;
    PauliSum parts = obs.at("E_kinetic") + obs.at("E_potential") + obs.at("E_coulomb") +
                     PauliSum::identity(h.n_qubits(), I.e_nuc);
    EXPECT_TRUE(parts.approx_equal(h, 1e-12)) << stem;
  }
}

TEST(Observables, PopulationLabels) {
  auto I = load("he_631g");
  auto obs = qas::build_observables(I, {"1s", "2s"}, false);
  EXPECT_EQ(obs.labels(), (std::vector<std::string>{"pop_1s", "pop_2s"}));
  EXPECT_THROW(qas::build_observables(I, {"1s"}, false), std::invalid_argument);
  auto sum = obs.at("pop_1s") + obs.at("pop_2s");
  EXPECT_TRUE(sum.approx_equal(qas::particle_number(2), 1e-15));
  EXPECT_THROW(obs.at("pop_3s"), std::out_of_range);
}

TEST(InitialState, EqualSuperposition) {
  auto h = qas::build_electronic_hamiltonian(load("he_631g"));
  const double a = 1.0 / std::sqrt(2.0);
  auto prep = qas::build_initial_state(h, {{2, 0}, {0, -1}, {a, a}});
  EXPECT_NEAR(prep.state.norm(), 1.0, 1e-12);
  ASSERT_EQ(prep.energies.size(), 2u);
  EXPECT_NEAR(prep.energies[0], -2.87, 0.01);
  EXPECT_NEAR(prep.energies[1], 0.609, 0.01);
  cplx e = qas::expectation(prep.state, h, prep.state);
  EXPECT_NEAR(e.real(), 0.5 * (prep.energies[0] + prep.energies[1]), 1e-12);
}

TEST(InitialState, RejectsBadSpecs) {
  auto h = qas::build_electronic_hamiltonian(load("he_631g"));
  EXPECT_THROW(qas::build_initial_state(h, {{2, 0}, {0, 1}, {1.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(qas::build_initial_state(h, {{2, 0}, {0, 0}, {0.6, 0.8}}), std::invalid_argument);
  EXPECT_THROW(qas::build_initial_state(h, {{2, 0}, {0, 9}, {0.6, 0.8}}), std::out_of_range);
  EXPECT_THROW(qas::build_initial_state(h, {{2, 0}, {0}, {0.6, 0.8}}), std::invalid_argument);
  // Both one-electron spin-up states see Z_3 = +1.
  PauliSum flat(4, {{qas::PauliString::from_label("IIIZ"), 1.0}});
  EXPECT_THROW(qas::build_initial_state(flat, {{1, 1}, {0}, {1.0}}), std::invalid_argument);
}

}  // namespace
