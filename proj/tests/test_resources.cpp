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

#include <gtest/gtest.h>

#include "qas/pauli.hpp"
#include "qas/resources.hpp"

namespace {

namespace r = qas::resources;
using r::Algorithm;

r::CostFormula formula(Algorithm a) {
  r::CostFormula f;
  f.algorithm = a;
  f.k = 2;
  f.n_terms = 27;
  f.time = 0.5;
  f.epsilon = 1e-3;
  f.max_element = 2.5;
  f.lambda = 9.0;
  return f;
}

const Algorithm kAll[] = {Algorithm::kTrotter1, Algorithm::kTrotter2, Algorithm::kTrotter2k,
                          Algorithm::kQubitization, Algorithm::kLcu, Algorithm::kQsp,
                          Algorithm::kQdrift};

TEST(PropagatorCost, ClosedForms) {
  auto f = formula(Algorithm::kTrotter1);
  f.n_terms = 1;
  EXPECT_DOUBLE_EQ(r::propagator_cost(f), std::pow(0.5 * 2.5, 2) / 1e-3);

  f = formula(Algorithm::kTrotter2k);
  f.k = 1;
  const double L = 27, tH = 0.5 * 2.5;
  EXPECT_NEAR(r::propagator_cost(f), 25 * L * std::pow(L * tH, 1.5) / std::sqrt(1e-3),
              1e-9 * r::propagator_cost(f));
  f.algorithm = Algorithm::kTrotter2;
  EXPECT_NEAR(r::propagator_cost(f), std::pow(L, 2.5) * std::pow(tH, 1.5) / std::sqrt(1e-3), 1e-6);

  f = formula(Algorithm::kQdrift);
  EXPECT_DOUBLE_EQ(r::propagator_cost(f), std::pow(0.5 * 9.0, 2) / 1e-3);
  f = formula(Algorithm::kQubitization);
  const double x = 1e3;
  EXPECT_DOUBLE_EQ(r::propagator_cost(f), 0.5 * 9.0 + std::log(x) / std::log(std::log(x)));
  f = formula(Algorithm::kQsp);
  EXPECT_DOUBLE_EQ(r::propagator_cost(f), 0.5 * 2.5 + std::log(x) / std::log(std::log(x)));
  f = formula(Algorithm::kLcu);
  const double y = 0.5 * 9.0 / 1e-3;
  EXPECT_DOUBLE_EQ(r::propagator_cost(f), 4.5 * std::log(y) / std::log(std::log(y)));
}

TEST(PropagatorCost, DoublingTimeQuadruplesTrotter1) {
  auto f = formula(Algorithm::kTrotter1);
  const double c1 = r::propagator_cost(f);
  f.time *= 2;
  EXPECT_NEAR(r::propagator_cost(f) / c1, 4.0, 1e-12);
}

TEST(PropagatorCost, PositiveAndMonotone) {
  for (auto a : kAll) {
    auto f = formula(a);
    for (double t : {1e-3, 0.01, 0.5, 4.0, 100.0}) {
      f.time = t;
      const double c = r::propagator_cost(f);
      EXPECT_GT(c, 0.0) << r::algorithm_name(a);
      auto g = f;
      g.time = 2 * t;
      EXPECT_GE(r::propagator_cost(g), c) << r::algorithm_name(a);
      g = f;
      g.n_terms = 2 * f.n_terms;
      EXPECT_GE(r::propagator_cost(g), c) << r::algorithm_name(a);
    }
  }
}

TEST(PropagatorCost, RejectsBadInput) {
  auto f = formula(Algorithm::kTrotter1);
  f.time = 0;
  EXPECT_THROW(r::propagator_cost(f), std::invalid_argument);
  f = formula(Algorithm::kQubitization);
  f.epsilon = 0.5;  // log log(2) < 0
  EXPECT_THROW(r::propagator_cost(f), std::invalid_argument);
  f = formula(Algorithm::kTrotter2k);
  f.k = 0;
  EXPECT_THROW(r::propagator_cost(f), std::invalid_argument);
  EXPECT_THROW(r::parse_algorithm("trotter9"), std::invalid_argument);
  for (auto a : kAll) EXPECT_EQ(r::parse_algorithm(r::algorithm_name(a)), a);
}

r::ScenarioParams scenario(double steps) {
  r::ScenarioParams p;
  p.n = 2;
  p.n_terms = 27;
  p.dt = 1e-3;
  p.T = steps * p.dt;
  p.gamma = 6;
  return p;
}

TEST(Scenario, StandardCostClosedForm) {
  auto f = formula(Algorithm::kTrotter1);
  auto p = scenario(1);
  f.time = p.dt;
  f.n_terms = p.n_terms;
  const double poly = r::propagator_cost(f);
  EXPECT_NEAR(r::standard_method_cost(p, f), 0.5 * p.n_terms * poly, 1e-9);
  auto p2 = scenario(2000), p4 = scenario(4000);
  const double ratio = r::standard_method_cost(p4, f) / r::standard_method_cost(p2, f);
  EXPECT_NEAR(ratio, 4000.0 * 4001 / (2000.0 * 2001), 1e-9);
}

TEST(Scenario, QasCostForms) {
  auto f = formula(Algorithm::kTrotter1);
  auto p = scenario(4000);
  f.time = p.dt;
  f.n_terms = p.n_terms;
  const double poly = r::propagator_cost(f);
  EXPECT_NEAR(r::qas_cost(p, f) / (96 * 4000 * 27 * poly), 1.0, 1e-12);
  const double explicit_cost = r::qas_cost(p, f, std::vector<double>{0.0, 0.5});
  EXPECT_NEAR(explicit_cost / (4 * 6 * 27 * poly * 1.0 / 1e-3), 1.0, 1e-12);
  EXPECT_LE(explicit_cost, r::qas_cost(p, f));
  EXPECT_EQ(r::qas_cost(p, f, std::vector<double>{0.0}), 0.0);
}

TEST(Scenario, Crossover) {
  auto p = scenario(4000);
  EXPECT_DOUBLE_EQ(r::crossover_threshold(p), 383.0);
  EXPECT_DOUBLE_EQ(r::heuristic_threshold(2), 400.0);
  EXPECT_DOUBLE_EQ(r::heuristic_threshold(4), 1600.0);
  p.gamma = 1;
  p.n = 1;
  EXPECT_DOUBLE_EQ(r::crossover_threshold(p), 15.0);
  p.gamma = 0.5;
  EXPECT_THROW(r::crossover_threshold(p), std::invalid_argument);
}

// standard / QAS(bound) > 1 exactly above the crossover.
TEST(Scenario, RatioCrossesOneAtThreshold) {
  auto f = formula(Algorithm::kTrotter1);
  for (double gamma : {1.0, 6.0, 10.0}) {
    for (double n : {1.0, 2.0, 3.0}) {
      auto p = scenario(10);
      p.gamma = gamma;
      p.n = n;
      const double cross = r::crossover_threshold(p);
      double prev = 0.0;
      for (double steps : {cross - 1, cross, cross + 1, 10 * cross}) {
        p.T = steps * p.dt;
        const double ratio = r::standard_method_cost(p, f) / r::qas_cost(p, f);
        if (steps < cross) EXPECT_LT(ratio, 1.0);
        if (steps == cross) EXPECT_NEAR(ratio, 1.0, 1e-12);
        if (steps > cross) EXPECT_GT(ratio, 1.0);
        EXPECT_GT(ratio, prev);
        prev = ratio;
      }
    }
  }
}

TEST(Scenario, Validation) {
  auto f = formula(Algorithm::kTrotter1);
  auto p = scenario(10);
  p.n = 0.5;
  EXPECT_THROW(r::standard_method_cost(p, f), std::invalid_argument);
  p = scenario(10);
  p.dt = -1;
  EXPECT_THROW(r::qas_cost(p, f), std::invalid_argument);
}

TEST(Norms, MaxElementAndLambda) {
  qas::PauliSum h(2, {{qas::PauliString::from_label("ZI"), 0.5},
                      {qas::PauliString::from_label("XX"), -0.25},
                      {qas::PauliString::from_label("II"), 1.0}});
  EXPECT_DOUBLE_EQ(r::pauli_one_norm(h), 1.75);
  // Diagonal entries are 1 +- 0.5, off-diagonal ones -0.25.
  EXPECT_DOUBLE_EQ(r::max_abs_element(h), 1.5);
}

}  // namespace
