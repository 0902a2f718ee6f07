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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qas/pauli.hpp"

namespace qas::resources {

// Leading-order runtime models for propagators e^{-iHt}. Every expression is
// evaluated with unit constant factor, so only ratios between totals are
// meaningful.

enum class Algorithm { kTrotter1, kTrotter2, kTrotter2k, kQubitization, kLcu, kQsp, kQdrift };

Algorithm parse_algorithm(std::string_view name);
std::string algorithm_name(Algorithm a);

struct CostFormula {
  Algorithm algorithm = Algorithm::kTrotter1;
  int k = 1;                  // order parameter of kTrotter2k
  double n_terms = 1.0;       // L
  double time = 1.0;          // t
  double epsilon = 1e-3;      // evolution error
  double max_element = 1.0;   // ||H||_max, largest absolute matrix element
  double lambda = 1.0;        // sum of |Pauli coefficients|
};

/// Throws std::invalid_argument for non-positive inputs, or epsilon outside
/// the range where the log log(1/epsilon) factors are positive.
double propagator_cost(const CostFormula& f);

struct ScenarioParams {
  double n = 2;          // eigenstates in the initial superposition
  double n_terms = 1;    // L
  double T = 4.0;
  double dt = 1e-3;
  double gamma = 6.0;    // controlled-propagator overhead
  double epsilon = 1e-3;

  void validate() const;
  double steps() const { return T / dt; }
};

/// 1/4 (T/dt)(T/dt + 1) L Poly_U, with Poly_U the cost of one dt propagator.
double standard_method_cost(const ScenarioParams& p, const CostFormula& f);

/// Bound 4 gamma n^2 (T/dt) L Poly_U, or, when the parameter times are given,
/// 4 gamma L Poly_U sum_{j,k} |s_j - s_k| / dt.
double qas_cost(const ScenarioParams& p, const CostFormula& f,
                const std::optional<std::vector<double>>& parameter_times = std::nullopt);

/// 16 gamma n^2 - 1: above this many steps QAS uses fewer propagator calls.
double crossover_threshold(const ScenarioParams& p);
/// 100 n^2
double heuristic_threshold(double n);

/// ||H||_max of the dense matrix and lambda of a Pauli sum.
double max_abs_element(const PauliSum& h);
double pauli_one_norm(const PauliSum& h);

}  // namespace qas::resources
