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

#include "qas/resources.hpp"

#include <cmath>
#include <stdexcept>

namespace qas::resources {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive");
  }
}

// log(x) / log(log(x)), defined for x > e.
double log_over_loglog(double x, const char* what) {
  if (!(x > std::exp(1.0))) {
    throw std::invalid_argument(std::string(what) + " must exceed e for the log/loglog factor");
  }
  return std::log(x) / std::log(std::log(x));
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "trotter1") return Algorithm::kTrotter1;
  if (name == "trotter2") return Algorithm::kTrotter2;
  if (name == "trotter2k") return Algorithm::kTrotter2k;
  if (name == "qubitization") return Algorithm::kQubitization;
  if (name == "lcu") return Algorithm::kLcu;
  if (name == "qsp") return Algorithm::kQsp;
  if (name == "qdrift") return Algorithm::kQdrift;
  throw std::invalid_argument("unknown propagator algorithm '" + std::string(name) + "'");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kTrotter1: return "trotter1";
    case Algorithm::kTrotter2: return "trotter2";
    case Algorithm::kTrotter2k: return "trotter2k";
    case Algorithm::kQubitization: return "qubitization";
    case Algorithm::kLcu: return "lcu";
    case Algorithm::kQsp: return "qsp";
    case Algorithm::kQdrift: return "qdrift";
  }
  return "unknown";
}

double propagator_cost(const CostFormula& f) {
  require_positive(f.n_terms, "term count L");
  require_positive(f.time, "time t");
  require_positive(f.epsilon, "epsilon");
  const double L = f.n_terms;
  const double t = f.time;
  const double eps = f.epsilon;
  switch (f.algorithm) {
    case Algorithm::kTrotter1:
      require_positive(f.max_element, "||H||_max");
      return L * L * L * std::pow(t * f.max_element, 2) / eps;
    case Algorithm::kTrotter2:
      require_positive(f.max_element, "||H||_max");
      return std::pow(L, 2.5) * std::pow(t * f.max_element, 1.5) / std::sqrt(eps);
    case Algorithm::kTrotter2k: {
      require_positive(f.max_element, "||H||_max");
      if (f.k < 1) throw std::invalid_argument("Trotter order parameter k must be >= 1");
      const double inv2k = 1.0 / (2.0 * f.k);
      return std::pow(5.0, 2 * f.k) * L * std::pow(L * t * f.max_element, 1.0 + inv2k) /
             std::pow(eps, inv2k);
    }
    case Algorithm::kQubitization:
      require_positive(f.lambda, "lambda");
      return t * f.lambda + log_over_loglog(1.0 / eps, "1/epsilon");
    case Algorithm::kLcu: {
      require_positive(f.lambda, "lambda");
      const double tl = t * f.lambda;
      return tl * log_over_loglog(tl / eps, "t lambda / epsilon");
    }
    case Algorithm::kQsp:
      require_positive(f.max_element, "||H||_max");
      return t * f.max_element + log_over_loglog(1.0 / eps, "1/epsilon");
    case Algorithm::kQdrift:
      require_positive(f.lambda, "lambda");
      return std::pow(t * f.lambda, 2) / eps;
  }
  throw std::invalid_argument("unknown propagator algorithm");
}

void ScenarioParams::validate() const {
  require_positive(n, "n");
  require_positive(n_terms, "L");
  require_positive(T, "T");
  require_positive(dt, "dt");
  require_positive(epsilon, "epsilon");
  if (n < 1.0) throw std::invalid_argument("n must be at least 1");
  if (gamma < 1.0) throw std::invalid_argument("gamma must be at least 1");
}

namespace {

double step_cost(const ScenarioParams& p, CostFormula f) {
  f.time = p.dt;
  f.epsilon = p.epsilon;
  return propagator_cost(f);
}

}  // namespace

double standard_method_cost(const ScenarioParams& p, const CostFormula& f) {
  p.validate();
  const double steps = p.steps();
  return 0.25 * steps * (steps + 1.0) * p.n_terms * step_cost(p, f);
}

double qas_cost(const ScenarioParams& p, const CostFormula& f,
                const std::optional<std::vector<double>>& parameter_times) {
  p.validate();
  const double poly = step_cost(p, f);
  if (!parameter_times) {
    return 4.0 * p.gamma * p.n * p.n * p.steps() * p.n_terms * poly;
  }
  double sum = 0.0;
  for (double sj : *parameter_times)
    for (double sk : *parameter_times) sum += std::abs(sj - sk);
  return 4.0 * p.gamma * p.n_terms * (sum / p.dt) * poly;
}

double crossover_threshold(const ScenarioParams& p) {
  if (!(p.n >= 1.0) || !(p.gamma >= 1.0)) {
    throw std::invalid_argument("crossover needs n >= 1 and gamma >= 1");
  }
  return 16.0 * p.gamma * p.n * p.n - 1.0;
}

double heuristic_threshold(double n) {
  require_positive(n, "n");
  return 100.0 * n * n;
}

double max_abs_element(const PauliSum& h) { return to_dense(h).cwiseAbs().maxCoeff(); }

double pauli_one_norm(const PauliSum& h) { return h.one_norm(); }

}  // namespace qas::resources
