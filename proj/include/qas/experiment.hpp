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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qas/chemistry.hpp"
#include "qas/config.hpp"
#include "qas/engine.hpp"
#include "qas/manifest.hpp"
#include "qas/pauli.hpp"
#include "qas/statevector.hpp"

namespace qas {

/// Runs fn(0..count-1) on up to `workers` threads. Exceptions are rethrown
/// (lowest index first) after all threads finish.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

struct LoadedSystem {
  IntegralSet integrals;
  PauliSum hamiltonian;
  ObservableSet observables;  // restricted to the configured labels
  PreparedState initial;
  ExactPropagator propagator;
};

LoadedSystem load_system(const ExperimentConfig& cfg);

/// Per-time statistics over samples (sd uses the n-1 denominator).
struct SeriesStats {
  std::vector<double> mean, sd, min, max;
};

struct DynamicsResult {
  std::vector<double> times;
  std::vector<std::string> labels;
  std::map<std::string, std::vector<double>> oracle;     // statevector reference
  std::map<std::string, std::vector<double>> qas_exact;  // exact-matrix QAS
  std::map<std::string, SeriesStats> sampled;
  std::vector<double> eps_min;
  std::vector<double> infidelity;  // exact-matrix QAS state vs reference
  double max_imag_residual = 0.0;
  std::map<std::string, double> max_fractional_sd;   // max_t sd/|mean|
  std::map<std::string, double> mean_fractional_sd;  // time average of sd/|mean|
  std::vector<std::uint64_t> seeds;
  std::size_t draws_per_sample = 0;
  Eigen::Index overlap_rank = 0;
};

DynamicsResult compute_dynamics(const ExperimentConfig& cfg, const LoadedSystem& sys,
                                int workers = 1);

struct VarianceScanResult {
  std::vector<std::uint64_t> shot_list;
  std::vector<std::string> labels;
  std::map<std::string, std::vector<double>> variance;  // time-averaged, per N_s
  std::map<std::string, double> slope;                  // d log var / d log N_s
  std::map<std::string, double> intercept;
  std::vector<std::uint64_t> seeds;
};

VarianceScanResult compute_variance_scan(const ExperimentConfig& cfg, const LoadedSystem& sys,
                                         int workers = 1);

struct TrotterPoint {
  int steps = 0;
  std::optional<std::uint64_t> n_shots;  // nullopt: infinite-shot limit
  double mean_infidelity = 0.0;
  double sd_infidelity = 0.0;
  int samples = 0;
};

struct TrotterScanResult {
  std::vector<TrotterPoint> points;
  std::vector<std::uint64_t> seeds;
  const TrotterPoint& at(int steps, std::optional<std::uint64_t> n_shots) const;
};

TrotterScanResult compute_trotter_scan(const ExperimentConfig& cfg, const LoadedSystem& sys,
                                       int workers = 1);

struct ResourceRow {
  double steps = 0.0;
  double standard_cost = 0.0;
  double qas_bound = 0.0;
  double qas_explicit = 0.0;
  double ratio_bound = 0.0;
  double ratio_explicit = 0.0;
  bool qas_regime = false;
};

struct ResourceTableResult {
  std::string algorithm;
  double n = 0, n_terms = 0, gamma = 0, epsilon = 0, dt = 0, max_element = 0, lambda = 0;
  std::vector<double> parameter_times;
  double crossover = 0.0;
  double heuristic = 0.0;
  ResourceRow scenario;  // at the configured T/dt
  std::vector<ResourceRow> rows;
};

ResourceTableResult compute_resource_table(const ExperimentConfig& cfg,
                                           const LoadedSystem* sys = nullptr);

struct LinDepEntry {
  double s1 = 0.0;
  bool from_eigengap = false;
  LinIndependenceReport report;
};

struct LinDepResult {
  std::vector<double> eigenstate_energies;
  std::vector<double> eigengaps;
  std::vector<LinDepEntry> entries;
};

LinDepResult compute_lindep_report(const ExperimentConfig& cfg, const LoadedSystem& sys);

// File renderers. Each returns file name -> contents.
std::map<std::string, std::string> render_dynamics(const DynamicsResult& r);
std::map<std::string, std::string> render_variance_scan(const VarianceScanResult& r);
std::map<std::string, std::string> render_trotter_scan(const TrotterScanResult& r);
std::map<std::string, std::string> render_resource_table(const ResourceTableResult& r);
std::map<std::string, std::string> render_lindep_report(const LinDepResult& r);

/// Loads, computes, writes the outputs and manifest into cfg.output_dir.
RunManifest run_experiment(const ExperimentConfig& cfg, int workers = 1);

}  // namespace qas
