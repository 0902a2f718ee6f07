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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qas/engine.hpp"
#include "qas/pauli.hpp"

namespace qas {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { kDynamics, kVarianceScan, kTrotterScan, kResourceTable, kLinDepReport };

ExperimentKind parse_experiment_kind(std::string_view name);
std::string experiment_kind_name(ExperimentKind kind);

struct SystemConfig {
  std::filesystem::path fcidump;
  std::optional<std::filesystem::path> split;
  std::vector<std::string> orbital_labels;
};

struct InitialStateConfig {
  int electrons = 2;
  int two_sz = 0;
  std::vector<int> eigen_indices{0, -1};
  std::vector<cplx> amplitudes;  // defaults to an equal superposition
};

struct ShotConfig {
  std::uint64_t n_shots = 10000;
  std::uint64_t seed = 0;
  int samples = 100;
  std::vector<std::uint64_t> shot_list;  // variance scan
};

struct TrotterScanConfig {
  std::vector<int> steps{1, 10, 100, 1000, 10000};
  std::vector<std::optional<std::uint64_t>> shots;  // nullopt: infinite-shot limit
};

struct ResourceConfig {
  std::string algorithm = "trotter1";
  int k = 1;
  double gamma = 6.0;
  double epsilon = 1e-3;
  std::optional<double> n;
  std::optional<double> n_terms;
  std::optional<double> max_element;
  std::optional<double> lambda;
  std::vector<double> step_grid{100, 200, 383, 400, 1000, 2000, 4000, 10000, 100000};
};

struct LinDepConfig {
  std::vector<double> s1_values{0.5};
  bool include_forbidden = true;
  double cutoff = 1e-8;
};

/// One experiment, read from a JSON file. Relative paths resolve against the
/// directory holding the file.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kDynamics;
  std::optional<SystemConfig> system;
  InitialStateConfig initial_state;
  BasisSpec basis{{0.0, 0.5}};
  double T = 4.0;
  double dt = 0.001;
  ShotConfig shots;
  std::vector<std::string> observables;
  std::filesystem::path output_dir;
  TrotterScanConfig trotter;
  ResourceConfig resources;
  LinDepConfig lindep;
  double pinv_cutoff = 1e-8;

  /// Compact JSON of the effective configuration, used for hashing.
  std::string canonical;
};

/// Largest supported T/dt.
inline constexpr double kMaxSteps = 1e7;

ExperimentConfig parse_config(std::string_view json_text,
                              const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies CLI overrides and refreshes the canonical form.
void apply_overrides(ExperimentConfig& cfg, std::optional<std::uint64_t> seed,
                     std::optional<std::filesystem::path> output_dir);

}  // namespace qas
