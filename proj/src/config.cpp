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

#include "qas/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "qas/integrals.hpp"

namespace qas {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.contains(k)) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

cplx parse_amplitude(const json& a) {
  if (a.is_number()) return {a.get<double>(), 0.0};
  if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
    return {a[0].get<double>(), a[1].get<double>()};
  }
  throw ConfigError("amplitude must be a number or a [re, im] pair");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

void require_file(const std::filesystem::path& p) {
  if (!std::filesystem::is_regular_file(p)) {
    throw ConfigError("referenced file does not exist: " + p.string());
  }
}

void validate(const ExperimentConfig& cfg) {
  if (!(cfg.dt > 0.0) || !(cfg.T >= cfg.dt)) throw ConfigError("need dt > 0 and T >= dt");
  if (cfg.T / cfg.dt > kMaxSteps) throw ConfigError("T/dt exceeds the 1e7 step guard");
  try {
    cfg.basis.validate(cfg.T);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.kind != ExperimentKind::kResourceTable) {
    if (!cfg.system) throw ConfigError("'system' is required for this experiment kind");
    require_file(cfg.system->fcidump);
    if (cfg.system->split) require_file(*cfg.system->split);
  }
  if (cfg.shots.n_shots < 1) throw ConfigError("n_shots must be at least 1");
  if (cfg.shots.samples < 1) throw ConfigError("samples must be at least 1");
  const auto& is = cfg.initial_state;
  if (is.eigen_indices.empty()) throw ConfigError("initial_state needs eigen_indices");
  if (is.amplitudes.size() != is.eigen_indices.size()) {
    throw ConfigError("initial_state needs one amplitude per eigen-index");
  }
  if (cfg.kind == ExperimentKind::kVarianceScan && cfg.shots.shot_list.size() < 2) {
    throw ConfigError("variance scan needs at least two shot settings");
  }
  for (auto n : cfg.shots.shot_list) {
    if (n < 1) throw ConfigError("shot counts must be at least 1");
  }
  if (cfg.kind == ExperimentKind::kTrotterScan) {
    if (cfg.trotter.steps.empty()) throw ConfigError("trotter scan needs a step list");
    for (int s : cfg.trotter.steps) {
      if (s < 1) throw ConfigError("Trotter step counts must be positive");
    }
    if (cfg.trotter.shots.empty()) throw ConfigError("trotter scan needs a shot list");
  }
  if (cfg.resources.step_grid.empty()) throw ConfigError("resource step grid is empty");
}

}  // namespace

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "dynamics") return ExperimentKind::kDynamics;
  if (name == "variance_scan" || name == "variance-scan") return ExperimentKind::kVarianceScan;
  if (name == "trotter_scan" || name == "trotter-scan") return ExperimentKind::kTrotterScan;
  if (name == "resource_table" || name == "resource-table") return ExperimentKind::kResourceTable;
  if (name == "lindep_report" || name == "lindep-report") return ExperimentKind::kLinDepReport;
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kDynamics: return "dynamics";
    case ExperimentKind::kVarianceScan: return "variance_scan";
    case ExperimentKind::kTrotterScan: return "trotter_scan";
    case ExperimentKind::kResourceTable: return "resource_table";
    case ExperimentKind::kLinDepReport: return "lindep_report";
  }
  return "unknown";
}

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, {"kind", "system", "initial_state", "basis", "T", "dt", "shots", "observables",
                 "output_dir", "trotter_scan", "resources", "lindep", "pinv_cutoff", "comment"},
             "config");
  ExperimentConfig cfg;
  if (!j.contains("kind")) throw ConfigError("config lacks 'kind'");
  cfg.kind = parse_experiment_kind(j.at("kind").get<std::string>());

  if (j.contains("system")) {
    const auto& s = j.at("system");
    check_keys(s, {"fcidump", "split", "orbital_labels"}, "system");
    if (!s.contains("fcidump")) throw ConfigError("system lacks 'fcidump'");
    SystemConfig sc;
    sc.fcidump = resolve(base_dir, s.at("fcidump").get<std::string>());
    if (s.contains("split")) sc.split = resolve(base_dir, s.at("split").get<std::string>());
    sc.orbital_labels = get_or<std::vector<std::string>>(s, "orbital_labels", {});
    cfg.system = std::move(sc);
  }

  if (j.contains("initial_state")) {
    const auto& s = j.at("initial_state");
    check_keys(s, {"electrons", "two_sz", "eigen_indices", "amplitudes"}, "initial_state");
    cfg.initial_state.electrons = get_or(s, "electrons", 2);
    cfg.initial_state.two_sz = get_or(s, "two_sz", 0);
    cfg.initial_state.eigen_indices = get_or(s, "eigen_indices", std::vector<int>{0, -1});
    if (s.contains("amplitudes")) {
      for (const auto& a : s.at("amplitudes")) cfg.initial_state.amplitudes.push_back(parse_amplitude(a));
    }
  }
  if (cfg.initial_state.amplitudes.empty()) {
    const double a = 1.0 / std::sqrt(static_cast<double>(cfg.initial_state.eigen_indices.size()));
    cfg.initial_state.amplitudes.assign(cfg.initial_state.eigen_indices.size(), a);
  }

  if (j.contains("basis")) {
    const auto& b = j.at("basis");
    check_keys(b, {"times", "propagation", "trotter_steps"}, "basis");
    cfg.basis.times = get_or(b, "times", std::vector<double>{0.0, 0.5});
    auto prop = get_or<std::string>(b, "propagation", "exact");
    if (prop == "exact") {
      cfg.basis.propagation = Propagation::kExact;
    } else if (prop == "trotter1") {
      cfg.basis.propagation = Propagation::kTrotter1;
    } else {
      throw ConfigError("basis.propagation must be 'exact' or 'trotter1'");
    }
    cfg.basis.trotter_steps = get_or(b, "trotter_steps", 1);
  }

  cfg.T = get_or(j, "T", 4.0);
  cfg.dt = get_or(j, "dt", 0.001);
  cfg.pinv_cutoff = get_or(j, "pinv_cutoff", 1e-8);

  if (j.contains("shots")) {
    const auto& s = j.at("shots");
    check_keys(s, {"n_shots", "seed", "samples", "shot_list"}, "shots");
    cfg.shots.n_shots = get_or<std::uint64_t>(s, "n_shots", 10000);
    cfg.shots.seed = get_or<std::uint64_t>(s, "seed", 0);
    cfg.shots.samples = get_or(s, "samples", 100);
    cfg.shots.shot_list = get_or<std::vector<std::uint64_t>>(s, "shot_list", {});
  }
  cfg.observables = get_or<std::vector<std::string>>(j, "observables", {});
  cfg.output_dir = resolve(base_dir, get_or<std::string>(j, "output_dir", "out"));

  if (j.contains("trotter_scan")) {
    const auto& t = j.at("trotter_scan");
    check_keys(t, {"steps", "shots"}, "trotter_scan");
    cfg.trotter.steps = get_or(t, "steps", cfg.trotter.steps);
    if (t.contains("shots")) {
      for (const auto& s : t.at("shots")) {
        if (s.is_string() && s.get<std::string>() == "inf") {
          cfg.trotter.shots.push_back(std::nullopt);
        } else if (s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() > 0)) {
          cfg.trotter.shots.push_back(s.get<std::uint64_t>());
        } else {
          throw ConfigError("trotter_scan.shots entries must be positive integers or \"inf\"");
        }
      }
    }
  }
  if (cfg.trotter.shots.empty()) cfg.trotter.shots = {std::nullopt, 10000};

  if (j.contains("resources")) {
    const auto& r = j.at("resources");
    check_keys(r, {"algorithm", "k", "gamma", "epsilon", "n", "n_terms", "max_element", "lambda",
                   "step_grid"},
               "resources");
    auto& rc = cfg.resources;
    rc.algorithm = get_or(r, "algorithm", rc.algorithm);
    rc.k = get_or(r, "k", rc.k);
    rc.gamma = get_or(r, "gamma", rc.gamma);
    rc.epsilon = get_or(r, "epsilon", rc.epsilon);
    if (r.contains("n")) rc.n = r.at("n").get<double>();
    if (r.contains("n_terms")) rc.n_terms = r.at("n_terms").get<double>();
    if (r.contains("max_element")) rc.max_element = r.at("max_element").get<double>();
    if (r.contains("lambda")) rc.lambda = r.at("lambda").get<double>();
    rc.step_grid = get_or(r, "step_grid", rc.step_grid);
  }

  if (j.contains("lindep")) {
    const auto& l = j.at("lindep");
    check_keys(l, {"s1_values", "include_forbidden", "cutoff"}, "lindep");
    cfg.lindep.s1_values = get_or(l, "s1_values", cfg.lindep.s1_values);
    cfg.lindep.include_forbidden = get_or(l, "include_forbidden", true);
    cfg.lindep.cutoff = get_or(l, "cutoff", 1e-8);
  }

  validate(cfg);
  // The output location does not change results, so it stays out of the hash.
  j.erase("output_dir");
  cfg.canonical = j.dump();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return parse_config(text, base);
}

void apply_overrides(ExperimentConfig& cfg, std::optional<std::uint64_t> seed,
                     std::optional<std::filesystem::path> output_dir) {
  json j = cfg.canonical.empty() ? json::object() : json::parse(cfg.canonical);
  if (seed) {
    cfg.shots.seed = *seed;
    j["shots"]["seed"] = *seed;
  }
  if (output_dir) cfg.output_dir = *output_dir;
  cfg.canonical = j.dump();
}

}  // namespace qas
