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

#include "qas/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qas/integrals.hpp"
#include "qas/resources.hpp"

namespace qas {

namespace {

using ordered_json = nlohmann::ordered_json;

// Keeps the per-sample streams of different experiment kinds apart.
constexpr std::uint64_t kScanStreamStride = std::uint64_t{1} << 32;

Eigen::MatrixXcd basis_matrix(const std::vector<StateVector>& basis) {
  Eigen::MatrixXcd B(basis.front().dim(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) B.col(static_cast<Eigen::Index>(j)) = basis[j].amplitudes();
  return B;
}

// 1 - |<ref|phi>|^2 / <phi|phi>, with |ref| = 1.
double normalized_infidelity(const Eigen::VectorXcd& ref, const Eigen::VectorXcd& phi) {
  const double nn = phi.squaredNorm();
  if (!(nn > 0.0)) return 1.0;
  return std::max(0.0, 1.0 - std::norm(ref.dot(phi)) / nn);
}

SeriesStats series_stats(const std::vector<std::vector<double>>& samples) {
  SeriesStats s;
  const std::size_t len = samples.front().size();
  const double m = static_cast<double>(samples.size());
  s.mean.assign(len, 0.0);
  s.sd.assign(len, 0.0);
  s.min.assign(len, 0.0);
  s.max.assign(len, 0.0);
  for (std::size_t t = 0; t < len; ++t) {
    double sum = 0.0;
    double lo = samples.front()[t];
    double hi = lo;
    for (const auto& x : samples) {
      sum += x[t];
      lo = std::min(lo, x[t]);
      hi = std::max(hi, x[t]);
    }
    const double mean = sum / m;
    double ss = 0.0;
    for (const auto& x : samples) ss += (x[t] - mean) * (x[t] - mean);
    s.mean[t] = mean;
    s.sd[t] = samples.size() > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;
    s.min[t] = lo;
    s.max[t] = hi;
  }
  return s;
}

std::string unit_for(const std::string& label) {
  if (label.starts_with("pop_")) return "e";
  if (label.starts_with("E_")) return "Eh";
  return "1";
}

std::string shots_name(const std::optional<std::uint64_t>& n) {
  return n ? std::to_string(*n) : std::string("inf");
}

std::vector<std::uint64_t> sample_seeds(std::uint64_t master, int count, std::uint64_t offset = 0) {
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(derive_seed(master, offset + static_cast<std::uint64_t>(i)));
  return out;
}

double final_infidelity(const QasMatrices& m, const Eigen::MatrixXcd& B, const Eigen::VectorXcd& ref,
                        double T, double dt, double cutoff) {
  auto traj = solve_dynamics(m, T, dt, cutoff);
  return normalized_infidelity(ref, B * traj.alphas.back());
}

}  // namespace

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t n_threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  std::vector<std::exception_ptr> errors(count);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

LoadedSystem load_system(const ExperimentConfig& cfg) {
  if (!cfg.system) throw ConfigError("no system configured");
  const auto& sc = *cfg.system;
  IntegralSet integrals = read_fcidump(sc.fcidump);
  if (sc.split) read_split_integrals(*sc.split, integrals);
  PauliSum h = build_electronic_hamiltonian(integrals);
  ObservableSet all = build_observables(integrals, sc.orbital_labels, integrals.has_split());
  ObservableSet selected;
  if (cfg.observables.empty()) {
    selected = std::move(all);
  } else {
    for (const auto& label : cfg.observables) {
      if (!all.contains(label)) throw ConfigError("unknown observable '" + label + "'");
      selected.operators.emplace(label, all.at(label));
    }
  }
  SuperpositionSpec spec{Sector{cfg.initial_state.electrons, cfg.initial_state.two_sz},
                         cfg.initial_state.eigen_indices, cfg.initial_state.amplitudes};
  PreparedState initial = build_initial_state(h, spec);
  ExactPropagator propagator(h);
  return LoadedSystem{std::move(integrals), std::move(h), std::move(selected), std::move(initial),
                      std::move(propagator)};
}

DynamicsResult compute_dynamics(const ExperimentConfig& cfg, const LoadedSystem& sys, int workers) {
  const StateVector& psi0 = sys.initial.state;
  const auto basis = build_basis(psi0, sys.hamiltonian, sys.propagator, cfg.basis);
  const QasMatrices exact = exact_matrices(psi0, sys.hamiltonian, sys.observables, basis, true);
  const CoefficientTrajectory traj = solve_dynamics(exact, cfg.T, cfg.dt, cfg.pinv_cutoff);

  DynamicsResult r;
  r.times = traj.times;
  r.labels = sys.observables.labels();
  r.overlap_rank = traj.overlap_rank;
  r.eps_min = min_error_overlap(exact, traj, cfg.pinv_cutoff);
  for (const auto& label : r.labels) {
    auto s = observable_trajectory(exact, traj, label);
    r.max_imag_residual = std::max(r.max_imag_residual, s.max_imag_residual);
    r.qas_exact[label] = std::move(s.values);
  }

  // Statevector reference in the eigenbasis of H.
  const auto& V = sys.propagator.eigenvectors();
  const auto& E = sys.propagator.eigenvalues();
  const Eigen::VectorXcd c0 = V.adjoint() * psi0.amplitudes();
  const Eigen::MatrixXcd B = basis_matrix(basis);
  std::map<std::string, Eigen::MatrixXcd> dense;
  for (const auto& label : r.labels) dense[label] = to_dense(sys.observables.at(label));
  const std::size_t len = r.times.size();
  for (const auto& label : r.labels) r.oracle[label].resize(len);
  r.infidelity.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double t = r.times[i];
    Eigen::VectorXcd phase(E.size());
    for (Eigen::Index k = 0; k < E.size(); ++k) phase[k] = std::polar(1.0, -E[k] * t);
    const Eigen::VectorXcd psi = V * phase.cwiseProduct(c0);
    for (const auto& label : r.labels) {
      r.oracle[label][i] = psi.dot(dense[label] * psi).real();
    }
    r.infidelity[i] = normalized_infidelity(psi, B * traj.alphas[i]);
  }

  const int samples = cfg.shots.samples;
  r.seeds = sample_seeds(cfg.shots.seed, samples);
  std::vector<std::map<std::string, std::vector<double>>> per_sample(static_cast<std::size_t>(samples));
  std::vector<std::size_t> draws(static_cast<std::size_t>(samples), 0);
  parallel_for(static_cast<std::size_t>(samples), workers, [&](std::size_t i) {
    try {
      QasMatrices m = sample_matrices(exact, ShotModel{cfg.shots.n_shots, r.seeds[i]});
      draws[i] = m.n_draws;
      auto st = solve_dynamics(m, cfg.T, cfg.dt, cfg.pinv_cutoff);
      for (const auto& label : r.labels) per_sample[i][label] = observable_trajectory(m, st, label).values;
    } catch (const NumericError& e) {
      throw NumericError("sample " + std::to_string(i) + " (seed " + std::to_string(r.seeds[i]) +
                         "): " + e.what());
    }
  });
  r.draws_per_sample = draws.front();
  for (const auto& label : r.labels) {
    std::vector<std::vector<double>> series;
    series.reserve(per_sample.size());
    for (auto& s : per_sample) series.push_back(std::move(s[label]));
    SeriesStats st = series_stats(series);
    double fmax = 0.0;
    double fsum = 0.0;
    std::size_t fcount = 0;
    for (std::size_t t = 0; t < len; ++t) {
      const double m = std::abs(st.mean[t]);
      if (m < 1e-12) continue;
      const double f = st.sd[t] / m;
      fmax = std::max(fmax, f);
      fsum += f;
      ++fcount;
    }
    r.max_fractional_sd[label] = fmax;
    r.mean_fractional_sd[label] = fcount ? fsum / static_cast<double>(fcount) : 0.0;
    r.sampled[label] = std::move(st);
  }
  return r;
}

VarianceScanResult compute_variance_scan(const ExperimentConfig& cfg, const LoadedSystem& sys,
                                         int workers) {
  const auto& shot_list = cfg.shots.shot_list;
  if (shot_list.size() < 2) throw ConfigError("variance scan needs at least two shot settings");
  const StateVector& psi0 = sys.initial.state;
  const auto basis = build_basis(psi0, sys.hamiltonian, sys.propagator, cfg.basis);
  const QasMatrices exact = exact_matrices(psi0, sys.hamiltonian, sys.observables, basis, false);

  VarianceScanResult r;
  r.shot_list = shot_list;
  r.labels = sys.observables.labels();
  const auto samples = static_cast<std::size_t>(cfg.shots.samples);
  const std::size_t total = shot_list.size() * samples;
  for (std::size_t a = 0; a < shot_list.size(); ++a) {
    auto s = sample_seeds(cfg.shots.seed, cfg.shots.samples, (a + 1) * kScanStreamStride);
    r.seeds.insert(r.seeds.end(), s.begin(), s.end());
  }
  std::vector<std::map<std::string, std::vector<double>>> results(total);
  parallel_for(total, workers, [&](std::size_t idx) {
    const std::size_t a = idx / samples;
    QasMatrices m = sample_matrices(exact, ShotModel{shot_list[a], r.seeds[idx]});
    auto st = solve_dynamics(m, cfg.T, cfg.dt, cfg.pinv_cutoff);
    for (const auto& label : r.labels) results[idx][label] = observable_trajectory(m, st, label).values;
  });
  for (const auto& label : r.labels) {
    std::vector<double> var;
    for (std::size_t a = 0; a < shot_list.size(); ++a) {
      std::vector<std::vector<double>> series;
      for (std::size_t i = 0; i < samples; ++i) series.push_back(results[a * samples + i][label]);
      SeriesStats st = series_stats(series);
      double acc = 0.0;
      for (double sd : st.sd) acc += sd * sd;
      var.push_back(acc / static_cast<double>(st.sd.size()));
    }
    // Ordinary least squares of log10(var) on log10(N_s).
    const double m = static_cast<double>(var.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t a = 0; a < var.size(); ++a) {
      const double x = std::log10(static_cast<double>(shot_list[a]));
      const double y = std::log10(var[a]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    const double slope = denom != 0.0 ? (m * sxy - sx * sy) / denom : std::nan("");
    r.slope[label] = slope;
    r.intercept[label] = (sy - slope * sx) / m;
    r.variance[label] = std::move(var);
  }
  return r;
}

const TrotterPoint& TrotterScanResult::at(int steps, std::optional<std::uint64_t> n_shots) const {
  for (const auto& p : points) {
    if (p.steps == steps && p.n_shots == n_shots) return p;
  }
  throw std::out_of_range("no Trotter scan point for the requested (steps, shots)");
}

TrotterScanResult compute_trotter_scan(const ExperimentConfig& cfg, const LoadedSystem& sys,
                                       int workers) {
  const StateVector& psi0 = sys.initial.state;
  const Eigen::VectorXcd ref = sys.propagator.evolve(cfg.T, psi0).amplitudes();
  const ObservableSet none;
  TrotterScanResult r;
  r.seeds = sample_seeds(cfg.shots.seed, cfg.shots.samples);
  for (int steps : cfg.trotter.steps) {
    BasisSpec spec = cfg.basis;
    spec.propagation = Propagation::kTrotter1;
    spec.trotter_steps = steps;
    const auto basis = build_basis(psi0, sys.hamiltonian, sys.propagator, spec);
    const Eigen::MatrixXcd B = basis_matrix(basis);
    const QasMatrices exact = exact_matrices(psi0, sys.hamiltonian, none, basis, false);
    for (const auto& shots : cfg.trotter.shots) {
      TrotterPoint p;
      p.steps = steps;
      p.n_shots = shots;
      if (!shots) {
        p.mean_infidelity = final_infidelity(exact, B, ref, cfg.T, cfg.dt, cfg.pinv_cutoff);
        p.samples = 1;
      } else {
        std::vector<double> inf(r.seeds.size());
        parallel_for(inf.size(), workers, [&](std::size_t i) {
          QasMatrices m = sample_matrices(exact, ShotModel{*shots, r.seeds[i]});
          inf[i] = final_infidelity(m, B, ref, cfg.T, cfg.dt, cfg.pinv_cutoff);
        });
        double sum = 0.0;
        for (double v : inf) sum += v;
        p.mean_infidelity = sum / static_cast<double>(inf.size());
        double ss = 0.0;
        for (double v : inf) ss += (v - p.mean_infidelity) * (v - p.mean_infidelity);
        p.sd_infidelity = inf.size() > 1 ? std::sqrt(ss / static_cast<double>(inf.size() - 1)) : 0.0;
        p.samples = static_cast<int>(inf.size());
      }
      r.points.push_back(p);
    }
  }
  return r;
}

ResourceTableResult compute_resource_table(const ExperimentConfig& cfg, const LoadedSystem* sys) {
  const auto& rc = cfg.resources;
  ResourceTableResult r;
  r.algorithm = rc.algorithm;
  r.n = rc.n.value_or(static_cast<double>(cfg.initial_state.eigen_indices.size()));
  r.gamma = rc.gamma;
  r.epsilon = rc.epsilon;
  r.dt = cfg.dt;
  r.parameter_times = cfg.basis.times;
  if (sys) {
    r.n_terms = rc.n_terms.value_or(static_cast<double>(sys->hamiltonian.size()));
    r.max_element = rc.max_element.value_or(resources::max_abs_element(sys->hamiltonian));
    r.lambda = rc.lambda.value_or(resources::pauli_one_norm(sys->hamiltonian));
  } else {
    if (!rc.n_terms) throw ConfigError("resources.n_terms is required without a system");
    r.n_terms = *rc.n_terms;
    r.max_element = rc.max_element.value_or(1.0);
    r.lambda = rc.lambda.value_or(1.0);
  }
  resources::CostFormula f;
  f.algorithm = resources::parse_algorithm(rc.algorithm);
  f.k = rc.k;
  f.n_terms = r.n_terms;
  f.epsilon = r.epsilon;
  f.max_element = r.max_element;
  f.lambda = r.lambda;

  auto row = [&](double steps) {
    resources::ScenarioParams p;
    p.n = r.n;
    p.n_terms = r.n_terms;
    p.dt = r.dt;
    p.T = steps * r.dt;
    p.gamma = r.gamma;
    p.epsilon = r.epsilon;
    ResourceRow out;
    out.steps = steps;
    out.standard_cost = resources::standard_method_cost(p, f);
    out.qas_bound = resources::qas_cost(p, f);
    out.qas_explicit = resources::qas_cost(p, f, r.parameter_times);
    out.ratio_bound = out.standard_cost / out.qas_bound;
    out.ratio_explicit = out.standard_cost / out.qas_explicit;
    out.qas_regime = out.ratio_bound > 1.0;
    return out;
  };
  resources::ScenarioParams p0;
  p0.n = r.n;
  p0.gamma = r.gamma;
  r.crossover = resources::crossover_threshold(p0);
  r.heuristic = resources::heuristic_threshold(r.n);
  r.scenario = row(std::round(cfg.T / cfg.dt));
  for (double s : rc.step_grid) r.rows.push_back(row(s));
  return r;
}

LinDepResult compute_lindep_report(const ExperimentConfig& cfg, const LoadedSystem& sys) {
  LinDepResult r;
  r.eigenstate_energies = sys.initial.energies;
  const auto& e = r.eigenstate_energies;
  for (std::size_t j = 0; j < e.size(); ++j)
    for (std::size_t k = j + 1; k < e.size(); ++k) r.eigengaps.push_back(std::abs(e[k] - e[j]));

  std::vector<std::pair<double, bool>> candidates;
  for (double s : cfg.lindep.s1_values) candidates.emplace_back(s, false);
  if (cfg.lindep.include_forbidden) {
    for (double gap : r.eigengaps) {
      if (gap > 0.0) candidates.emplace_back(2.0 * std::numbers::pi / gap, true);
    }
  }
  const ObservableSet none;
  for (const auto& [s1, forbidden] : candidates) {
    if (!(s1 > 0.0)) throw ConfigError("lindep s1 values must be positive");
    BasisSpec spec = cfg.basis;
    spec.times = {0.0, s1};
    const auto basis = build_basis(sys.initial.state, sys.hamiltonian, sys.propagator, spec);
    const QasMatrices m = exact_matrices(sys.initial.state, sys.hamiltonian, none, basis, false);
    LinDepEntry entry{s1, forbidden,
                      lin_independence_report(m.F, r.eigengaps, spec.times,
                                              std::max(cfg.T, s1), cfg.lindep.cutoff)};
    r.entries.push_back(std::move(entry));
  }
  return r;
}

std::map<std::string, std::string> render_dynamics(const DynamicsResult& r) {
  std::vector<std::string> header{"t[1/Eh]"};
  for (const auto& label : r.labels) {
    const std::string u = "[" + unit_for(label) + "]";
    for (const char* col : {"_oracle", "_qas_exact", "_mean", "_sd", "_min", "_max"}) {
      header.push_back(label + col + u);
    }
  }
  header.push_back("eps_min[Eh^2]");
  header.push_back("infidelity_qas_exact[1]");
  CsvWriter csv(header);
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    csv.cell(r.times[i]);
    for (const auto& label : r.labels) {
      const auto& s = r.sampled.at(label);
      csv.cell(r.oracle.at(label)[i]).cell(r.qas_exact.at(label)[i]);
      csv.cell(s.mean[i]).cell(s.sd[i]).cell(s.min[i]).cell(s.max[i]);
    }
    csv.cell(r.eps_min[i]).cell(r.infidelity[i]);
    csv.end_row();
  }
  ordered_json j;
  j["csv_schema_version"] = kCsvSchemaVersion;
  j["rows"] = r.times.size();
  j["samples"] = r.seeds.size();
  j["draws_per_sample"] = r.draws_per_sample;
  j["overlap_rank"] = r.overlap_rank;
  j["max_imag_residual"] = r.max_imag_residual;
  j["max_infidelity_qas_exact"] = *std::max_element(r.infidelity.begin(), r.infidelity.end());
  j["min_eps_min"] = *std::min_element(r.eps_min.begin(), r.eps_min.end());
  j["max_eps_min"] = *std::max_element(r.eps_min.begin(), r.eps_min.end());
  for (const auto& label : r.labels) {
    double dev = 0.0;
    for (std::size_t i = 0; i < r.times.size(); ++i) {
      dev = std::max(dev, std::abs(r.qas_exact.at(label)[i] - r.oracle.at(label)[i]));
    }
    j["observables"][label] = {{"max_abs_deviation_qas_exact", dev},
                               {"max_fractional_sd", r.max_fractional_sd.at(label)},
                               {"mean_fractional_sd", r.mean_fractional_sd.at(label)}};
  }
  return {{"dynamics.csv", csv.str()}, {"dynamics_summary.json", j.dump(2) + "\n"}};
}

std::map<std::string, std::string> render_variance_scan(const VarianceScanResult& r) {
  std::vector<std::string> header{"n_shots"};
  for (const auto& label : r.labels) header.push_back(label + "_variance[" + unit_for(label) + "^2]");
  CsvWriter csv(header);
  for (std::size_t a = 0; a < r.shot_list.size(); ++a) {
    csv.cell(r.shot_list[a]);
    for (const auto& label : r.labels) csv.cell(r.variance.at(label)[a]);
    csv.end_row();
  }
  CsvWriter fit({"observable", "slope[1]", "intercept[log10]"});
  for (const auto& label : r.labels) {
    fit.cell(label).cell(r.slope.at(label)).cell(r.intercept.at(label));
    fit.end_row();
  }
  return {{"variance_scan.csv", csv.str()}, {"variance_slopes.csv", fit.str()}};
}

std::map<std::string, std::string> render_trotter_scan(const TrotterScanResult& r) {
  CsvWriter csv({"trotter_steps", "n_shots", "mean_infidelity[1]", "sd_infidelity[1]", "samples"});
  for (const auto& p : r.points) {
    csv.cell(p.steps).cell(shots_name(p.n_shots)).cell(p.mean_infidelity).cell(p.sd_infidelity);
    csv.cell(p.samples);
    csv.end_row();
  }
  return {{"trotter_scan.csv", csv.str()}};
}

std::map<std::string, std::string> render_resource_table(const ResourceTableResult& r) {
  CsvWriter csv({"steps", "standard_cost", "qas_cost_bound", "qas_cost_explicit", "ratio_bound",
                 "ratio_explicit", "regime"});
  auto put = [](CsvWriter& w, const ResourceRow& row) {
    w.cell(row.steps).cell(row.standard_cost).cell(row.qas_bound).cell(row.qas_explicit);
    w.cell(row.ratio_bound).cell(row.ratio_explicit).cell(row.qas_regime ? "QAS" : "standard");
    w.end_row();
  };
  for (const auto& row : r.rows) put(csv, row);
  auto row_json = [](const ResourceRow& row) {
    return ordered_json{{"steps", row.steps},
                        {"standard_cost", row.standard_cost},
                        {"qas_cost_bound", row.qas_bound},
                        {"qas_cost_explicit", row.qas_explicit},
                        {"ratio_bound", row.ratio_bound},
                        {"ratio_explicit", row.ratio_explicit},
                        {"regime", row.qas_regime ? "QAS" : "standard"}};
  };
  ordered_json j;
  j["algorithm"] = r.algorithm;
  j["n"] = r.n;
  j["n_terms"] = r.n_terms;
  j["gamma"] = r.gamma;
  j["epsilon"] = r.epsilon;
  j["dt"] = r.dt;
  j["max_element"] = r.max_element;
  j["lambda"] = r.lambda;
  j["parameter_times"] = r.parameter_times;
  j["crossover_steps"] = r.crossover;
  j["heuristic_steps"] = r.heuristic;
  j["scenario"] = row_json(r.scenario);
  j["rows"] = ordered_json::array();
  for (const auto& row : r.rows) j["rows"].push_back(row_json(row));
  return {{"resource_table.csv", csv.str()}, {"resource_table.json", j.dump(2) + "\n"}};
}

std::map<std::string, std::string> render_lindep_report(const LinDepResult& r) {
  CsvWriter csv({"s1[1/Eh]", "source", "det_F", "lambda_min", "lambda_max", "condition_number",
                 "independent", "on_forbidden_time"});
  ordered_json j;
  j["eigenstate_energies"] = r.eigenstate_energies;
  j["eigengaps"] = r.eigengaps;
  j["entries"] = ordered_json::array();
  for (const auto& e : r.entries) {
    const auto& rep = e.report;
    const bool offending = !rep.offending_times.empty();
    csv.cell(e.s1).cell(e.from_eigengap ? "2pi/gap" : "config").cell(rep.determinant);
    csv.cell(rep.eigenvalues.minCoeff()).cell(rep.eigenvalues.maxCoeff()).cell(rep.condition_number);
    csv.cell(rep.independent ? "true" : "false").cell(offending ? "true" : "false");
    csv.end_row();
    ordered_json ej;
    ej["s1"] = e.s1;
    ej["source"] = e.from_eigengap ? "2pi/gap" : "config";
    ej["eigenvalues"] = std::vector<double>(rep.eigenvalues.begin(), rep.eigenvalues.end());
    ej["det_F"] = rep.determinant;
    ej["condition_number"] =
        std::isfinite(rep.condition_number) ? ordered_json(rep.condition_number) : ordered_json("inf");
    ej["cutoff"] = rep.cutoff;
    ej["independent"] = rep.independent;
    ej["forbidden_times"] = rep.forbidden_times;
    ej["offending_times"] = rep.offending_times;
    j["entries"].push_back(ej);
  }
  return {{"lindep_report.csv", csv.str()}, {"lindep_report.json", j.dump(2) + "\n"}};
}

RunManifest run_experiment(const ExperimentConfig& cfg, int workers) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<LoadedSystem> sys;
  if (cfg.system) sys.emplace(load_system(cfg));
  std::map<std::string, std::string> files;
  RunManifest manifest;
  manifest.kind = experiment_kind_name(cfg.kind);
  manifest.config_hash = sha256_hex(cfg.canonical);
  switch (cfg.kind) {
    case ExperimentKind::kDynamics: {
      auto r = compute_dynamics(cfg, *sys, workers);
      manifest.seeds = r.seeds;
      files = render_dynamics(r);
      break;
    }
    case ExperimentKind::kVarianceScan: {
      auto r = compute_variance_scan(cfg, *sys, workers);
      manifest.seeds = r.seeds;
      files = render_variance_scan(r);
      break;
    }
    case ExperimentKind::kTrotterScan: {
      auto r = compute_trotter_scan(cfg, *sys, workers);
      manifest.seeds = r.seeds;
      files = render_trotter_scan(r);
      break;
    }
    case ExperimentKind::kResourceTable:
      files = render_resource_table(compute_resource_table(cfg, sys ? &*sys : nullptr));
      break;
    case ExperimentKind::kLinDepReport:
      files = render_lindep_report(compute_lindep_report(cfg, *sys));
      break;
  }
  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return write_outputs(cfg.output_dir, files, std::move(manifest));
}

}  // namespace qas
