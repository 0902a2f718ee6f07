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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qas/config.hpp"
#include "qas/experiment.hpp"
#include "qas/manifest.hpp"

namespace {

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::optional<std::string> out;
};

void add_run_command(CLI::App& app, const char* name, const char* help, qas::ExperimentKind kind,
                     RunOptions& opts, std::optional<qas::ExperimentKind>& chosen) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("--config", opts.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", opts.seed, "master seed, overrides the config");
  sub->add_option("--workers", opts.workers, "worker threads for sample fan-out")
      ->check(CLI::Range(1, 1024));
  sub->add_option("--out", opts.out, "output directory (default: $QAS_OUTPUT_DIR or config)");
  sub->callback([&chosen, kind] { chosen = kind; });
}

int run(const RunOptions& opts, qas::ExperimentKind kind) {
  auto cfg = qas::load_config(opts.config);
  if (cfg.kind != kind) {
    throw qas::ConfigError("config describes a '" + qas::experiment_kind_name(cfg.kind) +
                           "' experiment, not '" + qas::experiment_kind_name(kind) + "'");
  }
  std::optional<std::filesystem::path> out;
  if (opts.out) {
    out = *opts.out;
  } else if (const char* env = std::getenv("QAS_OUTPUT_DIR"); env && *env) {
    out = env;
  }
  qas::apply_overrides(cfg, opts.seed, out);
  auto manifest = qas::run_experiment(cfg, opts.workers);
  std::cout << "wrote " << manifest.outputs.size() << " files to " << cfg.output_dir.string()
            << " (" << manifest.wall_clock_seconds << " s)\n";
  for (const auto& [name, hash] : manifest.outputs) std::cout << "  " << name << "  " << hash << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-assisted simulation of molecular dynamics with time-evolved bases"};
  app.set_version_flag("--version", qas::kVersion);
  app.require_subcommand(1);

  RunOptions opts;
  std::optional<qas::ExperimentKind> chosen;
  add_run_command(app, "dynamics", "observable dynamics with shot-noise statistics",
                  qas::ExperimentKind::kDynamics, opts, chosen);
  add_run_command(app, "variance-scan", "sample variance against shot count",
                  qas::ExperimentKind::kVarianceScan, opts, chosen);
  add_run_command(app, "trotter-scan", "final-state infidelity against Trotter steps",
                  qas::ExperimentKind::kTrotterScan, opts, chosen);
  add_run_command(app, "resource-table", "standard versus QAS propagator cost",
                  qas::ExperimentKind::kResourceTable, opts, chosen);
  add_run_command(app, "lindep-report", "basis linear-independence diagnostics",
                  qas::ExperimentKind::kLinDepReport, opts, chosen);

  std::string verify_dir;
  auto* verify = app.add_subcommand("verify-manifest", "recheck output checksums");
  verify->add_option("dir", verify_dir, "output directory holding manifest.json")
      ->required()
      ->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      auto bad = qas::verify_manifest(verify_dir);
      if (bad.empty()) {
        std::cout << "all checksums match\n";
        return 0;
      }
      for (const auto& name : bad) std::cerr << "checksum mismatch: " << name << "\n";
      return 1;
    }
    return run(opts, *chosen);
  } catch (const qas::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
