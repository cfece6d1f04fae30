// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment runners binding the solvers, transforms and approximants into
// reproducible scans with CSV/JSON artifacts. Each runner reads a flat
// config (defaults target the reference parameters k = 3/2, n = 2, cubic),
// writes its tables stamped with the config hash, and reports PASS/FAIL
// against the thresholds documented in the README.
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "nlslab/config.hpp"

namespace nlslab::experiments {

struct RunResult {
  std::string experiment;
  bool pass = false;
  nlohmann::json summary;
  std::vector<std::string> artifacts;
};

RunResult run_linear_layer(const Config& cfg, const std::string& out_dir);
RunResult run_cascade_layers(const Config& cfg, const std::string& out_dir);
RunResult run_main_theorem(const Config& cfg, const std::string& out_dir);
RunResult run_instability_scan(const Config& cfg, const std::string& out_dir);
RunResult run_grenier_convergence(const Config& cfg, const std::string& out_dir);
RunResult run_series_orders(const Config& cfg, const std::string& out_dir);
RunResult run_simulate(const Config& cfg, const std::string& out_dir, bool dump_fields);

// Dispatch on the config's `experiment` key.
RunResult run_experiment(const Config& cfg, const std::string& out_dir, bool dump_fields = false);

// Execute every *.cfg in the directory (sorted), write manifest.json.
// Returns overall pass (true also for an empty directory).
bool run_all(const std::string& config_dir, const std::string& out_dir);

}  // namespace nlslab::experiments
