#pragma once

#include <functional>
#include <string>
#include <vector>

#include "circuitlab/config.hpp"

namespace circuitlab {

struct ExperimentContext {
  Config config;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int threads = 1;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::vector<std::string> config_keys;  // schema; unknown keys are rejected
  std::function<void(const ExperimentContext&)> run;
};

const std::vector<ExperimentInfo>& experiment_registry();
const ExperimentInfo* find_experiment(const std::string& name);

/// Full driver used by the CLI: validates the config, runs, writes
/// `<out>/<name>.csv`, `<name>.summary.json` and `<name>.svg`.
/// Exit codes: 0 success, 2 config error, 3 numerical degeneracy.
int run_experiment_cli(const std::string& name, const std::string& config_path,
                       const std::string& out_dir, std::uint64_t seed_override,
                       bool has_seed_override, int threads);

}  // namespace circuitlab
