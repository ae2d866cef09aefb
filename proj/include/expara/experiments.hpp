#pragma once

#include <string>
#include <vector>

#include "expara/config.hpp"

namespace expara {

struct RunOptions {
  std::string out_dir = ".";
  int threads = 1;
};

// Replaces [experiment] preset = NAME by the preset text, with the
// caller's keys taking precedence.
ExperimentConfig expand_preset(const ExperimentConfig& cfg);

// Returns the paths written.
std::vector<std::string> run_experiment(const ExperimentConfig& cfg, const RunOptions& opt);

}  // namespace expara
