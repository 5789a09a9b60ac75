#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "scsim/engine.hpp"

namespace scsim {

/// What a command wrote and the headline numbers it printed.
struct CommandResult {
  std::vector<std::string> files;
  /// compare-energy only: per-seed ratios and their mean.
  std::vector<double> capacity_ratios;
  double mean_capacity_ratio = 0.0;
};

// Each command runs `seeds` consecutive seeds starting at scenario.seed and
// writes metrics.csv, summary.csv and plot.svg into `out_dir` (created if
// missing). Outputs are rendered in memory first; if any file fails to
// write, every file written so far is removed and RuntimeError is thrown.

CommandResult cmd_run(const Scenario& scenario, const std::string& out_dir, std::size_t seeds = 1);

/// Sweeps scenario.sweep_cache_sizes. The plot shows offloaded Mbps per cell
/// against cache size, averaged over seeds.
CommandResult cmd_sweep_cache(const Scenario& scenario, const std::string& out_dir, std::size_t seeds = 1);

/// Sustainable vs greedy on the same scenario. The plot shows the per-epoch
/// normalized offload of both policies, averaged over seeds.
CommandResult cmd_compare_energy(const Scenario& scenario, const std::string& out_dir, std::size_t seeds = 1);

}  // namespace scsim
