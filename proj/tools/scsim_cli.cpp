// Command-line front end; talks to the simulator only through the C API.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scsim/scsim.h"

namespace {

struct Options {
  std::string config;
  std::string out = "out";
  std::vector<std::string> overrides;
  std::size_t seeds = 1;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config, "scenario file (key = value with [section] headers)");
  cmd->add_option("--out", opt.out, "output directory")->capture_default_str();
  cmd->add_option("--override", opt.overrides, "section.key=value, repeatable; wins over the config file")
      ->allow_extra_args(false);
  cmd->add_option("--seeds", opt.seeds, "number of consecutive seeds to run")->check(CLI::PositiveNumber);
}

int report(scsim_status status) {
  if (status != SCSIM_OK) std::fprintf(stderr, "scsim: %s\n", scsim_last_error());
  return status == SCSIM_OK ? 0 : status == SCSIM_ERR_CONFIG ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for renewable-powered caching stations on a vehicular highway"};
  app.require_subcommand(1);
  app.set_version_flag("--version", scsim_version());

  Options opt;
  CLI::App* run = app.add_subcommand("run", "simulate one scenario");
  CLI::App* sweep = app.add_subcommand("sweep-cache", "offloaded traffic against cache size");
  CLI::App* compare = app.add_subcommand("compare-energy", "sustainable vs greedy energy management");
  for (CLI::App* cmd : {run, sweep, compare}) add_common(cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::vector<const char*> overrides;
  for (const std::string& o : opt.overrides) overrides.push_back(o.c_str());

  scsim_scenario* scenario = nullptr;
  scsim_status status = opt.config.empty()
                            ? scsim_scenario_parse(nullptr, overrides.data(), overrides.size(), &scenario)
                            : scsim_scenario_load(opt.config.c_str(), overrides.data(), overrides.size(), &scenario);
  if (status != SCSIM_OK) return report(status);

  if (run->parsed()) {
    status = scsim_cmd_run(scenario, opt.out.c_str(), opt.seeds);
  } else if (sweep->parsed()) {
    status = scsim_cmd_sweep_cache(scenario, opt.out.c_str(), opt.seeds);
  } else {
    double ratio = 0.0;
    status = scsim_cmd_compare_energy(scenario, opt.out.c_str(), opt.seeds, &ratio);
    if (status == SCSIM_OK) std::printf("capacity_ratio = %.9g\n", ratio);
  }
  scsim_scenario_destroy(scenario);
  if (status == SCSIM_OK) std::printf("wrote %s/{metrics.csv,summary.csv,plot.svg}\n", opt.out.c_str());
  return report(status);
}
