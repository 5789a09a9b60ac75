#include "scsim/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <system_error>

#include "scsim/error.hpp"
#include "scsim/mobility.hpp"
#include "scsim/output.hpp"

namespace scsim {

namespace {

namespace fs = std::filesystem;

struct OutputFile {
  std::string name;
  std::string content;
};

std::vector<std::string> write_all(const std::string& out_dir, const std::vector<OutputFile>& files) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw RuntimeError("cannot create output directory '" + out_dir + "': " + ec.message());

  std::vector<std::string> written;
  auto rollback = [&] {
    for (const std::string& p : written) fs::remove(p, ec);
  };
  for (const OutputFile& f : files) {
    const std::string path = (fs::path(out_dir) / f.name).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (out) written.push_back(path);
    if (out) out.write(f.content.data(), static_cast<std::streamsize>(f.content.size()));
    if (out) out.close();
    if (!out) {
      rollback();
      throw RuntimeError("cannot write '" + path + "'");
    }
  }
  return written;
}

std::vector<Scenario> seeded(const Scenario& base, std::size_t seeds) {
  if (seeds == 0) throw ConfigError("invariant violated: --seeds must be at least 1");
  std::vector<Scenario> out(seeds, base);
  for (std::size_t i = 0; i < seeds; ++i) out[i].seed = base.seed + i;
  return out;
}

// Per-epoch normalized offload averaged over runs, against hour of day.
PlotSeries daily_series(const std::string& name, const std::vector<const MetricsReport*>& runs) {
  PlotSeries s{name, {}};
  if (runs.empty()) return s;
  const std::size_t n = runs.front()->epochs.size();
  for (std::size_t e = 0; e < n; ++e) {
    double sum = 0.0;
    for (const MetricsReport* r : runs) {
      const EpochMetrics& m = r->epochs[e];
      sum += m.offered == 0 ? 0.0 : static_cast<double>(m.scs_served) / static_cast<double>(m.offered);
    }
    s.points.emplace_back(runs.front()->epochs[e].epoch_start_s / kSecondsPerHour,
                          sum / static_cast<double>(runs.size()));
  }
  return s;
}

}  // namespace

CommandResult cmd_run(const Scenario& scenario, const std::string& out_dir, std::size_t seeds) {
  const auto scenarios = seeded(scenario, seeds);
  std::function<MetricsReport(std::size_t)> one = [&](std::size_t i) { return run(scenarios[i]); };
  const auto reports = parallel_map<MetricsReport>(scenarios.size(), one);

  std::vector<const MetricsReport*> runs;
  std::vector<SummaryRow> rows;
  for (const MetricsReport& r : reports) {
    runs.push_back(&r);
    rows.push_back({"run-seed" + std::to_string(r.seed), &r, std::nullopt});
  }
  Plot plot{"Normalized offloaded traffic", "hour", "SCS-served / offered", {daily_series(policy_name(scenario.policy), runs)}};

  CommandResult out;
  out.files = write_all(out_dir, {{"metrics.csv", metrics_csv(runs)},
                                  {"summary.csv", summary_csv(rows)},
                                  {"plot.svg", render_svg(plot)}});
  return out;
}

CommandResult cmd_sweep_cache(const Scenario& scenario, const std::string& out_dir, std::size_t seeds) {
  const auto scenarios = seeded(scenario, seeds);
  std::vector<std::vector<SweepPoint>> per_seed;
  per_seed.reserve(scenarios.size());
  for (const Scenario& sc : scenarios) per_seed.push_back(sweep_cache(sc, sc.sweep_cache_sizes));

  std::vector<const MetricsReport*> runs;
  std::vector<SummaryRow> rows;
  PlotSeries curve{"offload per cell", {}};
  const std::size_t n_points = scenario.sweep_cache_sizes.size();
  for (std::size_t p = 0; p < n_points; ++p) {
    double sum = 0.0;
    for (const auto& points : per_seed) {
      const SweepPoint& pt = points[p];
      runs.push_back(&pt.report);
      rows.push_back({"cache" + std::to_string(pt.cache_size) + "-seed" + std::to_string(pt.report.seed), &pt.report,
                      std::nullopt});
      sum += pt.offload_mbps_per_cell;
    }
    curve.points.emplace_back(static_cast<double>(scenario.sweep_cache_sizes[p]),
                              sum / static_cast<double>(per_seed.size()));
  }
  Plot plot{"Offloaded traffic per SCS vs cache size", "cache size (files)", "offloaded traffic (Mbps)", {curve}};

  CommandResult out;
  out.files = write_all(out_dir, {{"metrics.csv", metrics_csv(runs)},
                                  {"summary.csv", summary_csv(rows)},
                                  {"plot.svg", render_svg(plot)}});
  return out;
}

CommandResult cmd_compare_energy(const Scenario& scenario, const std::string& out_dir, std::size_t seeds) {
  const auto scenarios = seeded(scenario, seeds);
  std::function<EnergyComparison(std::size_t)> one = [&](std::size_t i) { return compare_energy(scenarios[i]); };
  const auto pairs = parallel_map<EnergyComparison>(scenarios.size(), one);

  CommandResult out;
  std::vector<const MetricsReport*> runs;
  std::vector<const MetricsReport*> sustainable;
  std::vector<const MetricsReport*> greedy;
  std::vector<SummaryRow> rows;
  double ratio_sum = 0.0;
  for (const EnergyComparison& c : pairs) {
    runs.push_back(&c.sustainable);
    runs.push_back(&c.greedy);
    sustainable.push_back(&c.sustainable);
    greedy.push_back(&c.greedy);
    const std::string seed = std::to_string(c.sustainable.seed);
    rows.push_back({"sustainable-seed" + seed, &c.sustainable, c.capacity_ratio});
    rows.push_back({"greedy-seed" + seed, &c.greedy, c.capacity_ratio});
    out.capacity_ratios.push_back(c.capacity_ratio);
    ratio_sum += c.capacity_ratio;
  }
  out.mean_capacity_ratio = ratio_sum / static_cast<double>(pairs.size());
  Plot plot{"Normalized offloaded traffic",
            "hour",
            "SCS-served / offered",
            {daily_series("sustainable", sustainable), daily_series("greedy", greedy)}};

  out.files = write_all(out_dir, {{"metrics.csv", metrics_csv(runs)},
                                  {"summary.csv", summary_csv(rows)},
                                  {"plot.svg", render_svg(plot)}});
  return out;
}

}  // namespace scsim
