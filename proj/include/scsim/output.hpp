#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scsim/engine.hpp"

namespace scsim {

inline constexpr int kMetricsSchemaVersion = 1;

/// Header of metrics.csv, one row per large epoch.
inline constexpr std::string_view kMetricsHeader =
    "epoch_start_s,offered,scs_served,mbs_served,hit_rate,mean_power,mean_battery,outage_energy,"
    "overflow_energy,continuity_rate,pushes,defers";

/// Header of summary.csv, one row per run.
inline constexpr std::string_view kSummaryHeader =
    "run_id,policy,seed,cache_capacity,offered,scs_served,mbs_served,normalized_offload,offload_mbps_per_cell,"
    "hit_rate,outage_energy,overflow_energy,continuity_rate,pushes,defers,capacity_ratio";

/// `%.9g`-style formatting, independent of the C locale.
std::string format_number(double value);

const char* policy_name(PolicyKind kind);

/// metrics.csv body for several runs; rows of each run follow the previous
/// one in the given order.
std::string metrics_csv(const std::vector<const MetricsReport*>& runs);

struct SummaryRow {
  std::string run_id;
  const MetricsReport* report = nullptr;
  /// Paired sustainable/greedy ratio; empty cell when absent.
  std::optional<double> capacity_ratio;
};

std::string summary_csv(const std::vector<SummaryRow>& rows);

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Self-contained SVG line chart with axes, ticks and a legend.
std::string render_svg(const Plot& plot);

}  // namespace scsim
