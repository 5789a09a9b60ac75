#include "scsim/scsim.h"

#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "scsim/commands.hpp"
#include "scsim/config.hpp"
#include "scsim/engine.hpp"
#include "scsim/error.hpp"
#include "scsim/output.hpp"

struct scsim_scenario {
  scsim::Scenario value;
};

struct scsim_report {
  scsim::MetricsReport value;
};

namespace {

thread_local std::string g_last_error;

scsim_status fail(scsim_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class F>
scsim_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return SCSIM_OK;
  } catch (const scsim::ConfigError& e) {
    return fail(SCSIM_ERR_CONFIG, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SCSIM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(SCSIM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SCSIM_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(SCSIM_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(SCSIM_ERR_RUNTIME, "unknown error");
  }
}

std::vector<std::string> collect(const char* const* overrides, size_t n) {
  if (n > 0 && !overrides) throw std::invalid_argument("overrides is NULL");
  std::vector<std::string> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (!overrides[i]) throw std::invalid_argument("override " + std::to_string(i) + " is NULL");
    out.emplace_back(overrides[i]);
  }
  return out;
}

void require_handle(const void* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string(what) + " is NULL");
}

}  // namespace

extern "C" {

const char* scsim_version(void) { return "1.0.0"; }

int scsim_metrics_schema_version(void) { return scsim::kMetricsSchemaVersion; }

const char* scsim_last_error(void) { return g_last_error.c_str(); }

scsim_status scsim_scenario_parse(const char* text, const char* const* overrides, size_t n_overrides,
                                  scsim_scenario** out) {
  return guarded([&] {
    require_handle(out, "out");
    const auto ov = collect(overrides, n_overrides);
    *out = new scsim_scenario{scsim::parse_config(text ? text : "", ov)};
  });
}

scsim_status scsim_scenario_load(const char* path, const char* const* overrides, size_t n_overrides,
                                 scsim_scenario** out) {
  return guarded([&] {
    require_handle(out, "out");
    require_handle(path, "path");
    const auto ov = collect(overrides, n_overrides);
    *out = new scsim_scenario{scsim::load_config(path, ov)};
  });
}

void scsim_scenario_destroy(scsim_scenario* scenario) { delete scenario; }

uint64_t scsim_scenario_seed(const scsim_scenario* scenario) { return scenario ? scenario->value.seed : 0; }

scsim_status scsim_run(const scsim_scenario* scenario, scsim_report** out) {
  return guarded([&] {
    require_handle(scenario, "scenario");
    require_handle(out, "out");
    *out = new scsim_report{scsim::run(scenario->value)};
  });
}

void scsim_report_destroy(scsim_report* report) { delete report; }

size_t scsim_report_epoch_count(const scsim_report* report) { return report ? report->value.epochs.size() : 0; }

scsim_status scsim_report_epoch(const scsim_report* report, size_t index, scsim_epoch_metrics* out) {
  return guarded([&] {
    require_handle(report, "report");
    require_handle(out, "out");
    const auto& epochs = report->value.epochs;
    if (index >= epochs.size()) throw std::out_of_range("epoch index out of range");
    const scsim::EpochMetrics& e = epochs[index];
    *out = {e.epoch_start_s, e.offered,         e.offered_hits,    e.scs_served,      e.mbs_served,
            e.hit_rate,      e.mean_power,      e.mean_battery,    e.outage_energy,   e.overflow_energy,
            e.continuity_rate, e.pushes,        e.defers,          e.sleeping_stations};
  });
}

scsim_status scsim_report_summary(const scsim_report* report, scsim_run_summary* out) {
  return guarded([&] {
    require_handle(report, "report");
    require_handle(out, "out");
    const scsim::MetricsReport& r = report->value;
    out->policy = r.policy == scsim::PolicyKind::Greedy ? SCSIM_POLICY_GREEDY : SCSIM_POLICY_SUSTAINABLE;
    out->seed = r.seed;
    out->cache_capacity = r.cache_capacity;
    out->n_stations = r.n_stations;
    out->total_steps = r.total_steps;
    out->offered = r.offered;
    out->scs_served = r.scs_served;
    out->mbs_served = r.mbs_served;
    out->normalized_offload = r.normalized_offload();
    out->offload_mbps_per_cell = r.offload_mbps_per_cell();
    out->hit_rate = r.hit_rate();
    out->continuity_rate = r.continuity_rate();
    out->outage_energy = r.outage_energy;
    out->overflow_energy = r.overflow_energy;
    out->pushes = r.pushes;
    out->defers = r.defers;
  });
}

size_t scsim_report_station_count(const scsim_report* report) { return report ? report->value.batteries.size() : 0; }

scsim_status scsim_report_battery(const scsim_report* report, size_t station, scsim_battery_ledger* out) {
  return guarded([&] {
    require_handle(report, "report");
    require_handle(out, "out");
    const auto& batteries = report->value.batteries;
    if (station >= batteries.size()) throw std::out_of_range("station index out of range");
    const scsim::Battery& b = batteries[station];
    *out = {b.level, b.initial_level, b.cum_harvested, b.cum_consumed, b.cum_overflow, b.cum_deficit};
  });
}

scsim_status scsim_report_write_metrics_csv(const scsim_report* report, const char* path) {
  return guarded([&] {
    require_handle(report, "report");
    require_handle(path, "path");
    const std::string csv = scsim::metrics_csv({&report->value});
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << csv;
    f.close();
    if (!f) throw scsim::RuntimeError(std::string("cannot write '") + path + "'");
  });
}

double scsim_expected_offload(double mu, size_t cap) {
  if (!std::isfinite(mu) || mu < 0.0) return std::numeric_limits<double>::quiet_NaN();
  return scsim::expected_offload(mu, cap);
}

scsim_status scsim_cmd_run(const scsim_scenario* scenario, const char* out_dir, size_t seeds) {
  return guarded([&] {
    require_handle(scenario, "scenario");
    require_handle(out_dir, "out_dir");
    scsim::cmd_run(scenario->value, out_dir, seeds);
  });
}

scsim_status scsim_cmd_sweep_cache(const scsim_scenario* scenario, const char* out_dir, size_t seeds) {
  return guarded([&] {
    require_handle(scenario, "scenario");
    require_handle(out_dir, "out_dir");
    scsim::cmd_sweep_cache(scenario->value, out_dir, seeds);
  });
}

scsim_status scsim_cmd_compare_energy(const scsim_scenario* scenario, const char* out_dir, size_t seeds,
                                      double* mean_ratio) {
  return guarded([&] {
    require_handle(scenario, "scenario");
    require_handle(out_dir, "out_dir");
    const auto result = scsim::cmd_compare_energy(scenario->value, out_dir, seeds);
    if (mean_ratio) *mean_ratio = result.mean_capacity_ratio;
  });
}

}  // extern "C"
