/*
 * C interface to the self-sustaining caching station simulator.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns an scsim_status;
 * on failure scsim_last_error() describes the problem until the next call on
 * the same thread.
 */
#ifndef SCSIM_SCSIM_H
#define SCSIM_SCSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SCSIM_API __declspec(dllexport)
#else
#define SCSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum scsim_status {
  SCSIM_OK = 0,
  SCSIM_ERR_INVALID_ARGUMENT = 1,
  SCSIM_ERR_CONFIG = 2,
  SCSIM_ERR_RUNTIME = 3
} scsim_status;

typedef struct scsim_scenario scsim_scenario;
typedef struct scsim_report scsim_report;

typedef enum scsim_policy { SCSIM_POLICY_SUSTAINABLE = 0, SCSIM_POLICY_GREEDY = 1 } scsim_policy;

/* One large epoch; mirrors a metrics.csv row plus the raw hit count. */
typedef struct scsim_epoch_metrics {
  double epoch_start_s;
  uint64_t offered;
  uint64_t offered_hits;
  uint64_t scs_served;
  uint64_t mbs_served;
  double hit_rate;
  double mean_power;
  double mean_battery;
  double outage_energy;
  double overflow_energy;
  double continuity_rate;
  uint64_t pushes;
  uint64_t defers;
  uint64_t sleeping_stations;
} scsim_epoch_metrics;

typedef struct scsim_run_summary {
  scsim_policy policy;
  uint64_t seed;
  uint64_t cache_capacity;
  uint64_t n_stations;
  uint64_t total_steps;
  uint64_t offered;
  uint64_t scs_served;
  uint64_t mbs_served;
  double normalized_offload;
  double offload_mbps_per_cell;
  double hit_rate;
  double continuity_rate;
  double outage_energy;
  double overflow_energy;
  uint64_t pushes;
  uint64_t defers;
} scsim_run_summary;

/* Final battery ledger of one station. */
typedef struct scsim_battery_ledger {
  double level;
  double initial_level;
  double harvested;
  double consumed;
  double overflow;
  double deficit;
} scsim_battery_ledger;

SCSIM_API const char* scsim_version(void);
SCSIM_API int scsim_metrics_schema_version(void);
SCSIM_API const char* scsim_last_error(void);

/* Builds a scenario from config text (NULL means empty) or a file, then
 * applies n_overrides strings of the form "section.key=value". */
SCSIM_API scsim_status scsim_scenario_parse(const char* text, const char* const* overrides, size_t n_overrides,
                                            scsim_scenario** out);
SCSIM_API scsim_status scsim_scenario_load(const char* path, const char* const* overrides, size_t n_overrides,
                                           scsim_scenario** out);
SCSIM_API void scsim_scenario_destroy(scsim_scenario* scenario);
SCSIM_API uint64_t scsim_scenario_seed(const scsim_scenario* scenario);

SCSIM_API scsim_status scsim_run(const scsim_scenario* scenario, scsim_report** out);
SCSIM_API void scsim_report_destroy(scsim_report* report);
SCSIM_API size_t scsim_report_epoch_count(const scsim_report* report);
SCSIM_API scsim_status scsim_report_epoch(const scsim_report* report, size_t index, scsim_epoch_metrics* out);
SCSIM_API scsim_status scsim_report_summary(const scsim_report* report, scsim_run_summary* out);
SCSIM_API size_t scsim_report_station_count(const scsim_report* report);
SCSIM_API scsim_status scsim_report_battery(const scsim_report* report, size_t station, scsim_battery_ledger* out);

/* Writes metrics.csv as produced by the run subcommand. */
SCSIM_API scsim_status scsim_report_write_metrics_csv(const scsim_report* report, const char* path);

/* E[min(X, cap)] for X ~ Poisson(mu); NaN for invalid mu. */
SCSIM_API double scsim_expected_offload(double mu, size_t cap);

/* Subcommands. Each writes metrics.csv, summary.csv and plot.svg into
 * out_dir for `seeds` consecutive seeds. compare-energy stores the mean
 * sustainable/greedy capacity ratio in *mean_ratio when non-NULL. */
SCSIM_API scsim_status scsim_cmd_run(const scsim_scenario* scenario, const char* out_dir, size_t seeds);
SCSIM_API scsim_status scsim_cmd_sweep_cache(const scsim_scenario* scenario, const char* out_dir, size_t seeds);
SCSIM_API scsim_status scsim_cmd_compare_energy(const scsim_scenario* scenario, const char* out_dir, size_t seeds,
                                                double* mean_ratio);

#ifdef __cplusplus
}
#endif

#endif /* SCSIM_SCSIM_H */
