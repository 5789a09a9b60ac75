#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "scsim/catalog.hpp"
#include "scsim/energy.hpp"
#include "scsim/mobility.hpp"
#include "scsim/policy.hpp"
#include "scsim/station.hpp"

namespace scsim {

struct Scenario {
  // highway
  Highway highway;
  double speed = 25.0;
  // catalog
  std::size_t n_files = 1000;
  double gamma = 1.0;
  // traffic
  double base_density = 0.01;  // vehicles per meter per direction
  bool daily_profile = true;
  TrafficProfile traffic;
  // energy
  EnergyProfile energy;
  double battery_capacity = kUnbounded;
  double initial_battery = 0.0;
  // station
  std::size_t cache_capacity = 100;
  double split_ratio = 0.8;
  bool cache_prewarm = true;
  PowerModel power;
  // policy
  PolicyKind policy = PolicyKind::Sustainable;
  bool greedy_partial = false;
  BackhaulBudget backhaul;
  Watermarks watermarks;
  // engine
  double delta_large = 900.0;
  double delta_small = 1.0;
  double duration = 86400.0;
  std::uint64_t seed = 42;
  std::vector<std::size_t> sweep_cache_sizes{0, 5, 10, 20, 31, 50, 75, 100, 200, 400, 700, 1000};

  std::size_t steps_per_epoch() const;
  std::size_t n_epochs() const;

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

struct EpochMetrics {
  double epoch_start_s = 0.0;
  std::size_t steps = 0;
  // user-steps
  std::size_t offered = 0;
  std::size_t offered_hits = 0;
  std::size_t scs_served = 0;
  std::size_t mbs_served = 0;
  std::size_t backhaul_fetches = 0;
  double hit_rate = 0.0;
  double mean_power = 0.0;  // delivered, averaged over station-steps
  double mean_battery = 0.0;
  std::vector<double> battery_levels;  // per station, end of epoch
  std::size_t sleeping_stations = 0;
  double outage_energy = 0.0;
  double overflow_energy = 0.0;
  std::size_t handovers = 0;
  std::size_t continuous_handovers = 0;
  double continuity_rate = 0.0;
  std::size_t pushes = 0;
  std::size_t defers = 0;
};

struct DayTotals {
  std::size_t day = 0;
  std::size_t offered = 0;
  std::size_t scs_served = 0;
  std::size_t mbs_served = 0;
};

struct MetricsReport {
  PolicyKind policy = PolicyKind::Sustainable;
  std::uint64_t seed = 0;
  std::size_t cache_capacity = 0;
  std::size_t n_stations = 0;
  double rate_per_user_mbps = 0.0;

  std::vector<EpochMetrics> epochs;
  std::vector<DayTotals> days;
  std::vector<Battery> batteries;  // final state per station

  std::size_t total_steps = 0;
  std::size_t offered = 0;
  std::size_t offered_hits = 0;
  std::size_t scs_served = 0;
  std::size_t mbs_served = 0;
  std::size_t handovers = 0;
  std::size_t continuous_handovers = 0;
  std::size_t pushes = 0;
  std::size_t defers = 0;
  double outage_energy = 0.0;
  double overflow_energy = 0.0;

  /// SCS-served / offered; 0 for an empty road.
  double normalized_offload() const;
  double hit_rate() const;
  double continuity_rate() const;
  /// Time-averaged SCS-served users per cell.
  double mean_served_per_cell() const;
  double offload_mbps_per_cell() const { return mean_served_per_cell() * rate_per_user_mbps; }
};

/// One station during one small step, as seen by a RunHooks observer.
struct StepRecord {
  std::size_t epoch = 0;
  double time = 0.0;
  std::size_t station = 0;
  Mode mode = Mode::Active;
  std::size_t quota = 0;
  std::size_t offered = 0;
  std::size_t offered_hits = 0;
  std::size_t served_target = 0;
  std::size_t served = 0;
  double available_power = 0.0;  // battery / dt + harvest before the step
  double requested_power = 0.0;
  double delivered_power = 0.0;
  bool brownout = false;
};

struct RunHooks {
  std::function<void(const StepRecord&)> on_step;
  /// Replaces the catalog at the start of each epoch. Unset by default.
  std::function<Catalog(std::size_t epoch, const Catalog&)> popularity_redraw;
};

/// Runs the two-timescale simulation.
///
/// Per epoch: regenerate vehicles at the profile density, draw each
/// station's backhaul budget and refresh its popular partition, then run the
/// large-step controller. Per small step: advance vehicles (from the second
/// step on), prefetch for imminent handovers, run the small-step controller,
/// admit, step the batteries and record. A single rng stream is consumed in
/// a fixed order that does not depend on the policy or cache layout.
MetricsReport run(const Scenario& scenario, const RunHooks& hooks = {});

/// E[min(X, cap)] for X ~ Poisson(mu).
double expected_offload(double mu, std::size_t cap);

struct SweepPoint {
  std::size_t cache_size = 0;
  double offload_mbps_per_cell = 0.0;
  MetricsReport report;
};

/// Static traffic and a constant harvest of at least p_max are imposed on
/// `base` so that only the cache and the radio cap limit offload. One run per
/// size with the same seed; runs execute concurrently, results keep input
/// order.
std::vector<SweepPoint> sweep_cache(const Scenario& base, const std::vector<std::size_t>& cache_sizes);

struct EnergyComparison {
  MetricsReport sustainable;
  MetricsReport greedy;
  /// Sustainable over greedy total SCS-served; 1 when both are 0.
  double capacity_ratio = 1.0;
};

EnergyComparison compare_energy(const Scenario& base);

/// Runs `fn(i)` for i in [0, n) on up to hardware_concurrency threads and
/// returns results in index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace scsim
