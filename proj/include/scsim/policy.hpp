#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scsim/catalog.hpp"
#include "scsim/rng.hpp"
#include "scsim/station.hpp"

namespace scsim {

enum class PolicyKind { Sustainable, Greedy };

/// Per-epoch wireless backhaul allowance, in files.
struct BackhaulBudget {
  double files_per_epoch = 50.0;
  double factor_min = 0.5;
  double factor_max = 1.0;

  /// round(files_per_epoch * U[factor_min, factor_max)); one rng draw.
  std::size_t realize(Rng& rng) const;
};

struct PopularUpdate {
  std::vector<ContentId> evict;
  std::vector<ContentId> fetch;
};

/// Moves the popular partition toward the top-`partition_size` ids using at
/// most `budget` fetches. Free slots are filled before anything is evicted,
/// and the least popular out-of-target id is always the one evicted.
PopularUpdate plan_popular_update(std::span<const ContentId> current, const Catalog& catalog,
                                  std::size_t budget, std::size_t partition_size);

struct PrefetchCandidate {
  std::size_t vehicle = 0;
  ContentId content = 1;
  std::size_t next_station = 0;
  double eta = 0.0;
};

/// Mobility-aware prefetch for handovers due within `horizon` seconds.
///
/// Candidates are taken in (eta, vehicle) order. A station fetches a content
/// only if neither partition holds it, it has prefetch slots, and its
/// remaining budget allows. Returns one fetch list per station.
std::vector<std::vector<ContentId>> plan_prefetch(std::span<const PrefetchCandidate> predictions,
                                                  std::span<const StationState> stations,
                                                  std::span<const std::size_t> budgets, double horizon);

struct ModePlan {
  std::vector<Mode> mode;
  std::vector<std::size_t> quota;
};

/// Small-timescale decision for one station.
struct PowerPlan {
  std::size_t served_target = 0;
  /// Power the station will ask its battery for when serving served_target.
  double requested_power = 0.0;
  bool defer_best_effort = false;
  bool push_enabled = false;
  /// Active station that cannot cover p_const this step; it idles at p_sleep.
  bool brownout = false;
};

/// Battery thresholds for the defer/push delivery flags, in energy units.
struct Watermarks {
  double low = 0.1 * 3600.0;
  double high = 0.9 * 3600.0;
};

/// Sleep and offload-quota decision at the start of an epoch.
///
/// Available rate r = battery / epoch + forecast. r < p_const sleeps;
/// otherwise quota = min(max_users, floor((min(r, p_max) - p_const) / p_per_user)).
ModePlan sustainable_large_step(const PowerModel& model, std::span<const double> battery_levels,
                                double forecast, double epoch_s);

/// Users an active station can power this step given battery and harvest.
std::size_t affordable_users(const PowerModel& model, double battery_level, double harvest, double dt);

PowerPlan sustainable_small_step(const PowerModel& model, std::size_t quota, double battery_level,
                                 double harvest, std::size_t offered_hits, double dt,
                                 const Watermarks& watermarks = {});

struct GreedyPlan {
  ModePlan modes;
  std::vector<PowerPlan> power;
};

/// Always active at full power: quota = max_users and a full-power request
/// regardless of load.
GreedyPlan greedy_policy(const PowerModel& model, std::span<const std::size_t> offered_hits);

/// Users the greedy station actually serves once the battery has delivered
/// `delivered_power`. All-or-nothing unless `partial` is set, in which case
/// it serves as many as the delivered power covers.
std::size_t greedy_served(const PowerModel& model, std::size_t target, double delivered_power, bool partial);

}  // namespace scsim
