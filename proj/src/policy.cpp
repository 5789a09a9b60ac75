#include "scsim/policy.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace scsim {

namespace {

// Slack for floor() on quotients such as (0.6 - 0.5) / 0.05 that are exact
// in decimal but land just below an integer in binary.
constexpr double kFloorSlack = 1e-9;

std::size_t users_for_rate(const PowerModel& model, double rate) {
  const double headroom = std::min(rate, model.p_max()) - model.p_const;
  if (headroom < 0.0) return 0;
  if (model.p_per_user <= 0.0) return model.max_users;
  const double users = std::floor(headroom / model.p_per_user + kFloorSlack);
  return std::min(model.max_users, static_cast<std::size_t>(users));
}

}  // namespace

std::size_t BackhaulBudget::realize(Rng& rng) const {
  const double factor = rng.uniform(factor_min, factor_max);
  return static_cast<std::size_t>(std::max(0.0, std::round(files_per_epoch * factor)));
}

PopularUpdate plan_popular_update(std::span<const ContentId> current, const Catalog& catalog,
                                  std::size_t budget, std::size_t partition_size) {
  PopularUpdate out;
  partition_size = std::min(partition_size, catalog.size());
  if (budget == 0 || partition_size == 0) return out;

  std::vector<char> cached(catalog.size() + 1, 0);
  for (ContentId id : current) cached[id] = 1;

  // Ids are popularity-ordered, so the target is 1..partition_size and the
  // least popular cached outsider is the one with the largest id.
  std::vector<ContentId> outsiders;
  for (ContentId id : current)
    if (id > partition_size) outsiders.push_back(id);
  std::sort(outsiders.begin(), outsiders.end(), std::greater<>());
  outsiders.erase(std::unique(outsiders.begin(), outsiders.end()), outsiders.end());

  std::size_t occupied = 0;
  for (std::size_t id = 1; id < cached.size(); ++id) occupied += cached[id] ? 1 : 0;
  std::size_t free_slots = partition_size > occupied ? partition_size - occupied : 0;
  std::size_t next_outsider = 0;

  for (ContentId id = 1; id <= partition_size && out.fetch.size() < budget; ++id) {
    if (cached[id]) continue;
    if (free_slots > 0) {
      --free_slots;
    } else if (next_outsider < outsiders.size()) {
      out.evict.push_back(outsiders[next_outsider++]);
    } else {
      break;
    }
    out.fetch.push_back(id);
  }
  return out;
}

std::vector<std::vector<ContentId>> plan_prefetch(std::span<const PrefetchCandidate> predictions,
                                                  std::span<const StationState> stations,
                                                  std::span<const std::size_t> budgets, double horizon) {
  std::vector<std::vector<ContentId>> fetches(stations.size());
  std::vector<const PrefetchCandidate*> due;
  for (const PrefetchCandidate& p : predictions)
    if (p.eta <= horizon && p.next_station < stations.size()) due.push_back(&p);
  std::stable_sort(due.begin(), due.end(), [](const PrefetchCandidate* a, const PrefetchCandidate* b) {
    return std::tie(a->eta, a->vehicle) < std::tie(b->eta, b->vehicle);
  });

  for (const PrefetchCandidate* p : due) {
    const StationState& st = stations[p->next_station];
    auto& list = fetches[p->next_station];
    if (st.cache.prefetch_budget() == 0 || list.size() >= budgets[p->next_station]) continue;
    if (st.cache.contains(p->content)) continue;
    if (std::find(list.begin(), list.end(), p->content) != list.end()) continue;
    list.push_back(p->content);
  }
  return fetches;
}

ModePlan sustainable_large_step(const PowerModel& model, std::span<const double> battery_levels,
                                double forecast, double epoch_s) {
  ModePlan plan;
  plan.mode.reserve(battery_levels.size());
  plan.quota.reserve(battery_levels.size());
  for (double level : battery_levels) {
    const double rate = level / epoch_s + forecast;
    if (rate < model.p_const) {
      plan.mode.push_back(Mode::Sleep);
      plan.quota.push_back(0);
    } else {
      plan.mode.push_back(Mode::Active);
      plan.quota.push_back(users_for_rate(model, rate));
    }
  }
  return plan;
}

std::size_t affordable_users(const PowerModel& model, double battery_level, double harvest, double dt) {
  return users_for_rate(model, battery_level / dt + harvest);
}

PowerPlan sustainable_small_step(const PowerModel& model, std::size_t quota, double battery_level,
                                 double harvest, std::size_t offered_hits, double dt,
                                 const Watermarks& watermarks) {
  PowerPlan plan;
  plan.defer_best_effort = battery_level < watermarks.low;
  plan.push_enabled = battery_level > watermarks.high;
  if (battery_level / dt + harvest < model.p_const) {
    plan.brownout = true;
    plan.requested_power = model.p_sleep;
    return plan;
  }
  plan.served_target = std::min({offered_hits, quota, affordable_users(model, battery_level, harvest, dt)});
  plan.requested_power = power_draw(model, Mode::Active, plan.served_target);
  return plan;
}

GreedyPlan greedy_policy(const PowerModel& model, std::span<const std::size_t> offered_hits) {
  GreedyPlan plan;
  plan.modes.mode.assign(offered_hits.size(), Mode::Active);
  plan.modes.quota.assign(offered_hits.size(), model.max_users);
  plan.power.reserve(offered_hits.size());
  for (std::size_t offered : offered_hits) {
    PowerPlan p;
    p.served_target = std::min(offered, model.max_users);
    p.requested_power = model.p_max();
    plan.power.push_back(p);
  }
  return plan;
}

std::size_t greedy_served(const PowerModel& model, std::size_t target, double delivered_power, bool partial) {
  const double needed = model.p_const + static_cast<double>(target) * model.p_per_user;
  if (delivered_power + 1e-12 >= needed) return target;
  if (!partial) return 0;
  return std::min(target, users_for_rate(model, delivered_power));
}

}  // namespace scsim
