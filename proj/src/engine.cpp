#include "scsim/engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "scsim/error.hpp"

namespace scsim {

namespace {

bool is_multiple(double outer, double inner) {
  const double ratio = outer / inner;
  const double nearest = std::round(ratio);
  return nearest >= 1.0 && std::fabs(ratio - nearest) <= 1e-9 * nearest;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invariant violated: " + what);
}

}  // namespace

std::size_t Scenario::steps_per_epoch() const {
  return static_cast<std::size_t>(std::llround(delta_large / delta_small));
}

std::size_t Scenario::n_epochs() const { return static_cast<std::size_t>(std::llround(duration / delta_large)); }

void Scenario::validate() const {
  require(highway.n_stations >= 1, "highway.n_stations >= 1");
  require(std::isfinite(highway.coverage_radius) && highway.coverage_radius > 0.0, "highway.coverage_radius > 0");
  require(std::isfinite(speed) && speed > 0.0, "highway.speed > 0");
  require(n_files >= 1, "catalog.n_files >= 1");
  require(std::isfinite(gamma) && gamma >= 0.0, "catalog.gamma finite and >= 0");
  require(std::isfinite(base_density) && base_density >= 0.0, "traffic.base_density >= 0");
  require(traffic.floor_fraction > 0.0 && traffic.floor_fraction <= 1.0, "traffic.floor_fraction in (0, 1]");
  require(traffic.peak_width_hours > 0.0, "traffic.peak_width > 0");
  require(traffic.peak1_hour >= 0.0 && traffic.peak1_hour < 24.0 && traffic.peak2_hour >= 0.0 &&
              traffic.peak2_hour < 24.0,
          "traffic peak hours in [0, 24)");
  require(std::isfinite(energy.peak_rate) && energy.peak_rate >= 0.0, "energy.peak_rate >= 0");
  if (energy.kind == EnergyKind::SolarSine)
    require(energy.sunrise_hour >= 0.0 && energy.sunset_hour <= 24.0 && energy.sunset_hour > energy.sunrise_hour,
            "energy sunrise < sunset within [0, 24]");
  require(battery_capacity > 0.0, "energy.battery_capacity > 0");
  require(initial_battery >= 0.0 && initial_battery <= battery_capacity,
          "energy.initial_battery in [0, battery_capacity]");
  require(cache_capacity <= n_files, "station.cache_capacity <= catalog.n_files");
  require(split_ratio >= 0.0 && split_ratio <= 1.0, "station.split_ratio in [0, 1]");
  try {
    power.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invariant violated: ") + e.what());
  }
  require(backhaul.files_per_epoch >= 0.0, "policy.backhaul_files_per_epoch >= 0");
  require(backhaul.factor_min >= 0.0 && backhaul.factor_min <= backhaul.factor_max,
          "0 <= policy.backhaul_factor_min <= policy.backhaul_factor_max");
  require(watermarks.low <= watermarks.high, "policy.low_watermark <= policy.high_watermark");
  require(std::isfinite(delta_small) && delta_small > 0.0, "engine.delta_small > 0");
  require(std::isfinite(delta_large) && delta_large > 0.0, "engine.delta_large > 0");
  require(is_multiple(delta_large, delta_small),
          "timescale nesting violated (delta_large must be an integer multiple of delta_small)");
  require(std::isfinite(duration) && duration > 0.0, "engine.duration > 0");
  require(is_multiple(duration, delta_large),
          "timescale nesting violated (duration must be an integer multiple of delta_large)");
}

double MetricsReport::normalized_offload() const {
  return offered == 0 ? 0.0 : static_cast<double>(scs_served) / static_cast<double>(offered);
}

double MetricsReport::hit_rate() const {
  return offered == 0 ? 0.0 : static_cast<double>(offered_hits) / static_cast<double>(offered);
}

double MetricsReport::continuity_rate() const {
  return handovers == 0 ? 0.0 : static_cast<double>(continuous_handovers) / static_cast<double>(handovers);
}

double MetricsReport::mean_served_per_cell() const {
  const double cell_steps = static_cast<double>(total_steps) * static_cast<double>(n_stations);
  return cell_steps == 0.0 ? 0.0 : static_cast<double>(scs_served) / cell_steps;
}

MetricsReport run(const Scenario& sc, const RunHooks& hooks) {
  sc.validate();

  Rng rng(sc.seed);
  Catalog catalog = Catalog::zipf(sc.n_files, sc.gamma);
  const Highway& hw = sc.highway;
  const PowerModel& pm = sc.power;
  const std::size_t n_st = hw.n_stations;
  const std::size_t steps = sc.steps_per_epoch();
  const double dt = sc.delta_small;
  const bool greedy = sc.policy == PolicyKind::Greedy;

  std::vector<StationState> stations(n_st);
  for (std::size_t s = 0; s < n_st; ++s) {
    StationState& st = stations[s];
    st.index = s;
    st.battery = Battery::with_level(sc.initial_battery, sc.battery_capacity);
    st.cache = CacheStore(sc.n_files, sc.cache_capacity, sc.split_ratio);
    if (sc.cache_prewarm) {
      const auto top = top_k(catalog, st.cache.popular_budget());
      st.cache.apply_popular({}, top);
    }
  }

  MetricsReport report;
  report.policy = sc.policy;
  report.seed = sc.seed;
  report.cache_capacity = sc.cache_capacity;
  report.n_stations = n_st;
  report.rate_per_user_mbps = pm.rate_per_user_mbps;

  std::vector<std::size_t> prefetch_budget(n_st, 0);
  std::vector<std::vector<std::size_t>> hits(n_st);
  std::vector<std::size_t> offered(n_st, 0);
  std::vector<std::size_t> cells;
  std::vector<PrefetchCandidate> candidates;
  std::vector<double> levels(n_st);

  VehicleSet vehicles;
  for (std::size_t e = 0; e < sc.n_epochs(); ++e) {
    const double t0 = static_cast<double>(e) * sc.delta_large;
    EpochMetrics em;
    em.epoch_start_s = t0;
    em.steps = steps;

    if (hooks.popularity_redraw) catalog = hooks.popularity_redraw(e, catalog);

    const double multiplier = sc.daily_profile ? traffic_multiplier(sc.traffic, std::fmod(t0, kSecondsPerDay)) : 1.0;
    vehicles = spawn_vehicles(sc.base_density * multiplier, hw, catalog, sc.speed, t0, rng);

    for (StationState& st : stations) {
      const std::size_t budget = sc.backhaul.realize(rng);
      const auto current = st.cache.popular();
      const PopularUpdate upd = plan_popular_update(current, catalog, budget, st.cache.popular_budget());
      st.cache.apply_popular(upd.evict, upd.fetch);
      prefetch_budget[st.index] = budget - upd.fetch.size();
    }

    ModePlan plan;
    if (greedy) {
      plan.mode.assign(n_st, Mode::Active);
      plan.quota.assign(n_st, pm.max_users);
    } else {
      for (std::size_t s = 0; s < n_st; ++s) levels[s] = stations[s].battery.level;
      const double forecast = mean_harvest(sc.energy, std::fmod(t0, kSecondsPerDay), sc.delta_large, dt);
      plan = sustainable_large_step(pm, levels, forecast, sc.delta_large);
    }
    for (std::size_t s = 0; s < n_st; ++s) {
      stations[s].mode = plan.mode[s];
      stations[s].quota = plan.quota[s];
      if (plan.mode[s] == Mode::Sleep) {
        ++em.sleeping_stations;
        prefetch_budget[s] = 0;
      }
    }

    cells.resize(vehicles.size());
    for (std::size_t v = 0; v < vehicles.size(); ++v) cells[v] = cell_index(vehicles[v].position, hw);

    double power_sum = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      const double t = t0 + static_cast<double>(k) * dt;

      if (k > 0) {
        advance(vehicles, dt, hw, t - dt);
        for (std::size_t v = 0; v < vehicles.size(); ++v) {
          const std::size_t cell = cell_index(vehicles[v].position, hw);
          if (cell != cells[v]) {
            ++em.handovers;
            if (stations[cell].cache.contains(vehicles[v].active_content)) ++em.continuous_handovers;
            cells[v] = cell;
          }
        }
      }

      candidates.clear();
      for (std::size_t v = 0; v < vehicles.size(); ++v) {
        const HandoverPrediction p = predict_next_cell(vehicles[v], hw);
        if (p.eta <= dt) candidates.push_back({v, vehicles[v].active_content, p.next_station, p.eta});
      }
      if (!candidates.empty()) {
        const auto fetches = plan_prefetch(candidates, stations, prefetch_budget, dt);
        for (std::size_t s = 0; s < n_st; ++s) {
          for (ContentId id : fetches[s])
            if (stations[s].cache.prefetch_insert(id)) --prefetch_budget[s];
          em.backhaul_fetches += fetches[s].size();
        }
      }

      for (std::size_t s = 0; s < n_st; ++s) {
        hits[s].clear();
        offered[s] = 0;
      }
      for (std::size_t v = 0; v < vehicles.size(); ++v) {
        const std::size_t s = cells[v];
        ++offered[s];
        if (stations[s].cache.contains(vehicles[v].active_content)) hits[s].push_back(v);
      }

      const double harvest = harvest_rate(sc.energy, std::fmod(t, kSecondsPerDay));
      for (StationState& st : stations) {
        const std::size_t s = st.index;
        StepRecord rec;
        rec.epoch = e;
        rec.time = t;
        rec.station = s;
        rec.mode = st.mode;
        rec.quota = st.quota;
        rec.offered = offered[s];
        rec.offered_hits = hits[s].size();
        rec.available_power = st.battery.level / dt + harvest;

        PowerPlan pp;
        if (greedy) {
          pp.served_target = std::min(hits[s].size(), pm.max_users);
          pp.requested_power = pm.p_max();
        } else if (st.mode == Mode::Sleep) {
          pp.requested_power = pm.p_sleep;
        } else {
          pp = sustainable_small_step(pm, st.quota, st.battery.level, harvest, hits[s].size(), dt, sc.watermarks);
          if (pp.defer_best_effort) ++em.defers;
          if (pp.push_enabled) ++em.pushes;
        }

        const Admission adm = admit(st, pm, hits[s], vehicles, pp.served_target);
        std::size_t served = adm.served.size();
        double requested = pp.requested_power;
        if (!greedy && st.mode == Mode::Active && !pp.brownout) requested = power_draw(pm, Mode::Active, served);

        const BatteryStepResult br = battery_step(st.battery, harvest, requested, dt);
        if (greedy) served = greedy_served(pm, served, br.delivered_power, sc.greedy_partial);

        const MbsService mbs = mbs_serve(offered[s] - served);
        em.offered += offered[s];
        em.offered_hits += hits[s].size();
        em.scs_served += served;
        em.mbs_served += mbs.served;
        em.outage_energy += br.deficit_energy;
        em.overflow_energy += br.overflow_energy;
        power_sum += br.delivered_power;

        if (hooks.on_step) {
          rec.served_target = pp.served_target;
          rec.served = served;
          rec.requested_power = requested;
          rec.delivered_power = br.delivered_power;
          rec.brownout = pp.brownout;
          hooks.on_step(rec);
        }
      }
    }

    em.hit_rate = em.offered == 0 ? 0.0 : static_cast<double>(em.offered_hits) / static_cast<double>(em.offered);
    em.mean_power = power_sum / static_cast<double>(steps * n_st);
    em.battery_levels.resize(n_st);
    double level_sum = 0.0;
    for (std::size_t s = 0; s < n_st; ++s) {
      em.battery_levels[s] = stations[s].battery.level;
      level_sum += stations[s].battery.level;
    }
    em.mean_battery = level_sum / static_cast<double>(n_st);
    em.continuity_rate =
        em.handovers == 0 ? 0.0 : static_cast<double>(em.continuous_handovers) / static_cast<double>(em.handovers);

    report.total_steps += steps;
    report.offered += em.offered;
    report.offered_hits += em.offered_hits;
    report.scs_served += em.scs_served;
    report.mbs_served += em.mbs_served;
    report.handovers += em.handovers;
    report.continuous_handovers += em.continuous_handovers;
    report.pushes += em.pushes;
    report.defers += em.defers;
    report.outage_energy += em.outage_energy;
    report.overflow_energy += em.overflow_energy;

    const auto day = static_cast<std::size_t>(std::floor(t0 / kSecondsPerDay));
    if (report.days.empty() || report.days.back().day != day) report.days.push_back({day, 0, 0, 0});
    report.days.back().offered += em.offered;
    report.days.back().scs_served += em.scs_served;
    report.days.back().mbs_served += em.mbs_served;

    report.epochs.push_back(std::move(em));
  }

  report.batteries.reserve(n_st);
  for (const StationState& st : stations) report.batteries.push_back(st.battery);
  return report;
}

double expected_offload(double mu, std::size_t cap) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("expected_offload: mu must be finite and >= 0");
  if (mu == 0.0 || cap == 0) return 0.0;
  // E[min(X, c)] = sum_{k<c} k P(k) + c (1 - sum_{k<c} P(k)), pmf in log space.
  const double log_mu = std::log(mu);
  double below = 0.0;
  double mass = 0.0;
  for (std::size_t k = 0; k < cap; ++k) {
    const double kd = static_cast<double>(k);
    const double p = std::exp(kd * log_mu - mu - std::lgamma(kd + 1.0));
    below += kd * p;
    mass += p;
  }
  return below + static_cast<double>(cap) * std::max(0.0, 1.0 - mass);
}

std::vector<SweepPoint> sweep_cache(const Scenario& base, const std::vector<std::size_t>& cache_sizes) {
  Scenario sc = base;
  sc.daily_profile = false;
  sc.energy.kind = EnergyKind::Constant;
  sc.energy.peak_rate = std::max(sc.energy.peak_rate, sc.power.p_max());
  sc.battery_capacity = kUnbounded;
  for (std::size_t c : cache_sizes)
    if (c > sc.n_files) throw ConfigError("invariant violated: sweep cache size exceeds catalog.n_files");
  sc.validate();

  std::function<SweepPoint(std::size_t)> one = [&](std::size_t i) {
    Scenario point = sc;
    point.cache_capacity = cache_sizes[i];
    SweepPoint out;
    out.cache_size = cache_sizes[i];
    out.report = run(point);
    out.offload_mbps_per_cell = out.report.offload_mbps_per_cell();
    return out;
  };
  return parallel_map<SweepPoint>(cache_sizes.size(), one);
}

EnergyComparison compare_energy(const Scenario& base) {
  base.validate();
  std::function<MetricsReport(std::size_t)> one = [&](std::size_t i) {
    Scenario sc = base;
    sc.policy = i == 0 ? PolicyKind::Sustainable : PolicyKind::Greedy;
    return run(sc);
  };
  auto reports = parallel_map<MetricsReport>(2, one);
  EnergyComparison out;
  out.sustainable = std::move(reports[0]);
  out.greedy = std::move(reports[1]);
  const auto s = static_cast<double>(out.sustainable.scs_served);
  const auto g = static_cast<double>(out.greedy.scs_served);
  if (g > 0.0)
    out.capacity_ratio = s / g;
  else
    out.capacity_ratio = s > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  return out;
}

}  // namespace scsim
