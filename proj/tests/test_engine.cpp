#include <cmath>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "scsim/engine.hpp"
#include "scsim/error.hpp"

using namespace scsim;

namespace {

Scenario short_scenario() {
  Scenario sc;
  sc.delta_large = 60.0;
  sc.duration = 600.0;
  return sc;
}

Scenario abundant(Scenario sc) {
  sc.daily_profile = false;
  sc.energy.kind = EnergyKind::Constant;
  sc.energy.peak_rate = 1.0;
  return sc;
}

}  // namespace

TEST_CASE("timescale nesting is validated") {
  Scenario sc;
  sc.delta_large = 10.0;
  sc.delta_small = 3.0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  try {
    sc.validate();
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("timescale nesting violated") != std::string::npos);
  }
  sc.delta_small = 2.5;
  CHECK_NOTHROW(sc.validate());
  sc.duration = 86405.0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);

  Scenario big;
  big.cache_capacity = 1001;
  CHECK_THROWS_AS(big.validate(), ConfigError);
  CHECK(Scenario{}.steps_per_epoch() == 900);
  CHECK(Scenario{}.n_epochs() == 96);
}

TEST_CASE("empty road serves nothing") {
  Scenario sc = short_scenario();
  sc.base_density = 0.0;
  const MetricsReport r = run(sc);
  CHECK(r.offered == 0);
  CHECK(r.scs_served == 0);
  CHECK(r.mbs_served == 0);
  CHECK(r.normalized_offload() == 0.0);
  CHECK(r.epochs.size() == 10);
}

TEST_CASE("runs are deterministic in the seed") {
  const Scenario sc = short_scenario();
  const MetricsReport a = run(sc), b = run(sc);
  REQUIRE(a.epochs.size() == b.epochs.size());
  for (std::size_t e = 0; e < a.epochs.size(); ++e) {
    CHECK(a.epochs[e].offered == b.epochs[e].offered);
    CHECK(a.epochs[e].scs_served == b.epochs[e].scs_served);
    CHECK(a.epochs[e].mean_battery == b.epochs[e].mean_battery);
  }
  Scenario other = sc;
  other.seed = 43;
  CHECK(run(other).offered != a.offered);
}

TEST_CASE("saturated cache with ample energy serves min(count, 10) per cell") {
  Scenario sc = abundant(short_scenario());
  sc.cache_capacity = sc.n_files;
  sc.split_ratio = 1.0;
  sc.base_density = 0.008;
  std::map<std::pair<double, std::size_t>, StepRecord> steps;
  RunHooks hooks;
  hooks.on_step = [&](const StepRecord& r) { steps[{r.time, r.station}] = r; };
  const MetricsReport rep = run(sc, hooks);
  std::size_t expected = 0;
  for (const auto& [key, r] : steps) {
    CHECK(r.offered_hits == r.offered);
    CHECK(r.served == std::min<std::size_t>(r.offered, 10));
    expected += std::min<std::size_t>(r.offered, 10);
  }
  CHECK(rep.scs_served == expected);
  CHECK(rep.hit_rate() == 1.0);
}

TEST_CASE("expected_offload against term-wise summation") {
  CHECK(expected_offload(0.0, 10) == 0.0);
  CHECK(expected_offload(5.0, 0) == 0.0);
  CHECK(expected_offload(3.0, 1000) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(std::fabs(expected_offload(3.0, 1000) - 3.0) < 1e-6);
  CHECK_THROWS_AS(expected_offload(-1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(expected_offload(NAN, 10), std::invalid_argument);
  const double mu = 20.0 * oracle::zipf_head_mass(31, 1000, 1.0);
  CHECK(std::fabs(expected_offload(mu, 10) - oracle::poisson_capped_mean(mu, 10)) < 1e-9);
  for (double m : {0.01, 0.5, 2.0, 7.3, 10.76, 20.0, 55.0, 300.0})
    for (std::size_t c : {1u, 3u, 10u, 25u, 100u})
      CHECK(std::fabs(expected_offload(m, c) - oracle::poisson_capped_mean(m, c)) < 1e-9 * (1.0 + m));
  // monotone in both arguments
  for (double m = 0.0; m < 30.0; m += 0.37) {
    CHECK(expected_offload(m + 0.37, 10) >= expected_offload(m, 10));
    CHECK(expected_offload(m, 11) >= expected_offload(m, 10));
    CHECK(expected_offload(m, 10) <= std::min(m, 10.0) + 1e-12);
  }
}

TEST_CASE("conservation per epoch and per battery") {
  Scenario sc;
  sc.delta_large = 900.0;
  sc.duration = 4 * 3600.0;
  for (PolicyKind kind : {PolicyKind::Sustainable, PolicyKind::Greedy}) {
    sc.policy = kind;
    sc.battery_capacity = 500.0;
    const MetricsReport r = run(sc);
    for (const EpochMetrics& e : r.epochs) {
      CHECK(e.offered == e.scs_served + e.mbs_served);
      CHECK(e.offered_hits <= e.offered);
      CHECK(e.scs_served <= e.offered_hits);
    }
    for (const Battery& b : r.batteries) {
      CHECK(std::fabs(b.ledger_residual()) < 1e-6);
      CHECK(b.level <= b.capacity);
    }
    CHECK(r.offered == r.scs_served + r.mbs_served);
  }
}

TEST_CASE("sustainable policy never over-draws an active station") {
  Scenario sc;
  sc.duration = 12 * 3600.0;
  sc.delta_large = 900.0;
  RunHooks hooks;
  std::size_t checked = 0;
  hooks.on_step = [&](const StepRecord& r) {
    if (r.mode == Mode::Active && !r.brownout) {
      REQUIRE(r.requested_power <= r.available_power + 1e-9);
      REQUIRE(r.delivered_power == doctest::Approx(r.requested_power));
      ++checked;
    }
    REQUIRE(r.served <= std::min({r.offered_hits, r.quota, std::size_t{10}}));
  };
  run(sc, hooks);
  CHECK(checked > 0);
}

TEST_CASE("sweep_cache is nondecreasing and keeps input order") {
  Scenario sc;
  sc.delta_large = 300.0;
  sc.duration = 3000.0;
  sc.split_ratio = 1.0;
  const std::vector<std::size_t> sizes{0, 10, 31, 200, 1000};
  const auto pts = sweep_cache(sc, sizes);
  REQUIRE(pts.size() == sizes.size());
  CHECK(pts[0].offload_mbps_per_cell == 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i].cache_size == sizes[i]);
  for (std::size_t i = 1; i < pts.size(); ++i)
    CHECK(pts[i].offload_mbps_per_cell >= pts[i - 1].offload_mbps_per_cell * 0.98);
  // same seed, same arrivals at every point
  for (const auto& p : pts) CHECK(p.report.offered == pts[0].report.offered);

  const std::vector<std::size_t> too_big{1001};
  CHECK_THROWS_AS(sweep_cache(sc, too_big), ConfigError);
}

TEST_CASE("compare_energy edge cases") {
  Scenario sc = abundant(short_scenario());
  auto cmp = compare_energy(sc);
  CHECK(cmp.capacity_ratio == doctest::Approx(1.0).epsilon(0.02));

  Scenario dark = short_scenario();
  dark.energy.kind = EnergyKind::Zero;
  cmp = compare_energy(dark);
  CHECK(cmp.sustainable.scs_served == 0);
  CHECK(cmp.greedy.scs_served == 0);
  CHECK(cmp.capacity_ratio == 1.0);
}

TEST_CASE("popularity redraw hook replaces the catalog each epoch") {
  Scenario sc = abundant(short_scenario());
  sc.cache_prewarm = false;
  std::size_t calls = 0;
  RunHooks hooks;
  hooks.popularity_redraw = [&](std::size_t, const Catalog& c) {
    ++calls;
    return Catalog::zipf(c.size(), 0.0);
  };
  const MetricsReport flat = run(sc, hooks);
  CHECK(calls == sc.n_epochs());
  const MetricsReport skewed = run(sc);
  CHECK(flat.hit_rate() < skewed.hit_rate());
}

TEST_CASE("parallel_map preserves order and propagates errors") {
  std::function<int(std::size_t)> sq = [](std::size_t i) { return static_cast<int>(i * i); };
  const auto v = parallel_map<int>(50, sq);
  for (std::size_t i = 0; i < 50; ++i) CHECK(v[i] == static_cast<int>(i * i));
  std::function<int(std::size_t)> bad = [](std::size_t i) -> int {
    if (i == 3) throw std::runtime_error("boom");
    return 0;
  };
  CHECK_THROWS_AS(parallel_map<int>(8, bad), std::runtime_error);
  CHECK(parallel_map<int>(0, sq).empty());
}
