#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "scsim/mobility.hpp"

using namespace scsim;

namespace {

Highway ring(std::size_t stations) {
  Highway h;
  h.n_stations = stations;
  h.coverage_radius = 500.0;
  return h;
}

Vehicle at(double pos, Direction dir, double speed = 25.0) {
  Vehicle v;
  v.position = pos;
  v.direction = dir;
  v.speed = speed;
  return v;
}

double ring_distance(double a, double b, double length) {
  const double d = std::fabs(a - b);
  return std::min(d, length - d);
}

}  // namespace

TEST_CASE("highway geometry") {
  const Highway h = ring(10);
  CHECK(h.cell_length() == 1000.0);
  CHECK(h.length() == 10000.0);
  CHECK(h.length() == static_cast<double>(h.n_stations) * h.cell_length());
}

TEST_CASE("spawn_vehicles basics") {
  const Highway h = ring(10);
  const Catalog c = Catalog::zipf(1000, 1.0);
  Rng rng(1);
  CHECK(spawn_vehicles(0.0, h, c, 25.0, 0.0, rng).empty());

  Rng a(11), b(11);
  const VehicleSet va = spawn_vehicles(0.01, h, c, 25.0, 0.0, a);
  const VehicleSet vb = spawn_vehicles(0.01, h, c, 25.0, 0.0, b);
  REQUIRE(va.size() == vb.size());
  for (std::size_t i = 0; i < va.size(); ++i) {
    CHECK(va[i].position == vb[i].position);
    CHECK(va[i].active_content == vb[i].active_content);
    CHECK(va[i].direction == vb[i].direction);
  }
  for (const Vehicle& v : va) {
    CHECK(v.position >= 0.0);
    CHECK(v.position < h.length());
    CHECK(c.valid(v.active_content));
    CHECK(v.entry_time <= 0.0);
    CHECK(v.entry_time >= -h.cell_length() / 25.0);
  }
}

TEST_CASE("spawn_vehicles count is Poisson with mean 2 lambda L") {
  const Highway h = ring(10);
  const Catalog c = Catalog::zipf(10, 1.0);
  const int seeds = 1000;
  double sum = 0.0;
  int inside = 0;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(static_cast<std::uint64_t>(s) + 1000);
    const double n = static_cast<double>(spawn_vehicles(0.01, h, c, 25.0, 0.0, rng).size());
    sum += n;
    inside += std::fabs(n - 200.0) <= 3.0 * std::sqrt(200.0);
  }
  const double mean = sum / seeds;
  CHECK(std::fabs(mean - 200.0) <= 3.0 * std::sqrt(200.0 / seeds));
  CHECK(inside >= 0.99 * seeds);
}

TEST_CASE("spawned headways pass a KS test against the exponential") {
  const Highway h = ring(3000);  // 3e6 m of ring per direction
  const Catalog c = Catalog::zipf(10, 1.0);
  for (double lambda : {0.005, 0.01, 0.02}) {
    Rng rng(static_cast<std::uint64_t>(lambda * 1e6));
    const VehicleSet vs = spawn_vehicles(lambda, h, c, 25.0, 0.0, rng);
    std::vector<double> headways;
    double prev = 0.0;
    for (const Vehicle& v : vs) {
      if (v.direction != Direction::Forward) break;
      headways.push_back(v.position - prev);
      prev = v.position;
      if (headways.size() == 10000) break;
    }
    REQUIRE(headways.size() == 10000);
    const double d = oracle::ks_statistic(headways, [&](double x) { return 1.0 - std::exp(-lambda * x); });
    CHECK(d < oracle::ks_critical_001(headways.size()));
  }
}

TEST_CASE("traffic_multiplier") {
  const TrafficProfile def;
  CHECK(traffic_multiplier(def, 8 * 3600.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(traffic_multiplier(def, 18 * 3600.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Rush hour carries 90 times the late-night volume.
  CHECK(std::fabs(traffic_multiplier(def, 3 * 3600.0) - 1.0 / 90.0) < 1e-6);
  CHECK(traffic_multiplier(def, 8 * 3600.0) / traffic_multiplier(def, 3 * 3600.0) == doctest::Approx(90.0).epsilon(1e-4));

  TrafficProfile flat;
  flat.floor_fraction = 1.0;
  for (double t = 0; t < 86400; t += 1234.5) CHECK(traffic_multiplier(flat, t) == 1.0);

  for (double t = 0; t < 86400; t += 60) {
    const double m = traffic_multiplier(def, t);
    CHECK(m >= def.floor_fraction);
    CHECK(m <= 1.0);
  }
  // half maximum one half-width away from the peak
  const double half = traffic_multiplier(def, (8 + 0.75) * 3600.0);
  CHECK(half == doctest::Approx(def.floor_fraction + (1 - def.floor_fraction) * 0.5).epsilon(1e-9));
}

TEST_CASE("advance examples") {
  const Highway h = ring(10);
  VehicleSet one{at(9990.0, Direction::Forward)};
  advance(one, 1.0, h, 0.0);
  CHECK(one[0].position == doctest::Approx(15.0).epsilon(1e-12));

  VehicleSet loop{at(1234.5, Direction::Forward), at(7777.25, Direction::Backward)};
  advance(loop, h.length() / 25.0, h, 0.0);
  CHECK(loop[0].position == doctest::Approx(1234.5).epsilon(1e-12));
  CHECK(loop[1].position == doctest::Approx(7777.25).epsilon(1e-12));

  VehicleSet empty;
  advance(empty, 1.0, h, 0.0);
  CHECK(empty.empty());

  VehicleSet back{at(10.0, Direction::Backward)};
  advance(back, 1.0, h, 0.0);
  CHECK(back[0].position == doctest::Approx(9985.0).epsilon(1e-12));
}

TEST_CASE("advance stamps the cell entry time") {
  const Highway h = ring(10);
  VehicleSet vs{at(990.0, Direction::Forward), at(1005.0, Direction::Backward), at(500.0, Direction::Forward)};
  for (Vehicle& v : vs) v.entry_time = -7.0;
  advance(vs, 1.0, h, 100.0);
  CHECK(vs[0].entry_time == doctest::Approx(100.4));
  CHECK(vs[1].entry_time == doctest::Approx(100.2));
  CHECK(vs[2].entry_time == -7.0);
}

TEST_CASE("advance conserves vehicles and keeps positions on the ring") {
  const Highway h = ring(7);
  const Catalog c = Catalog::zipf(10, 1.0);
  Rng rng(5);
  VehicleSet vs = spawn_vehicles(0.02, h, c, 25.0, 0.0, rng);
  const std::size_t n = vs.size();
  for (int step = 0; step < 2000; ++step) {
    advance(vs, 0.5 + rng.uniform() * 3.0, h, step);
    REQUIRE(vs.size() == n);
    for (const Vehicle& v : vs) {
      REQUIRE(v.position >= 0.0);
      REQUIRE(v.position < h.length());
    }
  }
}

TEST_CASE("cell_index boundaries") {
  const Highway h = ring(10);
  CHECK(cell_index(0.0, h) == 0);
  CHECK(cell_index(999.99, h) == 0);
  CHECK(cell_index(1000.0, h) == 1);
  CHECK(cell_index(9999.999, h) == 9);
}

TEST_CASE("predict_next_cell examples") {
  const Highway h = ring(10);
  auto p = predict_next_cell(at(500.0, Direction::Forward), h);
  CHECK(p.next_station == 1);
  CHECK(p.eta == doctest::Approx(20.0));
  p = predict_next_cell(at(500.0, Direction::Backward), h);
  CHECK(p.next_station == 9);
  CHECK(p.eta == doctest::Approx(20.0));
  p = predict_next_cell(at(3000.0, Direction::Forward), h);
  CHECK(p.next_station == 4);
  CHECK(p.eta == doctest::Approx(1000.0 / 25.0));
  p = predict_next_cell(at(9500.0, Direction::Forward), h);
  CHECK(p.next_station == 0);
}

TEST_CASE("predict_next_cell eta lands exactly on the boundary") {
  const Highway h = ring(10);
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    const Direction dir = rng.uniform() < 0.5 ? Direction::Forward : Direction::Backward;
    Vehicle v = at(rng.uniform(0.0, h.length()), dir, rng.uniform(5.0, 40.0));
    const HandoverPrediction p = predict_next_cell(v, h);
    VehicleSet moved{v};
    if (p.eta > 0.0) advance(moved, p.eta, h, 0.0);
    const double boundary = dir == Direction::Forward
                                ? static_cast<double>(p.next_station) * h.cell_length()
                                : static_cast<double>(p.next_station + 1) * h.cell_length();
    REQUIRE(ring_distance(moved[0].position, std::fmod(boundary, h.length()), h.length()) < 1e-9);
  }
}
