#pragma once

#include <cstddef>
#include <vector>

#include "scsim/catalog.hpp"
#include "scsim/rng.hpp"

namespace scsim {

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerHour = 3600.0;

/// Ring highway covered by equally spaced cells, one station per cell.
struct Highway {
  std::size_t n_stations = 10;
  double coverage_radius = 500.0;  // meters

  double cell_length() const { return 2.0 * coverage_radius; }
  double length() const { return static_cast<double>(n_stations) * cell_length(); }
};

enum class Direction : int { Forward = 1, Backward = -1 };

struct Vehicle {
  double position = 0.0;  // meters, [0, length)
  Direction direction = Direction::Forward;
  double speed = 25.0;  // m/s
  ContentId active_content = 1;
  /// Time at which the vehicle entered its current cell.
  double entry_time = 0.0;
};

using VehicleSet = std::vector<Vehicle>;

/// Poisson-distributed vehicles on both carriageways.
///
/// Per direction, headways are drawn i.i.d. Exponential(lambda_v) from the
/// ring origin until the ring is filled. All forward vehicles are drawn
/// before backward ones; each vehicle's content is drawn right after its
/// headway. `now` is the spawn time and `entry_time` is back-dated to the
/// moment the vehicle would have crossed into its current cell.
VehicleSet spawn_vehicles(double lambda_v, const Highway& highway, const Catalog& catalog,
                          double speed, double now, Rng& rng);

/// Rush-hour shape of the daily traffic volume.
///
/// multiplier(t) = floor + (1 - floor) * max(b1(t), b2(t)), with Gaussian bumps
/// on the circular time-of-day axis. `peak_width_hours` is the full width at
/// half maximum of each bump.
struct TrafficProfile {
  double floor_fraction = 1.0 / 90.0;
  double peak1_hour = 8.0;
  double peak2_hour = 18.0;
  double peak_width_hours = 1.5;
};

double traffic_multiplier(const TrafficProfile& profile, double t_of_day);

/// Moves every vehicle by direction * speed * dt around the ring. `now` is the
/// time at the start of the move; vehicles crossing a cell boundary get the
/// entry_time of their last crossing.
void advance(VehicleSet& vehicles, double dt, const Highway& highway, double now);

/// Index of the half-open cell [k * cell_length, (k + 1) * cell_length).
std::size_t cell_index(double position, const Highway& highway);

struct HandoverPrediction {
  std::size_t next_station = 0;
  double eta = 0.0;  // seconds until the boundary is reached
};

/// Next cell in the direction of travel and the exact time to reach it.
///
/// A forward vehicle sitting on a boundary needs a full cell traversal; a
/// backward vehicle on a boundary leaves at once (eta 0).
HandoverPrediction predict_next_cell(const Vehicle& vehicle, const Highway& highway);

}  // namespace scsim
