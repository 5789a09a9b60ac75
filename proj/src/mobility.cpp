#include "scsim/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scsim {

namespace {

double wrap(double position, double length) {
  double p = std::fmod(position, length);
  if (p < 0.0) p += length;
  if (p >= length) p = 0.0;
  return p;
}

// Distance travelled since the vehicle crossed into its current cell.
double distance_into_cell(const Vehicle& v, const Highway& highway) {
  const double cl = highway.cell_length();
  const double lower = static_cast<double>(cell_index(v.position, highway)) * cl;
  return v.direction == Direction::Forward ? v.position - lower : lower + cl - v.position;
}

}  // namespace

VehicleSet spawn_vehicles(double lambda_v, const Highway& highway, const Catalog& catalog,
                          double speed, double now, Rng& rng) {
  VehicleSet out;
  if (!(lambda_v > 0.0)) return out;
  const double length = highway.length();
  out.reserve(static_cast<std::size_t>(2.0 * lambda_v * length * 1.2) + 8);
  for (Direction dir : {Direction::Forward, Direction::Backward}) {
    double x = rng.exponential(lambda_v);
    while (x < length) {
      Vehicle v;
      v.position = x;
      v.direction = dir;
      v.speed = speed;
      v.active_content = sample_request(catalog, rng);
      v.entry_time = now - distance_into_cell(v, highway) / speed;
      out.push_back(v);
      x += rng.exponential(lambda_v);
    }
  }
  return out;
}

double traffic_multiplier(const TrafficProfile& profile, double t_of_day) {
  const double floor = profile.floor_fraction;
  if (floor >= 1.0) return 1.0;
  const double sigma = profile.peak_width_hours * kSecondsPerHour / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  auto bump = [&](double peak_hour) {
    double d = std::fabs(t_of_day - peak_hour * kSecondsPerHour);
    d = std::min(d, kSecondsPerDay - d);
    return std::exp(-0.5 * (d / sigma) * (d / sigma));
  };
  const double shape = std::max(bump(profile.peak1_hour), bump(profile.peak2_hour));
  return std::clamp(floor + (1.0 - floor) * shape, floor, 1.0);
}

void advance(VehicleSet& vehicles, double dt, const Highway& highway, double now) {
  const double length = highway.length();
  for (Vehicle& v : vehicles) {
    const double travelled = v.speed * dt;
    v.position = wrap(v.position + static_cast<int>(v.direction) * travelled, length);
    const double since_entry = distance_into_cell(v, highway);
    if (since_entry < travelled) v.entry_time = now + dt - since_entry / v.speed;
  }
}

std::size_t cell_index(double position, const Highway& highway) {
  const auto k = static_cast<std::size_t>(std::floor(position / highway.cell_length()));
  return std::min(k, highway.n_stations - 1);
}

HandoverPrediction predict_next_cell(const Vehicle& vehicle, const Highway& highway) {
  const std::size_t n = highway.n_stations;
  const std::size_t k = cell_index(vehicle.position, highway);
  const double cl = highway.cell_length();
  const double lower = static_cast<double>(k) * cl;
  if (vehicle.direction == Direction::Forward)
    return {(k + 1) % n, (lower + cl - vehicle.position) / vehicle.speed};
  return {(k + n - 1) % n, (vehicle.position - lower) / vehicle.speed};
}

}  // namespace scsim
