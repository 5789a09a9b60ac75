#include "scsim/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scsim/mobility.hpp"

namespace scsim {

double harvest_rate(const EnergyProfile& profile, double t_of_day) {
  switch (profile.kind) {
    case EnergyKind::Zero:
      return 0.0;
    case EnergyKind::Constant:
      return profile.peak_rate;
    case EnergyKind::SolarSine:
      break;
  }
  if (!(profile.sunset_hour > profile.sunrise_hour))
    throw std::invalid_argument("energy: sunset must be after sunrise");
  const double rise = profile.sunrise_hour * kSecondsPerHour;
  const double set = profile.sunset_hour * kSecondsPerHour;
  if (t_of_day < rise || t_of_day > set) return 0.0;
  const double s = std::sin(std::numbers::pi * (t_of_day - rise) / (set - rise));
  return profile.peak_rate * std::max(0.0, s);
}

double mean_harvest(const EnergyProfile& profile, double start, double span, double step) {
  const auto n = static_cast<long>(std::llround(span / step));
  if (n <= 0) return 0.0;
  double total = 0.0;
  for (long i = 0; i < n; ++i)
    total += harvest_rate(profile, std::fmod(start + static_cast<double>(i) * step, kSecondsPerDay));
  return total / static_cast<double>(n);
}

BatteryStepResult battery_step(Battery& battery, double harvest, double draw_requested, double dt) {
  const double harvested = harvest * dt;
  const double requested = draw_requested * dt;
  const double available = battery.level + harvested;
  const double delivered = std::min(requested, available);
  const double remaining = available - delivered;
  const double overflow = std::max(0.0, remaining - battery.capacity);
  const double deficit = requested - delivered;

  battery.level = overflow > 0.0 ? battery.capacity : remaining;
  battery.cum_harvested += harvested;
  battery.cum_consumed += delivered;
  battery.cum_overflow += overflow;
  battery.cum_deficit += deficit;
  return {delivered / dt, overflow, deficit};
}

}  // namespace scsim
