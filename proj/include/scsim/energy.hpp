#pragma once

#include <limits>

namespace scsim {

// Power is normalized so that a fully loaded station draws 1.0; energy is
// power * seconds.

enum class EnergyKind { SolarSine, Constant, Zero };

struct EnergyProfile {
  EnergyKind kind = EnergyKind::SolarSine;
  double peak_rate = 1.0;
  double sunrise_hour = 6.0;
  double sunset_hour = 18.0;
};

/// Harvest power at time of day `t` (seconds). Throws std::invalid_argument
/// for a solar profile with sunset <= sunrise.
double harvest_rate(const EnergyProfile& profile, double t_of_day);

/// Mean of harvest_rate sampled at `start`, `start + step`, ... over `span`
/// seconds. This is exactly the energy the engine will harvest in that span,
/// divided by its length.
double mean_harvest(const EnergyProfile& profile, double start, double span, double step);

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Energy store with a conservation ledger.
///
/// harvested - overflow - consumed == level - initial_level holds after every
/// step; `deficit` counts requested-but-undelivered energy and is outside the
/// identity.
struct Battery {
  double level = 0.0;
  double capacity = kUnbounded;
  double initial_level = 0.0;
  double cum_harvested = 0.0;
  double cum_consumed = 0.0;
  double cum_overflow = 0.0;
  double cum_deficit = 0.0;

  static Battery with_level(double level, double capacity = kUnbounded) {
    Battery b;
    b.level = b.initial_level = level;
    b.capacity = capacity;
    return b;
  }

  /// Left side minus right side of the ledger identity.
  double ledger_residual() const {
    return (cum_harvested - cum_overflow - cum_consumed) - (level - initial_level);
  }
};

struct BatteryStepResult {
  double delivered_power = 0.0;
  double overflow_energy = 0.0;
  double deficit_energy = 0.0;
};

/// Harvest-then-consume update over `dt` seconds. Shortfall is reported via
/// the ledger, never thrown.
BatteryStepResult battery_step(Battery& battery, double harvest, double draw_requested, double dt);

}  // namespace scsim
