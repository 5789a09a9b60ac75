#include "scsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "scsim/error.hpp"

namespace scsim {

namespace {

struct MalformedValue : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

double to_double(std::string_view v) {
  const std::string l = lower(v);
  if (l == "inf" || l == "unbounded" || l == "infinity") return kUnbounded;
  // a/b fractions such as 1/90
  if (const auto slash = v.find('/'); slash != std::string_view::npos) {
    const double num = to_double(trim(v.substr(0, slash)));
    const double den = to_double(trim(v.substr(slash + 1)));
    if (den == 0.0) throw MalformedValue("division by zero");
    return num / den;
  }
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) throw MalformedValue("expected a number");
  return out;
}

std::uint64_t to_uint(std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw MalformedValue("expected a non-negative integer");
  return out;
}

bool to_bool(std::string_view v) {
  const std::string l = lower(v);
  if (l == "true" || l == "on" || l == "yes" || l == "1") return true;
  if (l == "false" || l == "off" || l == "no" || l == "0") return false;
  throw MalformedValue("expected true or false");
}

std::vector<std::size_t> to_size_list(std::string_view v) {
  std::vector<std::size_t> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    out.push_back(static_cast<std::size_t>(to_uint(trim(v.substr(0, comma)))));
    if (comma == std::string_view::npos) break;
    v = v.substr(comma + 1);
  }
  if (out.empty()) throw MalformedValue("expected a comma-separated list of integers");
  return out;
}

using Setter = std::function<void(Scenario&, std::string_view)>;

struct KeyDef {
  ConfigKey doc;
  Setter set;
};

Setter set_double(double Scenario::*field) {
  return [field](Scenario& s, std::string_view v) { s.*field = to_double(v); };
}

template <class F>
Setter set_with(F f) {
  return Setter(f);
}

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> table = {
      {{"highway", "n_stations", "10", "number of cells on the ring"},
       set_with([](Scenario& s, std::string_view v) { s.highway.n_stations = to_uint(v); })},
      {{"highway", "coverage_radius", "500", "station coverage radius in meters; cells are twice as long"},
       set_with([](Scenario& s, std::string_view v) { s.highway.coverage_radius = to_double(v); })},
      {{"highway", "speed", "25", "vehicle speed in m/s"}, set_double(&Scenario::speed)},

      {{"catalog", "n_files", "1000", "library size"},
       set_with([](Scenario& s, std::string_view v) { s.n_files = to_uint(v); })},
      {{"catalog", "gamma", "1.0", "Zipf exponent"}, set_double(&Scenario::gamma)},

      {{"traffic", "base_density", "0.01", "vehicles per meter per direction at peak"},
       set_double(&Scenario::base_density)},
      {{"traffic", "profile", "daily", "daily (two rush-hour peaks) or static"},
       set_with([](Scenario& s, std::string_view v) {
         const std::string l = lower(v);
         if (l == "daily") s.daily_profile = true;
         else if (l == "static") s.daily_profile = false;
         else throw MalformedValue("expected daily or static");
       })},
      {{"traffic", "floor_fraction", "1/90", "late-night volume relative to the peak"},
       set_with([](Scenario& s, std::string_view v) { s.traffic.floor_fraction = to_double(v); })},
      {{"traffic", "peak1_hour", "8", "morning rush hour"},
       set_with([](Scenario& s, std::string_view v) { s.traffic.peak1_hour = to_double(v); })},
      {{"traffic", "peak2_hour", "18", "evening rush hour"},
       set_with([](Scenario& s, std::string_view v) { s.traffic.peak2_hour = to_double(v); })},
      {{"traffic", "peak_width", "1.5", "full width at half maximum of each peak, hours"},
       set_with([](Scenario& s, std::string_view v) { s.traffic.peak_width_hours = to_double(v); })},

      {{"energy", "profile", "solar", "solar (sine between sunrise and sunset), constant or zero"},
       set_with([](Scenario& s, std::string_view v) {
         const std::string l = lower(v);
         if (l == "solar" || l == "solar-sine") s.energy.kind = EnergyKind::SolarSine;
         else if (l == "constant") s.energy.kind = EnergyKind::Constant;
         else if (l == "zero") s.energy.kind = EnergyKind::Zero;
         else throw MalformedValue("expected solar, constant or zero");
       })},
      {{"energy", "peak_rate", "1.0", "peak harvest power, in units of full-load station power"},
       set_with([](Scenario& s, std::string_view v) { s.energy.peak_rate = to_double(v); })},
      {{"energy", "sunrise_hour", "6", "start of solar harvest"},
       set_with([](Scenario& s, std::string_view v) { s.energy.sunrise_hour = to_double(v); })},
      {{"energy", "sunset_hour", "18", "end of solar harvest"},
       set_with([](Scenario& s, std::string_view v) { s.energy.sunset_hour = to_double(v); })},
      {{"energy", "battery_capacity", "inf", "battery size in power-seconds, or inf"},
       set_double(&Scenario::battery_capacity)},
      {{"energy", "initial_battery", "0", "battery level at time 0"}, set_double(&Scenario::initial_battery)},

      {{"station", "cache_capacity", "100", "cache slots (one file each)"},
       set_with([](Scenario& s, std::string_view v) { s.cache_capacity = to_uint(v); })},
      {{"station", "split_ratio", "0.8", "fraction of slots for the popular partition"},
       set_double(&Scenario::split_ratio)},
      {{"station", "cache_prewarm", "true", "start with the popular partition filled"},
       set_with([](Scenario& s, std::string_view v) { s.cache_prewarm = to_bool(v); })},
      {{"station", "p_const", "0.5", "load-independent power"},
       set_with([](Scenario& s, std::string_view v) { s.power.p_const = to_double(v); })},
      {{"station", "p_per_user", "0.05", "RF power per served user"},
       set_with([](Scenario& s, std::string_view v) { s.power.p_per_user = to_double(v); })},
      {{"station", "p_sleep", "0.01", "sleep-mode power"},
       set_with([](Scenario& s, std::string_view v) { s.power.p_sleep = to_double(v); })},
      {{"station", "max_users", "10", "simultaneous users per station"},
       set_with([](Scenario& s, std::string_view v) { s.power.max_users = to_uint(v); })},
      {{"station", "rate_per_user", "10", "per-user rate in Mbps"},
       set_with([](Scenario& s, std::string_view v) { s.power.rate_per_user_mbps = to_double(v); })},

      {{"policy", "kind", "sustainable", "sustainable or greedy"},
       set_with([](Scenario& s, std::string_view v) {
         const std::string l = lower(v);
         if (l == "sustainable") s.policy = PolicyKind::Sustainable;
         else if (l == "greedy") s.policy = PolicyKind::Greedy;
         else throw MalformedValue("expected sustainable or greedy");
       })},
      {{"policy", "greedy_partial", "false", "let greedy serve a subset when short of power"},
       set_with([](Scenario& s, std::string_view v) { s.greedy_partial = to_bool(v); })},
      {{"policy", "backhaul_files_per_epoch", "50", "nominal backhaul budget per station and epoch"},
       set_with([](Scenario& s, std::string_view v) { s.backhaul.files_per_epoch = to_double(v); })},
      {{"policy", "backhaul_factor_min", "0.5", "lower end of the per-epoch budget factor"},
       set_with([](Scenario& s, std::string_view v) { s.backhaul.factor_min = to_double(v); })},
      {{"policy", "backhaul_factor_max", "1.0", "upper end of the per-epoch budget factor"},
       set_with([](Scenario& s, std::string_view v) { s.backhaul.factor_max = to_double(v); })},
      {{"policy", "low_watermark", "0.1", "defer threshold, fraction of one full-power hour"},
       set_with([](Scenario& s, std::string_view v) { s.watermarks.low = to_double(v) * kSecondsPerHour; })},
      {{"policy", "high_watermark", "0.9", "push threshold, fraction of one full-power hour"},
       set_with([](Scenario& s, std::string_view v) { s.watermarks.high = to_double(v) * kSecondsPerHour; })},

      {{"engine", "delta_large", "900", "large timescale in seconds"}, set_double(&Scenario::delta_large)},
      {{"engine", "delta_small", "1", "small timescale in seconds"}, set_double(&Scenario::delta_small)},
      {{"engine", "duration", "86400", "simulated seconds"}, set_double(&Scenario::duration)},
      {{"engine", "seed", "42", "rng seed"}, set_with([](Scenario& s, std::string_view v) { s.seed = to_uint(v); })},
      {{"engine", "sweep_cache_sizes", "0,5,10,20,31,50,75,100,200,400,700,1000", "cache sizes for sweep-cache"},
       set_with([](Scenario& s, std::string_view v) { s.sweep_cache_sizes = to_size_list(v); })},
  };
  return table;
}

const KeyDef* find_key(std::string_view section, std::string_view name) {
  for (const KeyDef& k : key_table())
    if (k.doc.section == section && k.doc.name == name) return &k;
  return nullptr;
}

bool known_section(std::string_view section) {
  for (const KeyDef& k : key_table())
    if (k.doc.section == section) return true;
  return false;
}

void apply(Scenario& s, std::string_view section, std::string_view name, std::string_view value,
           const std::string& where) {
  const KeyDef* key = find_key(section, name);
  if (!key)
    throw ConfigError(where + "unknown key '" + std::string(name) + "' in section [" + std::string(section) + "]");
  try {
    key->set(s, value);
  } catch (const MalformedValue& e) {
    throw ConfigError(where + "malformed value '" + std::string(value) + "' for " + std::string(section) + "." +
                      std::string(name) + ": " + e.what());
  }
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    for (const KeyDef& k : key_table()) out.push_back(k.doc);
    return out;
  }();
  return keys;
}

Scenario parse_config(std::string_view text, std::span<const std::string> overrides) {
  Scenario s;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_section(section)) throw ConfigError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(where + "key '" + std::string(key) + "' appears before any [section]");
    apply(s, section, key, value, where);
  }

  for (const std::string& ov : overrides) {
    const std::string where = "override '" + ov + "': ";
    const auto eq = ov.find('=');
    const std::string_view lhs = trim(std::string_view(ov).substr(0, eq));
    const auto dot = lhs.find('.');
    if (eq == std::string::npos || dot == std::string_view::npos)
      throw ConfigError(where + "expected section.key=value");
    const std::string_view sec = lhs.substr(0, dot);
    if (!known_section(sec)) throw ConfigError(where + "unknown section [" + std::string(sec) + "]");
    apply(s, sec, lhs.substr(dot + 1), trim(std::string_view(ov).substr(eq + 1)), where);
  }

  s.validate();
  return s;
}

Scenario load_config(const std::string& path, std::span<const std::string> overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

}  // namespace scsim
