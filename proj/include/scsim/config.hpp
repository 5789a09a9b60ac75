#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scsim/engine.hpp"

namespace scsim {

/// A documented configuration key.
struct ConfigKey {
  std::string section;
  std::string name;
  std::string default_value;
  std::string help;
};

/// Every accepted key, in section order.
const std::vector<ConfigKey>& config_keys();

/// Parses `key = value` text with `[section]` headers and `#` comments, then
/// applies `overrides` of the form `section.key=value` on top.
///
/// Omitted keys keep their defaults. Throws ConfigError for unknown sections
/// or keys, malformed values (with the line number) and invariant violations.
Scenario parse_config(std::string_view text, std::span<const std::string> overrides = {});

/// Reads `path` and forwards to parse_config. Throws ConfigError if the file
/// cannot be read.
Scenario load_config(const std::string& path, std::span<const std::string> overrides = {});

}  // namespace scsim
