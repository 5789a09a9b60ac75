#pragma once

#include <stdexcept>
#include <string>

namespace scsim {

/// Raised for malformed or inconsistent scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a command cannot complete (I/O, output directory, ...).
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scsim
