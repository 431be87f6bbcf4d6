#pragma once

#include <stdexcept>
#include <string>

namespace hhg {

// Bad configuration value, unknown key, or invalid command usage.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure during a run (instability, non-convergence).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hhg
