#pragma once

#include <stdexcept>
#include <string>

namespace isac {

/// Invalid configuration or out-of-domain argument. CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A signal-processing stage could not produce an estimate (no peak,
/// rank-deficient correlation, ...). CLI maps this to exit code 3.
class EstimationError : public std::runtime_error {
 public:
  explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isac
