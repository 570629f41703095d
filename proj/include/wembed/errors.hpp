#pragma once

#include <stdexcept>

namespace wembed {

// Malformed input data (edge lists, embedding files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or contract violation detected up front.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric failure during optimization (non-finite values, failed calibration).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wembed
