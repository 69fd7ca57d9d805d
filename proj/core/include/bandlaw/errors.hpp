#pragma once

#include <stdexcept>
#include <string>

namespace bandlaw {

// Iterative numeric routine failed (non-convergence, non-finite input).
// The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid experiment configuration; the message carries the field path.
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bandlaw
