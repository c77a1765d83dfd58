#pragma once

#include <stdexcept>
#include <string>

namespace rmz {

// Validation failures (bad inputs, violated preconditions) -> CLI exit 2.
// Keep std::invalid_argument so callers can catch the standard type.
using ValidationError = std::invalid_argument;

// Numerical failures (tracking, integration, search) -> CLI exit 3.
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rmz
