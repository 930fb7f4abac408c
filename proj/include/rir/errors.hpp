#pragma once

#include <stdexcept>
#include <string>

namespace rir {

// Internal numerical failure (non-finite output, singular solve); the CLI
// maps this to exit code 2, validation errors to exit code 1.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace rir
