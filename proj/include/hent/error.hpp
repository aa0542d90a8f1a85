#pragma once

#include <stdexcept>
#include <string>

namespace hent {

/// Bad input: violated preconditions, malformed configuration.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (rank loss, non-convergence, sum rule).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hent
