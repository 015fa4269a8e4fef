#pragma once

#include <stdexcept>
#include <string>

namespace cqpolar {

// Bad user-supplied parameter (CLI exit code 1).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size limit (N_exact, K_exact, ...) would be exceeded (exit code 2).
class GuardViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal numerical inconsistency: non-PSD state, zero-norm branch, solver failure (exit code 3).
class NumericAnomaly : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cqpolar
