#pragma once

#include <stdexcept>
#include <string>

namespace qsom {

/// Bad data handed to an operation (dimension mismatch, empty input, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke an API contract (stale trace, out-of-range agent, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Unusable configuration: bad scenario tokens, malformed profile files, ...
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A failure inside the simulation loop, annotated with the step it hit.
class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsom
