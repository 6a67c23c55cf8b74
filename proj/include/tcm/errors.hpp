#pragma once

#include <stdexcept>
#include <string>

namespace tcm {

// Invalid user input or run configuration. Maps to CLI exit code 1.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configuration that is well formed but not supported by the requested
// formula set, e.g. the multimode closed form with a single mode.
class UnsupportedConfiguration : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

// Tolerance violations signalling a numerical problem. Maps to exit code 2.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace tcm
