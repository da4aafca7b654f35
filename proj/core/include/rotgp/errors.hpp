#pragma once

#include <stdexcept>
#include <string>

namespace rotgp {

/// Invalid parameters, grids or configuration files.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A frame change was requested with a carrier that does not fit the box.
class ResonanceError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Initial data that is not admissible (negative density, non-decaying phase).
class DataError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or mismatched binary snapshot.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time integrator produced a non-finite state. Carries the last time at
/// which the state was still finite.
class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace rotgp
