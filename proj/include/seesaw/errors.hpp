#pragma once

#include <stdexcept>
#include <string>

namespace seesaw {

/// Invalid parameters or configuration. CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Config text could not be parsed.
class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& msg, int line)
      : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Argument outside a valid domain (dispersive map range, empty grid, ...).
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration or fit failure. CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg, double time = -1.0)
      : std::runtime_error(msg), time_(time) {}
  /// Simulation time of the failure, or -1 when not applicable.
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace seesaw
