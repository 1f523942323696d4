#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohengine {

enum class ErrorKind {
  InvalidConfig,
  UnboundedTemperature,
  DegenerateSteadyState,
  DegenerateSpectrum,
  PureStateBoundary,
  SteadyStateTimeout,
  TargetInfeasible,
  UnclassifiedPoint,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when the dynamical matrix does not have a one-dimensional kernel.
class DegenerateSteadyStateError : public Error {
 public:
  DegenerateSteadyStateError(double smallest, double second_smallest);

  double smallest() const noexcept { return smallest_; }
  double second_smallest() const noexcept { return second_smallest_; }

 private:
  double smallest_;
  double second_smallest_;
};

}  // namespace cohengine
