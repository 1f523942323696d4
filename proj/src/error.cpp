#include "cohengine/error.hpp"

#include <sstream>

namespace cohengine {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig: return "invalid_config";
    case ErrorKind::UnboundedTemperature: return "unbounded_temperature";
    case ErrorKind::DegenerateSteadyState: return "degenerate_steady_state";
    case ErrorKind::DegenerateSpectrum: return "degenerate_spectrum";
    case ErrorKind::PureStateBoundary: return "pure_state_boundary";
    case ErrorKind::SteadyStateTimeout: return "steady_state_timeout";
    case ErrorKind::TargetInfeasible: return "infeasible";
    case ErrorKind::UnclassifiedPoint: return "unclassified_point";
  }
  return "unknown";
}

namespace {

std::string degenerate_message(double s0, double s1) {
  std::ostringstream os;
  os << "dynamical matrix kernel is not one-dimensional (smallest singular values "
     << s0 << ", " << s1 << ")";
  return os.str();
}

}  // namespace

DegenerateSteadyStateError::DegenerateSteadyStateError(double smallest,
                                                       double second_smallest)
    : Error(ErrorKind::DegenerateSteadyState,
            degenerate_message(smallest, second_smallest)),
      smallest_(smallest),
      second_smallest_(second_smallest) {}

}  // namespace cohengine
