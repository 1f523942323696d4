#pragma once

#include <Eigen/Dense>

#include "cohengine/model.hpp"

namespace cohengine {

using Matrix6c = Eigen::Matrix<complex, 6, 6>;
using Vector6c = Eigen::Matrix<complex, 6, 1>;
using Matrix4c = Eigen::Matrix<complex, 4, 4>;

/// Indices into P = (rho00, rho01, rho10, rho11, rho_v, rho_v*).
/// The first label is the cold qubit; rho_v = <10|rho|01>.
enum : int { kP00 = 0, kP01 = 1, kP10 = 2, kP11 = 3, kPv = 4, kPvc = 5 };

/// Machine basis index of |cold hot>.
constexpr int machine_index(int cold, int hot) { return 2 * cold + hot; }

struct DynamicalMatrix {
  Matrix6c entries = Matrix6c::Zero();
};

struct SteadyState {
  double pi00 = 0.25;
  double pi01 = 0.25;
  double pi10 = 0.25;
  double pi11 = 0.25;
  complex pi_c{0.0, 0.0};

  /// Full 4x4 machine density operator in the |cold hot> basis.
  Matrix4c density_matrix() const;
};

DynamicalMatrix build_dynamical_matrix(const MachineConfig& config, const TapeQubitState& tape);

/// Unique normalized kernel of M. Throws DegenerateSteadyStateError.
SteadyState solve_steady_state(const DynamicalMatrix& m);

/// Convenience: build_dynamical_matrix followed by solve_steady_state.
SteadyState steady_state(const MachineConfig& config, const TapeQubitState& tape);

/// Decoupled thermal state tau_c (x) tau_h, the r -> 0 limit.
SteadyState local_gibbs_state(const MachineConfig& config);

}  // namespace cohengine
