#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cohengine/model.hpp"
#include "cohengine/steady.hpp"

namespace cohengine {

using Matrix16c = Eigen::Matrix<complex, 16, 16>;
using Matrix8c = Eigen::Matrix<complex, 8, 8>;
using Matrix4d = Eigen::Matrix<double, 4, 4>;

/// Superoperator on vec(rho), vec index = 4 * row + col.
struct Liouvillian {
  Matrix16c entries = Matrix16c::Zero();
};

inline int vec_index(int row, int col) { return 4 * row + col; }

Liouvillian build_liouvillian(const MachineConfig& config, const TapeQubitState& tape);

/// Local bath dissipators only (no tape).
Liouvillian build_bath_liouvillian(const MachineConfig& config);

/// Restriction of L to (rho00, rho01, rho10, rho11, rho_v, rho_v*).
DynamicalMatrix project_to_dynamical(const Liouvillian& l);

Eigen::Matrix<complex, 16, 1> vectorize(const Matrix4c& rho);
Matrix4c unvectorize(const Eigen::Matrix<complex, 16, 1>& v);

double trace_distance(const Matrix4c& a, const Matrix4c& b);

/// Max row sum of |L_ij|.
double infinity_norm(const Liouvillian& l);

struct IntegrationOptions {
  double dt = 0.0;                  // 0 selects 0.1 / ||L||_inf
  double tol = 1e-12;
  int probe_steps = 64;             // steps per convergence probe window
  int jump_steps = 4096;            // steps advanced between probes
  std::int64_t max_steps = 2'000'000'000;
};

/// Fixed-step RK4 until ||rho(t + w) - rho(t)||_1 < tol * w over a probe
/// window w. Throws Error(SteadyStateTimeout).
Matrix4c integrate_to_steady(const Liouvillian& l, const Matrix4c& initial,
                             const IntegrationOptions& options = {});

/// exp(-i phi (A (x) s+ + A^dag (x) s-)), A = |10><01|, tape index last.
Matrix8c collision_unitary(double phi);

/// Bare Hamiltonian H_m (x) 1 + 1 (x) H_q on the 8-dimensional space.
Matrix8c bare_hamiltonian(const MachineConfig& config);

struct TrajectoryResult {
  Matrix4c mean_state = Matrix4c::Zero();
  Matrix4d stderr_re = Matrix4d::Zero();
  Matrix4d stderr_im = Matrix4d::Zero();
  std::int64_t n_collisions = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

inline constexpr int kTrajectoryStreams = 4;
inline constexpr int kBatchesPerStream = 5;

/// Poisson collisions with fresh tape qubits and exact bath propagation
/// between them. Throws Error(InvalidConfig) for tau <= 0 or too few collisions.
TrajectoryResult simulate_collisions(const MachineConfig& config, const TapeQubitState& tape,
                                     double tau, std::int64_t n_collisions, std::uint64_t seed);

/// Applies the exact bath channel exp(t L_bath) to rho.
Matrix4c propagate_baths(const MachineConfig& config, const Matrix4c& rho, double t);

double von_neumann_entropy(const TapeQubitState& tape);

/// r (S(apply_map(tape)) - S(tape)) from exact 2x2 eigenvalues.
double exact_map_entropy_delta(const SteadyState& pi, const TapeQubitState& tape, double phi,
                               double r);

/// r (W(apply_map(tape)) - W(tape)).
double exact_map_ergotropy_delta(const SteadyState& pi, const TapeQubitState& tape, double phi,
                                 double r, double gap);

}  // namespace cohengine
