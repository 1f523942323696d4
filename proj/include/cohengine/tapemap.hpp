#pragma once

#include <Eigen/Dense>

#include "cohengine/model.hpp"
#include "cohengine/steady.hpp"

namespace cohengine {

using Matrix2c = Eigen::Matrix<complex, 2, 2>;

/// Second-order eigenvalue shifts lambda_k^(2) of the map output, in units of phi^2.
struct EigenShifts {
  double minus = 0.0;
  double plus = 0.0;
};

struct MapOutput {
  TapeQubitState state;
  EigenShifts shifts;
};

/// rho_q as a 2x2 matrix [[p0, c], [conj(c), p1]].
Matrix2c tape_density(const TapeQubitState& tape);

/// Reads (p1, c) back from a 2x2 density matrix; no positivity check.
TapeQubitState tape_from_density(const Matrix2c& rho);

/// Outgoing tape qubit after one collision with the machine in state pi:
/// rho - i phi [X, rho] + phi^2 pi01 D[s+] rho + phi^2 pi10 D[s-] rho,
/// X = conj(pi_c) s+ + pi_c s-. Trace is exactly preserved.
TapeQubitState apply_map(const SteadyState& pi, const TapeQubitState& tape, double phi);

Matrix2c apply_map_matrix(const SteadyState& pi, const Matrix2c& rho, double phi);

/// Throws Error(DegenerateSpectrum) when lambda_+ - lambda_- < 1e-9.
EigenShifts second_order_shifts(const SteadyState& pi, const TapeQubitState& tape);

MapOutput map_with_shifts(const SteadyState& pi, const TapeQubitState& tape, double phi);

/// Eigenvectors of rho_q as columns (minus, plus). |plus> has a real,
/// nonnegative component on |1> when p1 >= p0, on |0> otherwise.
Matrix2c tape_eigenvectors(const TapeQubitState& tape);

}  // namespace cohengine
