#include "cohengine/tapemap.hpp"

#include <cmath>

#include "cohengine/error.hpp"

namespace cohengine {

namespace {

Matrix2c sigma_plus() {
  Matrix2c s = Matrix2c::Zero();
  s(1, 0) = 1.0;  // |1><0|
  return s;
}

Matrix2c sigma_minus() {
  Matrix2c s = Matrix2c::Zero();
  s(0, 1) = 1.0;  // |0><1|
  return s;
}

Matrix2c dissipator(const Matrix2c& l, const Matrix2c& rho) {
  const Matrix2c ld = l.adjoint();
  const Matrix2c ldl = ld * l;
  return l * rho * ld - 0.5 * (ldl * rho + rho * ldl);
}

Matrix2c drive(const SteadyState& pi) {
  return std::conj(pi.pi_c) * sigma_plus() + pi.pi_c * sigma_minus();
}

}  // namespace

Matrix2c tape_density(const TapeQubitState& tape) {
  Matrix2c rho;
  rho << tape.p0(), tape.c, std::conj(tape.c), tape.p1;
  return rho;
}

TapeQubitState tape_from_density(const Matrix2c& rho) {
  const double tr = rho(0, 0).real() + rho(1, 1).real();
  return TapeQubitState{rho(1, 1).real() / tr, rho(0, 1) / tr};
}

Matrix2c apply_map_matrix(const SteadyState& pi, const Matrix2c& rho, double phi) {
  const complex i{0.0, 1.0};
  const Matrix2c x = drive(pi);
  return rho - i * phi * (x * rho - rho * x) +
         phi * phi * (pi.pi01 * dissipator(sigma_plus(), rho) +
                      pi.pi10 * dissipator(sigma_minus(), rho));
}

TapeQubitState apply_map(const SteadyState& pi, const TapeQubitState& tape, double phi) {
  const Matrix2c out = apply_map_matrix(pi, tape_density(tape), phi);
  // Every term except rho itself is traceless, so p0 + p1 = 1 holds by construction.
  return TapeQubitState{out(1, 1).real(), out(0, 1)};
}

Matrix2c tape_eigenvectors(const TapeQubitState& tape) {
  const QubitSpectrum spec = qubit_spectrum(tape);
  const double p0 = tape.p0();
  const double p1 = tape.p1;
  Eigen::Matrix<complex, 2, 1> plus;
  if (p1 >= p0) {
    plus << tape.c, spec.plus - p0;
  } else {
    plus << spec.plus - p1, std::conj(tape.c);
  }
  const double n = plus.norm();
  if (n > 0.0) {
    plus /= n;
  } else {
    plus << 0.0, 1.0;
  }
  Matrix2c v;
  v(0, 1) = plus(0);
  v(1, 1) = plus(1);
  v(0, 0) = -std::conj(plus(1));
  v(1, 0) = std::conj(plus(0));
  return v;
}

EigenShifts second_order_shifts(const SteadyState& pi, const TapeQubitState& tape) {
  const QubitSpectrum spec = qubit_spectrum(tape);
  if (spec.plus - spec.minus < 1e-9)
    throw Error(ErrorKind::DegenerateSpectrum,
                "tape spectrum is degenerate (lambda_+ - lambda_- < 1e-9)");
  const Matrix2c v = tape_eigenvectors(tape);
  const Matrix2c rho = tape_density(tape);
  const Matrix2c diss = pi.pi01 * dissipator(sigma_plus(), rho) +
                        pi.pi10 * dissipator(sigma_minus(), rho);
  const Matrix2c d = v.adjoint() * diss * v;
  const Matrix2c x = v.adjoint() * drive(pi) * v;
  const double lam[2] = {spec.minus, spec.plus};
  double out[2];
  for (int k = 0; k < 2; ++k) {
    const int l = 1 - k;
    out[k] = d(k, k).real() - (lam[l] - lam[k]) * std::norm(x(l, k));
  }
  return EigenShifts{out[0], out[1]};
}

MapOutput map_with_shifts(const SteadyState& pi, const TapeQubitState& tape, double phi) {
  return MapOutput{apply_map(pi, tape, phi), second_order_shifts(pi, tape)};
}

}  // namespace cohengine
