#include "cohengine/steady.hpp"

#include <algorithm>
#include <cmath>

#include "cohengine/error.hpp"

namespace cohengine {

namespace {

constexpr double kMaxCondition = 1e12;

void add_transition(Matrix6c& m, int from, int to, double rate) {
  m(to, from) += rate;
  m(from, from) -= rate;
}

SteadyState from_vector(const Vector6c& x) {
  SteadyState s;
  s.pi00 = x(kP00).real();
  s.pi01 = x(kP01).real();
  s.pi10 = x(kP10).real();
  s.pi11 = x(kP11).real();
  s.pi_c = 0.5 * (x(kPv) + std::conj(x(kPvc)));
  return s;
}

}  // namespace

Matrix4c SteadyState::density_matrix() const {
  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = pi00;
  rho(1, 1) = pi01;
  rho(2, 2) = pi10;
  rho(3, 3) = pi11;
  rho(machine_index(1, 0), machine_index(0, 1)) = pi_c;
  rho(machine_index(0, 1), machine_index(1, 0)) = std::conj(pi_c);
  return rho;
}

DynamicalMatrix build_dynamical_matrix(const MachineConfig& cfg, const TapeQubitState& tape) {
  const RatePair cold = bath_rates(cfg.beta_c(), cfg.e_c(), cfg.gamma0());
  const RatePair hot = bath_rates(cfg.beta_h(), cfg.e_h(), cfg.gamma0());
  const RatePair q = tape_rates(cfg, tape);

  Matrix6c m = Matrix6c::Zero();
  // Cold qubit flips: |0 h> <-> |1 h>.
  add_transition(m, kP00, kP10, cold.up);
  add_transition(m, kP01, kP11, cold.up);
  add_transition(m, kP10, kP00, cold.down);
  add_transition(m, kP11, kP01, cold.down);
  // Hot qubit flips: |c 0> <-> |c 1>.
  add_transition(m, kP00, kP01, hot.up);
  add_transition(m, kP10, kP11, hot.up);
  add_transition(m, kP01, kP00, hot.down);
  add_transition(m, kP11, kP10, hot.down);
  // Tape-induced incoherent swaps of the virtual qubit.
  add_transition(m, kP01, kP10, q.down);
  add_transition(m, kP10, kP01, q.up);

  const complex i{0.0, 1.0};
  const complex kc = cfg.r() * cfg.phi() * tape.c;
  const complex kcc = std::conj(kc);
  m(kPv, kP01) = -i * kc;
  m(kPv, kP10) = i * kc;
  m(kPvc, kP01) = i * kcc;
  m(kPvc, kP10) = -i * kcc;
  m(kP01, kPv) = -i * kcc;
  m(kP01, kPvc) = i * kc;
  m(kP10, kPv) = i * kcc;
  m(kP10, kPvc) = -i * kc;

  const double decay = -0.5 * (q.up + q.down) - 0.5 * (cold.up + cold.down + hot.up + hot.down);
  m(kPv, kPv) = decay;
  m(kPvc, kPvc) = decay;
  return DynamicalMatrix{m};
}

SteadyState solve_steady_state(const DynamicalMatrix& dm) {
  const Matrix6c& m = dm.entries;
  Matrix6c a = m;
  a.row(0) << 1.0, 1.0, 1.0, 1.0, 0.0, 0.0;
  Vector6c rhs = Vector6c::Zero();
  rhs(0) = 1.0;

  Eigen::PartialPivLU<Matrix6c> lu(a);
  const double rcond = lu.rcond();
  if (std::isfinite(rcond) && rcond * kMaxCondition > 1.0) {
    return from_vector(lu.solve(rhs));
  }

  Eigen::JacobiSVD<Matrix6c> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();  // descending
  const double smallest = sv(5);
  const double second = sv(4);
  const double scale = std::max(sv(0), 1e-300);
  const double tol = 1e-10 * scale;
  if (!(smallest <= tol) || second <= tol) throw DegenerateSteadyStateError(smallest, second);

  Vector6c x = svd.matrixV().col(5);
  const complex trace = x(kP00) + x(kP01) + x(kP10) + x(kP11);
  if (std::abs(trace) < 1e-300) throw DegenerateSteadyStateError(smallest, second);
  x /= trace;
  return from_vector(x);
}

SteadyState steady_state(const MachineConfig& cfg, const TapeQubitState& tape) {
  return solve_steady_state(build_dynamical_matrix(cfg, tape));
}

SteadyState local_gibbs_state(const MachineConfig& cfg) {
  const double pc = gibbs_qubit(cfg.beta_c(), cfg.e_c()).p1;
  const double ph = gibbs_qubit(cfg.beta_h(), cfg.e_h()).p1;
  SteadyState s;
  s.pi00 = (1.0 - pc) * (1.0 - ph);
  s.pi01 = (1.0 - pc) * ph;
  s.pi10 = pc * (1.0 - ph);
  s.pi11 = pc * ph;
  return s;
}

}  // namespace cohengine
