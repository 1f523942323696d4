#include "cohengine/model.hpp"

#include <cmath>

#include "cohengine/error.hpp"

namespace cohengine {

namespace {

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
  throw Error(ErrorKind::InvalidConfig, key + ": " + why);
}

void require_finite(const char* key, double v) {
  if (!std::isfinite(v)) invalid(key, "must be finite");
}

}  // namespace

MachineConfig MachineConfig::make(const Params& p) {
  require_finite("e_q", p.e_q);
  require_finite("e_c", p.e_c);
  require_finite("beta_c", p.beta_c);
  require_finite("beta_h", p.beta_h);
  require_finite("gamma0", p.gamma0);
  require_finite("r", p.r);
  require_finite("phi", p.phi);
  if (!(p.e_q > 0.0)) invalid("e_q", "must be > 0");
  if (!(p.e_c > 0.0)) invalid("e_c", "must be > 0");
  if (!(p.beta_h > 0.0)) invalid("beta_h", "must be > 0");
  if (!(p.beta_c >= p.beta_h)) invalid("beta_c", "must satisfy beta_c >= beta_h");
  if (!(p.gamma0 > 0.0)) invalid("gamma0", "must be > 0");
  if (!(p.r > 0.0)) invalid("r", "must be > 0");
  if (!(p.phi > 0.0)) invalid("phi", "must be > 0");

  MachineConfig cfg;
  cfg.e_q_ = p.e_q;
  cfg.e_c_ = p.e_c;
  cfg.e_h_ = p.e_c + p.e_q;
  cfg.beta_c_ = p.beta_c;
  cfg.beta_h_ = p.beta_h;
  cfg.gamma0_ = p.gamma0;
  cfg.r_ = p.r;
  cfg.phi_ = p.phi;
  return cfg;
}

MachineConfig MachineConfig::from_e_m(Params params, double e_m) {
  require_finite("e_m", e_m);
  if (!(e_m > params.e_q)) invalid("e_m", "must be > e_q");
  params.e_c = 0.5 * (e_m - params.e_q);
  return make(params);
}

MachineConfig::Params MachineConfig::params() const noexcept {
  return Params{e_q_, e_c_, beta_c_, beta_h_, gamma0_, r_, phi_};
}

MachineConfig MachineConfig::with_e_c(double e_c) const {
  Params p = params();
  p.e_c = e_c;
  return make(p);
}

std::vector<std::string> MachineConfig::warnings() const {
  std::vector<std::string> out;
  if (phi_ > 0.2) out.emplace_back("phi > 0.2: collisions outside the weak-coupling regime");
  if (gamma0_ >= e_c_) out.emplace_back("gamma0 >= e_c: bath coupling not weak");
  return out;
}

TapeQubitState TapeQubitState::make(double p1, complex c) {
  if (!std::isfinite(p1) || !std::isfinite(c.real()) || !std::isfinite(c.imag()))
    invalid("p1", "tape state must be finite");
  if (p1 < 0.0 || p1 > 1.0) invalid("p1", "must lie in [0, 1]");
  const double bound = p1 * (1.0 - p1);
  // A few ulps of slack so that states built as sqrt(p0 p1) are accepted.
  if (std::norm(c) > bound * (1.0 + 4e-16) + 1e-300)
    invalid("c", "violates the positivity bound |c|^2 <= p0*p1");
  return TapeQubitState{p1, c};
}

TapeQubitState clip_to_domain(double p1, complex c) {
  const double bound = p1 * (1.0 - p1) * (1.0 - kPurityMargin);
  const double mag2 = std::norm(c);
  if (mag2 > bound) {
    c *= std::sqrt(bound / mag2);
  }
  return TapeQubitState{p1, c};
}

double virtual_beta(const MachineConfig& cfg) {
  return (cfg.beta_h() * cfg.e_h() - cfg.beta_c() * cfg.e_c()) / (cfg.e_h() - cfg.e_c());
}

TapeQubitState gibbs_qubit(double beta, double gap) {
  // p1 = 1/(1 + exp(beta gap)), written to stay finite for either sign.
  const double x = beta * gap;
  double p1;
  if (x >= 0.0) {
    const double e = std::exp(-x);
    p1 = e / (1.0 + e);
  } else {
    p1 = 1.0 / (1.0 + std::exp(x));
  }
  return TapeQubitState{p1, complex{0.0, 0.0}};
}

RatePair bath_rates(double beta, double gap, double gamma0) {
  const double x = beta * gap;
  if (x > 700.0) return RatePair{0.0, gamma0};
  const double n_th = 1.0 / std::expm1(x);
  return RatePair{gamma0 * n_th, gamma0 * (n_th + 1.0)};
}

RatePair tape_rates(const MachineConfig& cfg, const TapeQubitState& tape) {
  const double s = cfg.tape_rate_scale();
  return RatePair{s * tape.p1, s * tape.p0()};
}

QubitSpectrum qubit_spectrum(const TapeQubitState& tape) {
  const double d = tape.p1 - tape.p0();
  const double c2 = std::norm(tape.c);
  const double s = std::sqrt(d * d + 4.0 * c2);
  const double plus = 0.5 * (1.0 + s);
  // lambda_- = det / lambda_+ avoids cancellation near pure states.
  const double det = tape.p0() * tape.p1 - c2;
  double minus = det > 0.0 ? det / plus : 0.0;
  return QubitSpectrum{1.0 - minus, minus};
}

double incoherent_tape_beta(const TapeQubitState& tape, double e_q) {
  if (tape.p1 <= 0.0 || tape.p1 >= 1.0)
    throw Error(ErrorKind::UnboundedTemperature,
                "tape temperature is unbounded for p1 in {0, 1}");
  return std::log(tape.p0() / tape.p1) / e_q;
}

}  // namespace cohengine
