#include "cohengine/thermo.hpp"

#include <cmath>

#include "cohengine/error.hpp"
#include "cohengine/tapemap.hpp"

namespace cohengine {

namespace {

constexpr double kSmallSplitting = 1e-6;

struct Bracket {
  double d = 0.0;       // p1 - p0
  double s = 0.0;       // lambda_+ - lambda_-
  double value = 0.0;   // r phi^2 |pi_c|^2 + (Delta d - N |c|^2) / s^2
  double limit = 0.0;   // s^2 r phi^2 |pi_c|^2 + Delta d - N |c|^2
};

void check_domain(const TapeQubitState& tape) {
  const double bound = tape.p0() * tape.p1;
  const double c2 = std::norm(tape.c);
  if (!(bound > 0.0) || c2 > bound * (1.0 - kPurityMargin) * (1.0 + 1e-12))
    throw Error(ErrorKind::PureStateBoundary,
                "tape state is at the pure-state boundary |c|^2 = p0*p1");
}

Bracket bracket(const SteadyState& pi, const TapeQubitState& tape, const MachineConfig& cfg,
                double delta) {
  const double k2 = cfg.tape_rate_scale();
  const double c2 = std::norm(tape.c);
  Bracket b;
  b.d = tape.p1 - tape.p0();
  const double s2 = b.d * b.d + 4.0 * c2;
  b.s = std::sqrt(s2);
  const double n = k2 * (pi.pi01 + pi.pi10);
  const double pic2 = std::norm(pi.pi_c);
  b.limit = s2 * k2 * pic2 + delta * b.d - n * c2;
  b.value = s2 > 0.0 ? k2 * pic2 + (delta * b.d - n * c2) / s2 : 0.0;
  return b;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::HeatEngine: return "HeatEngine";
    case Regime::Refrigerator: return "Refrigerator";
    case Regime::Dissipator: return "Dissipator";
    case Regime::Equilibrium: return "Equilibrium";
  }
  return "Unknown";
}

double default_tolerance(const MachineConfig& cfg) {
  return 1e-10 * cfg.e_q() * cfg.tape_rate_scale();
}

Components components(const SteadyState& pi, const TapeQubitState& tape,
                      const MachineConfig& cfg) {
  const double k2 = cfg.tape_rate_scale();
  const double delta = k2 * (pi.pi01 * tape.p0() - pi.pi10 * tape.p1);
  const double zeta = 2.0 * cfg.r() * cfg.phi() * std::imag(tape.c * std::conj(pi.pi_c));
  return Components{delta, zeta};
}

EnergyCurrents energy_currents(double delta, double zeta, const MachineConfig& cfg) {
  const double j = delta + zeta;
  return EnergyCurrents{cfg.e_q() * j, -cfg.e_c() * j, cfg.e_h() * j};
}

double entropy_rate(const SteadyState& pi, const TapeQubitState& tape, const MachineConfig& cfg,
                    double delta) {
  check_domain(tape);
  const Bracket b = bracket(pi, tape, cfg, delta);
  if (b.s < kSmallSplitting) {
    return -(2.0 + 2.0 * b.s * b.s / 3.0) * b.limit;
  }
  const QubitSpectrum spec = qubit_spectrum(tape);
  return b.s * std::log(spec.minus / spec.plus) * b.value;
}

double free_energy(double e_tape, double s_tape, double beta_c) {
  return e_tape - s_tape / beta_c;
}

FreeEnergySplit free_energy_split(const SteadyState&, const TapeQubitState& tape,
                                  const MachineConfig& cfg, double delta, double zeta,
                                  double s_tape) {
  if (tape.p1 <= 0.0 || tape.p1 >= 1.0)
    throw Error(ErrorKind::UnboundedTemperature,
                "dephased entropy rate diverges for p1 in {0, 1}");
  const double s_bar = (delta + zeta) * std::log(tape.p0() / tape.p1);
  const double e_tape = cfg.e_q() * (delta + zeta);
  return FreeEnergySplit{e_tape - s_bar / cfg.beta_c(), s_bar - s_tape};
}

double entropy_production(double s_tape, double q_c, double q_h, const MachineConfig& cfg) {
  return s_tape - cfg.beta_c() * q_c - cfg.beta_h() * q_h;
}

Performance performance(double f_tape, double q_c, double q_h, const MachineConfig& cfg,
                        double tol) {
  Performance p;
  p.eta_carnot = 1.0 - cfg.beta_h() / cfg.beta_c();
  p.cop_carnot = cfg.beta_c() / (cfg.beta_c() - cfg.beta_h());
  if (q_h > tol) p.eta = f_tape / q_h;
  if (f_tape < -tol) p.cop = q_c / (-f_tape);
  return p;
}

double ergotropy(const TapeQubitState& tape, double gap) {
  return gap * (tape.p1 - qubit_spectrum(tape).minus);
}

double ergotropy_rate(double e_tape, const SteadyState& pi, const TapeQubitState& tape,
                      const MachineConfig& cfg, double delta) {
  check_domain(tape);
  const Bracket b = bracket(pi, tape, cfg, delta);
  if (b.s < kSmallSplitting) {
    // Ergotropy is not differentiable at the maximally mixed state; use the map directly.
    const TapeQubitState out = apply_map(pi, tape, cfg.phi());
    return cfg.r() * (ergotropy(out, cfg.e_q()) - ergotropy(tape, cfg.e_q()));
  }
  return e_tape + cfg.e_q() * b.s * b.value;
}

Regime classify_regime(const CurrentSet& cs, double tol, WorkMeasure measure) {
  const double work = measure == WorkMeasure::FreeEnergy ? cs.f_tape : cs.ergotropy_rate;
  const double e_q_flux = cs.e_tape;  // E_q (Delta + zeta)
  if (std::abs(e_q_flux) <= tol && std::abs(work) <= tol) return Regime::Equilibrium;
  if (work > tol && cs.q_h > tol) return Regime::HeatEngine;
  if (cs.q_c > tol && work < -tol) return Regime::Refrigerator;
  if (work < -tol && cs.q_h > tol) return Regime::Dissipator;
  throw Error(ErrorKind::UnclassifiedPoint, "current signs match no operating regime");
}

CurrentSet compute_currents(const SteadyState& pi, const TapeQubitState& tape,
                            const MachineConfig& cfg, double tol) {
  CurrentSet cs;
  const Components comp = components(pi, tape, cfg);
  cs.delta = comp.delta;
  cs.zeta = comp.zeta;
  const EnergyCurrents ec = energy_currents(cs.delta, cs.zeta, cfg);
  cs.e_tape = ec.e_tape;
  cs.q_c = ec.q_c;
  cs.q_h = ec.q_h;
  cs.s_tape = entropy_rate(pi, tape, cfg, cs.delta);
  cs.f_tape = free_energy(cs.e_tape, cs.s_tape, cfg.beta_c());
  const FreeEnergySplit split = free_energy_split(pi, tape, cfg, cs.delta, cs.zeta, cs.s_tape);
  cs.f_classical = split.f_classical;
  cs.c_coh = split.c_coh;
  cs.s_tot = entropy_production(cs.s_tape, cs.q_c, cs.q_h, cfg);
  cs.ergotropy_rate = ergotropy_rate(cs.e_tape, pi, tape, cfg, cs.delta);
  const Performance perf = performance(cs.f_tape, cs.q_c, cs.q_h, cfg, tol);
  cs.eta = perf.eta;
  cs.cop = perf.cop;
  if (perf.eta && perf.eta_carnot > 0.0) cs.eta_over_carnot = *perf.eta / perf.eta_carnot;
  if (perf.cop && std::isfinite(perf.cop_carnot)) cs.cop_over_carnot = *perf.cop / perf.cop_carnot;
  return cs;
}

}  // namespace cohengine
