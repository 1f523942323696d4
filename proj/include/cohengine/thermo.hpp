#pragma once

#include <optional>
#include <string_view>

#include "cohengine/model.hpp"
#include "cohengine/steady.hpp"

namespace cohengine {

/// Steady-state rates and performance metrics for one operating point.
/// Undefined ratios (0/0 near equilibrium) are empty optionals.
struct CurrentSet {
  double delta = 0.0;
  double zeta = 0.0;
  double e_tape = 0.0;
  double q_c = 0.0;
  double q_h = 0.0;
  double s_tape = 0.0;
  double f_tape = 0.0;
  double f_classical = 0.0;
  double c_coh = 0.0;
  double s_tot = 0.0;
  double ergotropy_rate = 0.0;
  std::optional<double> eta;
  std::optional<double> eta_over_carnot;
  std::optional<double> cop;
  std::optional<double> cop_over_carnot;
};

enum class Regime { HeatEngine, Refrigerator, Dissipator, Equilibrium };

std::string_view to_string(Regime regime);

/// Which resource plays the role of "work" when classifying.
enum class WorkMeasure { FreeEnergy, Ergotropy };

struct Components {
  double delta = 0.0;
  double zeta = 0.0;
};

struct EnergyCurrents {
  double e_tape = 0.0;
  double q_c = 0.0;
  double q_h = 0.0;
};

struct FreeEnergySplit {
  double f_classical = 0.0;
  double c_coh = 0.0;
};

struct Performance {
  std::optional<double> eta;
  std::optional<double> cop;
  double eta_carnot = 0.0;
  double cop_carnot = 0.0;
};

/// Classification tolerance 1e-10 E_q r phi^2.
double default_tolerance(const MachineConfig& config);

/// Delta = r phi^2 (pi01 p0 - pi10 p1); zeta = 2 r phi Im(c conj(pi_c)).
Components components(const SteadyState& pi, const TapeQubitState& tape,
                      const MachineConfig& config);

EnergyCurrents energy_currents(double delta, double zeta, const MachineConfig& config);

/// Second-order entropy rate of the tape. Throws Error(PureStateBoundary)
/// when |c|^2 > p0 p1 (1 - 1e-9).
double entropy_rate(const SteadyState& pi, const TapeQubitState& tape,
                    const MachineConfig& config, double delta);

double free_energy(double e_tape, double s_tape, double beta_c);

/// Throws Error(UnboundedTemperature) for p1 in {0, 1}.
FreeEnergySplit free_energy_split(const SteadyState& pi, const TapeQubitState& tape,
                                  const MachineConfig& config, double delta, double zeta,
                                  double s_tape);

double entropy_production(double s_tape, double q_c, double q_h, const MachineConfig& config);

Performance performance(double f_tape, double q_c, double q_h, const MachineConfig& config,
                        double tol);

/// Single-qubit ergotropy gap (p1 - lambda_-).
double ergotropy(const TapeQubitState& tape, double gap);

double ergotropy_rate(double e_tape, const SteadyState& pi, const TapeQubitState& tape,
                      const MachineConfig& config, double delta);

/// Throws Error(UnclassifiedPoint) when no sign pattern matches.
Regime classify_regime(const CurrentSet& cs, double tol,
                       WorkMeasure measure = WorkMeasure::FreeEnergy);

/// All of the above for a steady state that is self-consistent with tape.
CurrentSet compute_currents(const SteadyState& pi, const TapeQubitState& tape,
                            const MachineConfig& config, double tol);

}  // namespace cohengine
