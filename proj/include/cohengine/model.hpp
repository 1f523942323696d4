#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace cohengine {

using complex = std::complex<double>;

/// Physical parameters of the machine, its two baths and the tape coupling.
///
/// Natural units (k_B = hbar = 1). The hot gap is never an independent
/// input: it is stored as e_c + e_q so the resonance condition holds exactly.
class MachineConfig {
 public:
  struct Params {
    double e_q = 1.0;
    double e_c = 0.5;
    double beta_c = 1.0;
    double beta_h = 0.5;
    double gamma0 = 0.0025;
    double r = 2.0;
    double phi = 0.02;
  };

  /// Throws Error(InvalidConfig) naming the first violated constraint.
  static MachineConfig make(const Params& params);

  /// Same as make() but the machine design is given by e_m = e_c + e_h.
  static MachineConfig from_e_m(Params params, double e_m);

  double e_q() const noexcept { return e_q_; }
  double e_c() const noexcept { return e_c_; }
  double e_h() const noexcept { return e_h_; }
  double e_m() const noexcept { return e_c_ + e_h_; }
  double beta_c() const noexcept { return beta_c_; }
  double beta_h() const noexcept { return beta_h_; }
  double gamma0() const noexcept { return gamma0_; }
  double r() const noexcept { return r_; }
  double phi() const noexcept { return phi_; }

  /// r * phi^2, the natural scale of every tape-induced current.
  double tape_rate_scale() const noexcept { return r_ * phi_ * phi_; }

  Params params() const noexcept;

  /// Non-fatal warnings (e.g. collision strength outside the weak regime).
  std::vector<std::string> warnings() const;

  MachineConfig with_e_c(double e_c) const;

 private:
  MachineConfig() = default;

  double e_q_ = 1.0;
  double e_c_ = 0.5;
  double e_h_ = 1.5;
  double beta_c_ = 1.0;
  double beta_h_ = 0.5;
  double gamma0_ = 0.0025;
  double r_ = 2.0;
  double phi_ = 0.02;
};

/// Incoming tape qubit, rho_q = [[p0, c], [conj(c), p1]] in the {|0>, |1>} basis.
struct TapeQubitState {
  double p1 = 0.5;
  complex c{0.0, 0.0};

  double p0() const noexcept { return 1.0 - p1; }

  /// Throws Error(InvalidConfig) when 0 <= p1 <= 1 or |c|^2 <= p0 p1 fails.
  static TapeQubitState make(double p1, complex c);
};

/// Largest |c|^2 accepted by the perturbative entropy/ergotropy formulas,
/// p0 p1 (1 - kPurityMargin).
inline constexpr double kPurityMargin = 1e-9;

/// Scales c so that |c|^2 <= p0 p1 (1 - kPurityMargin); phase is kept.
TapeQubitState clip_to_domain(double p1, complex c);

struct RatePair {
  double up = 0.0;
  double down = 0.0;
};

/// Inverse temperature of the inner transition |10> <-> |01>; may be negative.
double virtual_beta(const MachineConfig& config);

/// Thermal qubit state exp(-beta H)/Z with H = gap |1><1|; beta may be negative.
TapeQubitState gibbs_qubit(double beta, double gap);

/// Bosonic bath rates: up = gamma0 N, down = gamma0 (N + 1),
/// N = 1/(exp(beta gap) - 1). For beta gap > 700 returns (0, gamma0).
RatePair bath_rates(double beta, double gap, double gamma0);

/// Incoherent tape rates: up = r phi^2 p1, down = r phi^2 p0.
RatePair tape_rates(const MachineConfig& config, const TapeQubitState& tape);

struct QubitSpectrum {
  double plus = 1.0;
  double minus = 0.0;
};

QubitSpectrum qubit_spectrum(const TapeQubitState& tape);

/// ln(p0/p1)/e_q. Throws Error(UnboundedTemperature) for p1 in {0, 1}.
double incoherent_tape_beta(const TapeQubitState& tape, double e_q);

}  // namespace cohengine
