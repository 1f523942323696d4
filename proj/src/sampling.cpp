#include "cohengine/sampling.hpp"

#include <cmath>
#include <numbers>

namespace cohengine {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

}  // namespace

MachineConfig random_config(std::mt19937_64& rng) {
  MachineConfig::Params p;
  p.e_q = 1.0;
  p.e_c = log_uniform(rng, 0.1, 3.0);
  p.beta_c = log_uniform(rng, 0.2, 5.0);
  p.beta_h = p.beta_c * log_uniform(rng, 0.02, 1.0);
  p.gamma0 = log_uniform(rng, 1e-3, 1e-2);
  p.r = log_uniform(rng, 0.5, 5.0);
  p.phi = log_uniform(rng, 0.01, 0.1);
  return MachineConfig::make(p);
}

TapeQubitState random_tape(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pop(0.02, 0.98);
  std::uniform_real_distribution<double> frac(0.0, 0.9);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double p1 = pop(rng);
  const double mag = std::sqrt(frac(rng) * p1 * (1.0 - p1));
  return TapeQubitState::make(p1, std::polar(mag, angle(rng)));
}

}  // namespace cohengine
