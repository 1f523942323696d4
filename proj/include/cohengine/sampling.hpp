#pragma once

#include <random>

#include "cohengine/model.hpp"

namespace cohengine {

/// Random valid configuration with rates drawn log-uniform over moderate
/// ranges: gamma0 in [1e-3, 1e-2], r in [0.5, 5], phi in [0.01, 0.1].
MachineConfig random_config(std::mt19937_64& rng);

/// Random mixed tape state with |c|^2 <= 0.9 p0 p1 and a random phase.
TapeQubitState random_tape(std::mt19937_64& rng);

}  // namespace cohengine
