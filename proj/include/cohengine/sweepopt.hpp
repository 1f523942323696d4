#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cohengine/model.hpp"
#include "cohengine/thermo.hpp"

namespace cohengine {

enum class CAxisMode { SignedDiameter, MagnitudeHalfDisc };

struct SweepGrid {
  double p1_min = 0.005;
  double p1_max = 0.995;
  int p1_count = 201;
  CAxisMode c_mode = CAxisMode::SignedDiameter;
  double c_max = 0.5;
  int c_count = 201;

  /// Throws Error(InvalidConfig) for counts < 2 or an empty p1 range.
  void validate() const;
  double p1_at(int i) const;
  double c_at(int j) const;
};

enum class OptimizationTarget { FreeEnergy, CoolingPower, Ergotropy };

std::string_view to_string(OptimizationTarget target);
std::optional<OptimizationTarget> parse_target(std::string_view name);

struct OptimizerInfo {
  int evaluations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool at_boundary = false;
  double objective = 0.0;
};

struct SweepRecord {
  double p1 = 0.0;
  complex c{0.0, 0.0};
  double e_m = 0.0;
  CurrentSet currents;
  bool evaluated = false;  // false when the pipeline stopped before currents existed
  std::optional<Regime> regime;
  /// "ok", "infeasible", or the name of the error that stopped the point.
  std::string status = "ok";
  std::optional<OptimizerInfo> optimizer;
};

struct SweepTable {
  SweepGrid grid;
  std::optional<OptimizationTarget> target;
  std::vector<SweepRecord> rows;  // row-major: p1 outer, c inner
};

struct EvalOptions {
  WorkMeasure measure = WorkMeasure::FreeEnergy;
  std::optional<double> tol;  // default_tolerance(config) when empty
};

/// Steady state plus every thermodynamic quantity at one operating point.
/// Propagates DegenerateSteadyState and PureStateBoundary errors.
SweepRecord evaluate_point(const MachineConfig& config, const TapeQubitState& tape,
                           const EvalOptions& options = {});

struct GapRange {
  double lo_factor = 1.0 + 1e-6;  // in units of e_q
  double hi_factor = 20.0;
};

struct GapOptimum {
  double e_m_star = 0.0;
  SweepRecord record;
};

inline constexpr int kCoarseSamples = 64;
inline constexpr int kRefinedBrackets = 3;

/// Maximizes the target over E_m (e_c of the template is ignored).
/// Throws Error(TargetInfeasible) if no sampled E_m admits the target regime.
GapOptimum optimize_gap(const MachineConfig::Params& base, const TapeQubitState& tape,
                        OptimizationTarget target, GapRange range = {}, double rel_tol = 1e-5);

/// Objective value of the target at one E_m, or nullopt where infeasible.
std::optional<double> gap_objective(const MachineConfig& config, const TapeQubitState& tape,
                                    OptimizationTarget target);

struct SweepOptions {
  std::optional<OptimizationTarget> target;
  WorkMeasure measure = WorkMeasure::FreeEnergy;
  unsigned workers = 1;
  double rel_tol = 1e-5;
};

/// Evaluates every grid point; per-point failures land in the status field.
SweepTable sweep(const MachineConfig::Params& base, const SweepGrid& grid,
                 const SweepOptions& options = {});

struct Preset {
  std::string name;
  MachineConfig::Params params;
  SweepGrid grid;
  std::optional<OptimizationTarget> target;
  WorkMeasure measure = WorkMeasure::FreeEnergy;
  std::vector<std::string> flags;
};

/// fig3, fig4, fig5a/b/c, fig6a/b/c, fig7, figEP. Returns nullopt for unknown names.
std::optional<Preset> find_preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace cohengine
