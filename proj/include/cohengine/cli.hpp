#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cohengine/error.hpp"
#include "cohengine/sweepopt.hpp"

namespace cohengine::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitSolver = 3, kExitIo = 4, kExitValidation = 5 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(const Error& e);

/// Flat key set accepted in config files and --set overrides.
const std::vector<std::string>& config_keys();

struct ResolvedInputs {
  MachineConfig::Params params;
  std::optional<double> e_m;  // set when the design was given as e_m
  TapeQubitState tape;
  std::optional<Preset> preset;
  std::map<std::string, double> values;  // every resolved key, for the manifest
  std::vector<std::string> flags;
};

/// Layering: preset, then config file, then --set overrides in order.
/// Without a preset every machine key except e_q must be supplied; the tape
/// keys are required only when need_tape is set. Throws Error(InvalidConfig)
/// naming the offending key, IoError for unreadable files.
ResolvedInputs resolve_inputs(const std::optional<std::string>& preset,
                              const std::optional<std::string>& config_path,
                              const std::vector<std::string>& sets, bool need_tape);

/// Parses "NxM" into (p1 count, c count).
std::pair<int, int> parse_grid(const std::string& spec);

/// %.17g, empty for NaN.
std::string format_number(double v);

nlohmann::ordered_json record_to_json(const SweepRecord& rec);

const std::vector<std::string>& csv_columns();
std::string table_to_csv(const SweepTable& table);

struct ManifestInfo {
  std::string command;
  const ResolvedInputs* inputs = nullptr;
  std::optional<std::uint64_t> seed;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  double wall_clock_seconds = 0.0;
};

nlohmann::ordered_json make_manifest(const ManifestInfo& info);

/// Writes the file, throwing IoError on failure.
void write_text(const std::string& path, const std::string& content);

struct ValidationHooks {
  bool flip_zeta_sign = false;  // mutation hook: the energy-flux check must catch it
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
};

struct ValidationReport {
  std::string level;
  std::uint64_t seed = 0;
  std::vector<ValidationCheck> checks;
  bool passed() const;
  nlohmann::ordered_json to_json() const;
};

ValidationReport run_validation(const std::string& level, std::uint64_t seed,
                                const ValidationHooks& hooks = {});

}  // namespace cohengine::cli
