#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cohengine/cli.hpp"

namespace cohengine::cli {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); }

double parse_number(const std::string& key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || errno == ERANGE)
    invalid(key + ": not a number: '" + text + "'");
  return v;
}

bool known_key(const std::string& key) {
  for (const auto& k : config_keys())
    if (k == key) return true;
  return false;
}

void assign(std::map<std::string, double>& values, const std::string& key, double v) {
  if (!known_key(key)) invalid("unknown key: " + key);
  // e_c and e_m are two spellings of the same design choice; the latest wins.
  if (key == "e_c") values.erase("e_m");
  if (key == "e_m") values.erase("e_c");
  values[key] = v;
}

void load_file(std::map<std::string, double>& values, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    invalid("config file is not valid JSON: " + std::string(e.what()));
  }
  // A run manifest can be fed back as a config.
  if (doc.is_object() && doc.contains("resolved_config")) doc = doc["resolved_config"];
  if (!doc.is_object()) invalid("config file must hold a flat JSON object");
  for (const auto& [key, val] : doc.items()) {
    if (!val.is_number()) invalid(key + ": must be a number");
    assign(values, key, val.get<double>());
  }
}

double require(const std::map<std::string, double>& values, const std::string& key) {
  auto it = values.find(key);
  if (it == values.end()) invalid("missing required key: " + key);
  return it->second;
}

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::PureStateBoundary:
    case ErrorKind::UnboundedTemperature:
      return kExitConfig;
    default:
      return kExitSolver;
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"e_q", "e_c",   "e_m", "beta_c", "beta_h", "gamma0",
                                                "r",   "phi",   "p1",  "c_re",   "c_im"};
  return keys;
}

ResolvedInputs resolve_inputs(const std::optional<std::string>& preset,
                              const std::optional<std::string>& config_path,
                              const std::vector<std::string>& sets, bool need_tape) {
  ResolvedInputs out;
  std::map<std::string, double>& values = out.values;
  values["e_q"] = 1.0;
  if (preset) {
    out.preset = find_preset(*preset);
    if (!out.preset) invalid("unknown preset: " + *preset);
    const auto& p = out.preset->params;
    values["e_q"] = p.e_q;
    values["e_c"] = p.e_c;
    values["beta_c"] = p.beta_c;
    values["beta_h"] = p.beta_h;
    values["gamma0"] = p.gamma0;
    values["r"] = p.r;
    values["phi"] = p.phi;
    out.flags = out.preset->flags;
  }
  if (config_path) load_file(values, *config_path);
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) invalid("--set expects key=value, got '" + s + "'");
    const std::string key = s.substr(0, eq);
    if (!known_key(key)) invalid("unknown key: " + key);
    assign(values, key, parse_number(key, s.substr(eq + 1)));
  }

  MachineConfig::Params& p = out.params;
  p.e_q = require(values, "e_q");
  if (!values.count("e_c") && !values.count("e_m")) invalid("missing required key: e_c (or e_m)");
  p.beta_c = require(values, "beta_c");
  p.beta_h = require(values, "beta_h");
  p.gamma0 = require(values, "gamma0");
  p.r = require(values, "r");
  p.phi = require(values, "phi");
  if (values.count("e_m")) {
    out.e_m = values["e_m"];
    p = MachineConfig::from_e_m(p, *out.e_m).params();
  } else {
    p.e_c = values["e_c"];
  }
  MachineConfig::make(p);  // validates, naming the first bad key

  if (need_tape || values.count("p1")) {
    const double p1 = require(values, "p1");
    const complex c{values.count("c_re") ? values["c_re"] : 0.0,
                    values.count("c_im") ? values["c_im"] : 0.0};
    out.tape = TapeQubitState::make(p1, c);
    values["c_re"] = c.real();
    values["c_im"] = c.imag();
  }
  return out;
}

std::pair<int, int> parse_grid(const std::string& spec) {
  const auto x = spec.find('x');
  if (x == std::string::npos) invalid("grid: expected NxM, got '" + spec + "'");
  const double n = parse_number("grid", spec.substr(0, x));
  const double m = parse_number("grid", spec.substr(x + 1));
  if (n != static_cast<int>(n) || m != static_cast<int>(m) || n < 2 || m < 2)
    invalid("grid: counts must be integers >= 2, got '" + spec + "'");
  return {static_cast<int>(n), static_cast<int>(m)};
}

}  // namespace cohengine::cli
