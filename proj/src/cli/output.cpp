#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "cohengine/cli.hpp"
#include "cohengine/kernels.hpp"

namespace cohengine::cli {

namespace {

using ojson = nlohmann::ordered_json;

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson optional_number(const std::optional<double>& v) {
  return v ? number_or_null(*v) : ojson(nullptr);
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return {};
  return fmt::format("{:.17g}", v);
}

ojson record_to_json(const SweepRecord& rec) {
  ojson j;
  j["p1"] = rec.p1;
  j["c_re"] = rec.c.real();
  j["c_im"] = rec.c.imag();
  j["e_m"] = number_or_null(rec.e_m);
  if (rec.evaluated) {
    const CurrentSet& cs = rec.currents;
    j["delta"] = cs.delta;
    j["zeta"] = cs.zeta;
    j["e_tape"] = cs.e_tape;
    j["q_c"] = cs.q_c;
    j["q_h"] = cs.q_h;
    j["s_tape"] = cs.s_tape;
    j["f_tape"] = cs.f_tape;
    j["f_classical"] = cs.f_classical;
    j["c_coh"] = cs.c_coh;
    j["s_tot"] = cs.s_tot;
    j["eta"] = optional_number(cs.eta);
    j["eta_over_carnot"] = optional_number(cs.eta_over_carnot);
    j["cop"] = optional_number(cs.cop);
    j["cop_over_carnot"] = optional_number(cs.cop_over_carnot);
    j["ergotropy_rate"] = cs.ergotropy_rate;
  }
  j["regime"] = rec.regime ? ojson(std::string(to_string(*rec.regime))) : ojson(nullptr);
  j["status"] = rec.status;
  if (rec.optimizer) {
    const OptimizerInfo& o = *rec.optimizer;
    j["optimizer"] = {{"evaluations", o.evaluations},
                      {"bracket_lo", o.bracket_lo},
                      {"bracket_hi", o.bracket_hi},
                      {"at_boundary", o.at_boundary},
                      {"objective", o.objective}};
  }
  return j;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "p1",     "c_re",          "c_im",        "e_m",   "delta",           "zeta",
      "e_tape", "q_c",           "q_h",         "s_tape", "f_tape",         "f_classical",
      "c_coh",  "s_tot",         "eta",         "eta_over_carnot", "cop", "cop_over_carnot",
      "ergotropy_rate", "regime", "status"};
  return cols;
}

std::string table_to_csv(const SweepTable& table) {
  std::string out;
  const auto& cols = csv_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (k) out += ',';
    out += cols[k];
  }
  out += '\n';
  for (const SweepRecord& rec : table.rows) {
    std::vector<std::string> f;
    f.reserve(cols.size());
    f.push_back(format_number(rec.p1));
    f.push_back(format_number(rec.c.real()));
    f.push_back(format_number(rec.c.imag()));
    f.push_back(format_number(rec.e_m));
    if (rec.evaluated) {
      const CurrentSet& cs = rec.currents;
      for (double v : {cs.delta, cs.zeta, cs.e_tape, cs.q_c, cs.q_h, cs.s_tape, cs.f_tape,
                       cs.f_classical, cs.c_coh, cs.s_tot})
        f.push_back(format_number(v));
      f.push_back(optional_field(cs.eta));
      f.push_back(optional_field(cs.eta_over_carnot));
      f.push_back(optional_field(cs.cop));
      f.push_back(optional_field(cs.cop_over_carnot));
      f.push_back(format_number(cs.ergotropy_rate));
    } else {
      f.resize(f.size() + 15);
    }
    f.push_back(rec.regime ? std::string(to_string(*rec.regime)) : std::string());
    f.push_back(rec.status);
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (k) out += ',';
      out += f[k];
    }
    out += '\n';
  }
  return out;
}

ojson make_manifest(const ManifestInfo& info) {
  ojson m;
  m["tool"] = "cohengine";
  m["version"] = kToolVersion;
  m["command"] = info.command;
  if (info.inputs) {
    ojson cfg = ojson::object();
    for (const auto& [k, v] : info.inputs->values) cfg[k] = v;
    m["resolved_config"] = cfg;
    m["preset"] = info.inputs->preset ? ojson(info.inputs->preset->name) : ojson(nullptr);
    m["assumption_flags"] = info.inputs->flags;
  }
  m["seed"] = info.seed ? ojson(*info.seed) : ojson(nullptr);
  m["parameters"] = info.parameters;
  m["simd_variant"] = std::string(kernels::active_variant());
  m["wall_clock_seconds"] = info.wall_clock_seconds;
  return m;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace cohengine::cli
