#include <chrono>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cohengine/cli.hpp"

namespace {

using namespace cohengine;
using ojson = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::optional<std::string> preset;
  std::optional<std::string> config;
  std::vector<std::string> sets;
  std::optional<std::string> out;
  std::optional<std::string> grid;
  std::optional<std::string> target;
  std::uint64_t seed = 0;
  std::optional<unsigned> workers;
  std::string level = "quick";
};

unsigned resolve_workers(const Options& o) {
  if (o.workers) return std::max(1u, *o.workers);
  if (const char* env = std::getenv("COHENGINE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw Error(ErrorKind::InvalidConfig, "COHENGINE_WORKERS: must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit(const Options& o, const std::string& text) {
  if (o.out) {
    cli::write_text(*o.out, text);
  } else {
    std::cout << text;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<OptimizationTarget> target_of(const Options& o, const cli::ResolvedInputs& in) {
  if (o.target) {
    auto t = parse_target(*o.target);
    if (!t) throw Error(ErrorKind::InvalidConfig, "optimize: unknown target '" + *o.target + "'");
    return t;
  }
  if (in.preset) return in.preset->target;
  return std::nullopt;
}

WorkMeasure measure_of(const cli::ResolvedInputs& in) {
  return in.preset ? in.preset->measure : WorkMeasure::FreeEnergy;
}

int cmd_point(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const cli::ResolvedInputs in = cli::resolve_inputs(o.preset, o.config, o.sets, true);
  const MachineConfig cfg = MachineConfig::make(in.params);
  for (const auto& w : cfg.warnings()) std::cerr << "warning: " << w << '\n';
  const SweepRecord rec = evaluate_point(cfg, in.tape, EvalOptions{measure_of(in), std::nullopt});
  ojson doc;
  doc["record"] = cli::record_to_json(rec);
  doc["manifest"] = cli::make_manifest({"point", &in, std::nullopt, ojson::object(), seconds_since(t0)});
  emit(o, doc.dump(2) + "\n");
  return cli::kExitOk;
}

int cmd_optimize(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const cli::ResolvedInputs in = cli::resolve_inputs(o.preset, o.config, o.sets, true);
  const auto target = target_of(o, in);
  if (!target) throw Error(ErrorKind::InvalidConfig, "optimize: missing --optimize TARGET");
  for (const auto& w : MachineConfig::make(in.params).warnings()) std::cerr << "warning: " << w << '\n';
  const GapOptimum opt = optimize_gap(in.params, in.tape, *target);
  ojson doc;
  doc["e_m_star"] = opt.e_m_star;
  doc["record"] = cli::record_to_json(opt.record);
  ojson params = {{"target", std::string(to_string(*target))}, {"e_m_range", {1.0 + 1e-6, 20.0}}};
  doc["manifest"] = cli::make_manifest({"optimize", &in, std::nullopt, params, seconds_since(t0)});
  emit(o, doc.dump(2) + "\n");
  return cli::kExitOk;
}

int cmd_sweep(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const cli::ResolvedInputs in = cli::resolve_inputs(o.preset, o.config, o.sets, false);
  SweepGrid grid = in.preset ? in.preset->grid : SweepGrid{};
  if (o.grid) std::tie(grid.p1_count, grid.c_count) = cli::parse_grid(*o.grid);
  SweepOptions so;
  so.target = target_of(o, in);
  so.measure = measure_of(in);
  so.workers = resolve_workers(o);
  for (const auto& w : MachineConfig::make(in.params).warnings()) std::cerr << "warning: " << w << '\n';
  const SweepTable table = sweep(in.params, grid, so);
  const std::string csv = cli::table_to_csv(table);
  ojson params = {{"grid", {{"p1_min", grid.p1_min}, {"p1_max", grid.p1_max}, {"p1_count", grid.p1_count},
                            {"c_mode", grid.c_mode == CAxisMode::SignedDiameter ? "signed_diameter" : "magnitude_half_disc"},
                            {"c_max", grid.c_max}, {"c_count", grid.c_count}, {"clip", 1.0 - kPurityMargin}}},
                  {"target", so.target ? ojson(std::string(to_string(*so.target))) : ojson(nullptr)},
                  {"workers", so.workers}};
  if (o.out) {
    cli::write_text(*o.out, csv);
    const ojson manifest = cli::make_manifest({"sweep", &in, std::nullopt, params, seconds_since(t0)});
    cli::write_text(*o.out + ".manifest.json", manifest.dump(2) + "\n");
  } else {
    std::cout << csv;
  }
  return cli::kExitOk;
}

int cmd_validate(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  cli::ValidationHooks hooks;
  if (const char* env = std::getenv("COHENGINE_TEST_FLIP_ZETA")) hooks.flip_zeta_sign = std::string(env) == "1";
  const cli::ValidationReport rep = cli::run_validation(o.level, o.seed, hooks);
  ojson doc = rep.to_json();
  doc["manifest"] = cli::make_manifest({"validate", nullptr, o.seed, {{"level", o.level}}, seconds_since(t0)});
  emit(o, doc.dump(2) + "\n");
  for (const auto& c : rep.checks)
    if (!c.passed) std::cerr << "validation failed: " << c.name << '\n';
  return rep.passed() ? cli::kExitOk : cli::kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-driven two-qubit thermal machine: steady state, sweeps and oracles"};
  Options o;
  app.add_option("command", o.command, "point | sweep | optimize | validate")
      ->required()
      ->check(CLI::IsMember({"point", "sweep", "optimize", "validate"}));
  app.add_option("--preset", o.preset, "fig3, fig4, fig5a/b/c, fig6a/b/c, fig7, figEP");
  app.add_option("--config", o.config, "flat JSON config file (or a run manifest)");
  app.add_option("--set", o.sets, "key=value override, repeatable")->take_all();
  app.add_option("--out", o.out, "output path (stdout when omitted)");
  app.add_option("--grid", o.grid, "NxM: p1 count x c count");
  app.add_option("--optimize", o.target, "free_energy | cooling_power | ergotropy");
  app.add_option("--seed", o.seed, "random seed for validation");
  app.add_option("--workers", o.workers, "worker threads (env COHENGINE_WORKERS)");
  app.add_option("--level", o.level, "validation level: quick | full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitConfig;
  }

  try {
    if (o.command == "point") return cmd_point(o);
    if (o.command == "sweep") return cmd_sweep(o);
    if (o.command == "optimize") return cmd_optimize(o);
    return cmd_validate(o);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return cli::exit_code_for(e);
  } catch (const cli::IoError& e) {
    std::cerr << "error (io): " << e.what() << '\n';
    return cli::kExitIo;
  }
}
