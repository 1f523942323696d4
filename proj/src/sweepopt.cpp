#include "cohengine/sweepopt.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "cohengine/error.hpp"
#include "cohengine/kernels.hpp"
#include "cohengine/steady.hpp"

namespace cohengine {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio

// Steady states for a batch of machine configs sharing tape and coupling.
std::vector<SteadyState> batch_steady(const std::vector<MachineConfig>& cfgs,
                                      const TapeQubitState& tape) {
  const std::size_t n = cfgs.size();
  std::vector<double> in(4 * n), out(6 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const RatePair cold = bath_rates(cfgs[i].beta_c(), cfgs[i].e_c(), cfgs[i].gamma0());
    const RatePair hot = bath_rates(cfgs[i].beta_h(), cfgs[i].e_h(), cfgs[i].gamma0());
    in[i] = cold.up;
    in[n + i] = cold.down;
    in[2 * n + i] = hot.up;
    in[3 * n + i] = hot.down;
  }
  const RatePair q = tape_rates(cfgs.front(), tape);
  kernels::SteadyBatchInput bin{in.data(), in.data() + n, in.data() + 2 * n, in.data() + 3 * n,
                                q.up, q.down, cfgs.front().r() * cfgs.front().phi(), tape.c};
  kernels::SteadyBatchOutput bout{out.data(),         out.data() + n,     out.data() + 2 * n,
                                  out.data() + 3 * n, out.data() + 4 * n, out.data() + 5 * n};
  kernels::steady_batch(bin, bout, n);
  std::vector<SteadyState> res(n);
  for (std::size_t i = 0; i < n; ++i) {
    res[i].pi00 = out[i];
    res[i].pi01 = out[n + i];
    res[i].pi10 = out[2 * n + i];
    res[i].pi11 = out[3 * n + i];
    res[i].pi_c = complex{out[4 * n + i], out[5 * n + i]};
  }
  return res;
}

std::optional<double> objective(const SteadyState& pi, const TapeQubitState& tape,
                                const MachineConfig& cfg, OptimizationTarget target) {
  const double tol = default_tolerance(cfg);
  const Components comp = components(pi, tape, cfg);
  const EnergyCurrents ec = energy_currents(comp.delta, comp.zeta, cfg);
  switch (target) {
    case OptimizationTarget::FreeEnergy: {
      const double f = free_energy(ec.e_tape, entropy_rate(pi, tape, cfg, comp.delta), cfg.beta_c());
      if (f > tol && ec.q_h > tol) return f;
      return std::nullopt;
    }
    case OptimizationTarget::CoolingPower: {
      const double f = free_energy(ec.e_tape, entropy_rate(pi, tape, cfg, comp.delta), cfg.beta_c());
      if (ec.q_c > tol && f < -tol) return ec.q_c;
      return std::nullopt;
    }
    case OptimizationTarget::Ergotropy: {
      const double w = ergotropy_rate(ec.e_tape, pi, tape, cfg, comp.delta);
      if (w > tol && ec.q_h > tol) return w;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

double value_or_floor(const std::optional<double>& v) {
  return v ? *v : -std::numeric_limits<double>::infinity();
}

std::string status_of(const Error& e) { return std::string(to_string(e.kind())); }

}  // namespace

void SweepGrid::validate() const {
  if (p1_count < 2) throw Error(ErrorKind::InvalidConfig, "grid: p1 count must be >= 2");
  if (c_count < 2) throw Error(ErrorKind::InvalidConfig, "grid: c count must be >= 2");
  if (!(p1_min >= 0.0 && p1_max <= 1.0 && p1_min < p1_max))
    throw Error(ErrorKind::InvalidConfig, "grid: p1 range must satisfy 0 <= min < max <= 1");
  if (!(c_max >= 0.0)) throw Error(ErrorKind::InvalidConfig, "grid: c_max must be >= 0");
}

double SweepGrid::p1_at(int i) const {
  return p1_min + (p1_max - p1_min) * static_cast<double>(i) / (p1_count - 1);
}

double SweepGrid::c_at(int j) const {
  const double t = static_cast<double>(j) / (c_count - 1);
  if (c_mode == CAxisMode::SignedDiameter) return -c_max + 2.0 * c_max * t;
  return c_max * t;
}

std::string_view to_string(OptimizationTarget target) {
  switch (target) {
    case OptimizationTarget::FreeEnergy: return "free_energy";
    case OptimizationTarget::CoolingPower: return "cooling_power";
    case OptimizationTarget::Ergotropy: return "ergotropy";
  }
  return "unknown";
}

std::optional<OptimizationTarget> parse_target(std::string_view name) {
  if (name == "free_energy") return OptimizationTarget::FreeEnergy;
  if (name == "cooling_power") return OptimizationTarget::CoolingPower;
  if (name == "ergotropy") return OptimizationTarget::Ergotropy;
  return std::nullopt;
}

SweepRecord evaluate_point(const MachineConfig& cfg, const TapeQubitState& tape,
                           const EvalOptions& opt) {
  const double tol = opt.tol.value_or(default_tolerance(cfg));
  SweepRecord rec;
  rec.p1 = tape.p1;
  rec.c = tape.c;
  rec.e_m = cfg.e_m();
  const SteadyState pi = steady_state(cfg, tape);
  rec.currents = compute_currents(pi, tape, cfg, tol);
  rec.evaluated = true;
  try {
    rec.regime = classify_regime(rec.currents, tol, opt.measure);
  } catch (const Error& e) {
    rec.status = status_of(e);
  }
  return rec;
}

std::optional<double> gap_objective(const MachineConfig& cfg, const TapeQubitState& tape,
                                    OptimizationTarget target) {
  return objective(batch_steady({cfg}, tape).front(), tape, cfg, target);
}

GapOptimum optimize_gap(const MachineConfig::Params& base, const TapeQubitState& tape,
                        OptimizationTarget target, GapRange range, double rel_tol) {
  const double lo = base.e_q * range.lo_factor;
  const double hi = base.e_q * range.hi_factor;
  if (!(lo > base.e_q && hi > lo))
    throw Error(ErrorKind::InvalidConfig, "e_m range: need e_q < lo < hi");
  const double ulo = std::log(lo), uhi = std::log(hi);

  std::vector<MachineConfig> cfgs;
  cfgs.reserve(kCoarseSamples);
  std::array<double, kCoarseSamples> u{};
  for (int k = 0; k < kCoarseSamples; ++k) {
    u[k] = ulo + (uhi - ulo) * k / (kCoarseSamples - 1);
    const double e_m = k == kCoarseSamples - 1 ? hi : (k == 0 ? lo : std::exp(u[k]));
    cfgs.push_back(MachineConfig::from_e_m(base, e_m));
  }
  const std::vector<SteadyState> pis = batch_steady(cfgs, tape);
  std::array<double, kCoarseSamples> val{};
  for (int k = 0; k < kCoarseSamples; ++k)
    val[k] = value_or_floor(objective(pis[k], tape, cfgs[k], target));
  int evaluations = kCoarseSamples;

  std::vector<int> peaks;
  for (int k = 0; k < kCoarseSamples; ++k) {
    if (!std::isfinite(val[k])) continue;
    const double left = k > 0 ? val[k - 1] : -std::numeric_limits<double>::infinity();
    const double right = k + 1 < kCoarseSamples ? val[k + 1] : -std::numeric_limits<double>::infinity();
    if (val[k] >= left && val[k] >= right) peaks.push_back(k);
  }
  if (peaks.empty())
    throw Error(ErrorKind::TargetInfeasible,
                std::string("target ") + std::string(to_string(target)) +
                    " is not achievable for any sampled e_m");
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return val[a] > val[b]; });
  if (peaks.size() > static_cast<std::size_t>(kRefinedBrackets)) peaks.resize(kRefinedBrackets);

  auto eval_u = [&](double uu) {
    ++evaluations;
    return value_or_floor(gap_objective(MachineConfig::from_e_m(base, std::exp(uu)), tape, target));
  };

  double best_u = u[peaks.front()];
  double best_val = val[peaks.front()];
  double best_lo = u[std::max(peaks.front() - 1, 0)];
  double best_hi = u[std::min(peaks.front() + 1, kCoarseSamples - 1)];
  for (int k : peaks) {
    double a = u[std::max(k - 1, 0)];
    double b = u[std::min(k + 1, kCoarseSamples - 1)];
    const double a0 = a, b0 = b;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = eval_u(x1), f2 = eval_u(x2);
    while (b - a > rel_tol) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kInvPhi * (b - a);
        f1 = eval_u(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (b - a);
        f2 = eval_u(x2);
      }
    }
    const double cand_u = f1 >= f2 ? x1 : x2;
    const double cand = std::max(f1, f2);
    if (cand > best_val) {
      best_val = cand;
      best_u = cand_u;
      best_lo = a0;
      best_hi = b0;
    }
  }

  const double e_m_star = std::clamp(std::exp(best_u), lo, hi);
  GapOptimum res;
  res.e_m_star = e_m_star;
  res.record = evaluate_point(MachineConfig::from_e_m(base, e_m_star), tape);
  OptimizerInfo info;
  info.evaluations = evaluations;
  info.bracket_lo = std::exp(best_lo);
  info.bracket_hi = std::exp(best_hi);
  info.at_boundary = e_m_star <= lo * (1.0 + rel_tol) || e_m_star >= hi * (1.0 - rel_tol);
  info.objective = best_val;
  res.record.optimizer = info;
  return res;
}

SweepTable sweep(const MachineConfig::Params& base, const SweepGrid& grid,
                 const SweepOptions& opt) {
  grid.validate();
  const MachineConfig cfg = MachineConfig::make(base);
  SweepTable table;
  table.grid = grid;
  table.target = opt.target;
  const std::size_t n = static_cast<std::size_t>(grid.p1_count) * grid.c_count;
  table.rows.resize(n);

  auto run_one = [&](std::size_t idx) {
    const int i = static_cast<int>(idx / grid.c_count);
    const int j = static_cast<int>(idx % grid.c_count);
    const TapeQubitState tape = clip_to_domain(grid.p1_at(i), complex{grid.c_at(j), 0.0});
    SweepRecord& rec = table.rows[idx];
    rec.p1 = tape.p1;
    rec.c = tape.c;
    rec.e_m = opt.target ? kNaN : cfg.e_m();
    try {
      if (opt.target) {
        rec = optimize_gap(base, tape, *opt.target, GapRange{}, opt.rel_tol).record;
      } else {
        rec = evaluate_point(cfg, tape, EvalOptions{opt.measure, std::nullopt});
      }
    } catch (const Error& e) {
      rec.status = e.kind() == ErrorKind::TargetInfeasible ? "infeasible" : status_of(e);
      rec.regime.reset();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t k = 0; k < n; ++k) run_one(k);
    return table;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n; k = next++) run_one(k);
    });
  }
  for (auto& t : pool) t.join();
  return table;
}

namespace {

MachineConfig::Params params(double e_c, double beta_c, double beta_h, double r, double phi) {
  MachineConfig::Params p;
  p.e_q = 1.0;
  p.e_c = e_c;
  p.beta_c = beta_c;
  p.beta_h = beta_h;
  p.gamma0 = 0.0025;
  p.r = r;
  p.phi = phi;
  return p;
}

SweepGrid disc_grid() { return SweepGrid{}; }

SweepGrid half_disc_grid() {
  SweepGrid g;
  g.p1_count = 101;
  g.c_count = 101;
  g.c_mode = CAxisMode::MagnitudeHalfDisc;
  return g;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig3", "fig4", "fig5a", "fig5b", "fig5c", "fig6a",
          "fig6b", "fig6c", "fig7", "figEP"};
}

std::optional<Preset> find_preset(std::string_view name) {
  Preset p;
  p.name = std::string(name);
  if (name == "fig3" || name == "fig7") {
    p.params = params(0.5, 1.2, 0.06, 2.0, 0.02);
    p.grid = disc_grid();
    if (name == "fig7") p.measure = WorkMeasure::Ergotropy;
    return p;
  }
  if (name == "fig4") {
    p.params = params(0.8, 1.2, 0.6, 2.0, 0.04);
    p.grid = disc_grid();
    p.flags.emplace_back("e_h set to e_c + e_q = 1.8 (caption lists 1.5, which breaks resonance)");
    return p;
  }
  if (name == "figEP") {
    p.params = params(0.6, 1.2, 0.06, 2.5, 0.08);
    p.grid = disc_grid();
    p.grid.c_mode = CAxisMode::MagnitudeHalfDisc;
    return p;
  }
  const double temps[3] = {1.0, 2.0, 10.0};
  if (name.size() == 5 && (name.substr(0, 4) == "fig5" || name.substr(0, 4) == "fig6")) {
    const int k = name[4] - 'a';
    if (k < 0 || k > 2) return std::nullopt;
    const double bc = temps[k];
    p.grid = half_disc_grid();
    if (name[3] == '5') {
      p.params = params(0.5, bc, 0.05 * bc, 2.0, 0.02);
      p.target = OptimizationTarget::FreeEnergy;
    } else {
      p.params = params(0.5, bc, 0.5 * bc, 2.5, 0.08);
      p.target = OptimizationTarget::CoolingPower;
    }
    return p;
  }
  return std::nullopt;
}

}  // namespace cohengine
