// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <fmt/core.h>

#include "cohengine/error.hpp"
#include "cohengine/oracle.hpp"
#include "cohengine/sampling.hpp"
#include "cohengine/steady.hpp"
#include "cohengine/sweepopt.hpp"
#include "cohengine/tapemap.hpp"
#include "cohengine/thermo.hpp"

using namespace cohengine;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

unsigned workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

MachineConfig preset_config(const char* name) { return MachineConfig::make(find_preset(name)->params); }

SweepTable run_preset(const char* name) {
  const Preset p = *find_preset(name);
  SweepOptions opt;
  opt.target = p.target;
  opt.measure = p.measure;
  opt.workers = workers();
  return sweep(p.params, p.grid, opt);
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

// Best row by a score; rows without a score are skipped.
template <class Score, class Keep>
const SweepRecord* best_row(const SweepTable& t, Score score, Keep keep) {
  const SweepRecord* best = nullptr;
  double best_v = -kInf;
  for (const auto& r : t.rows) {
    if (r.status != "ok" || !keep(r)) continue;
    const double v = score(r);
    if (v > best_v) best_v = v, best = &r;
  }
  return best;
}

bool incoherent(const SweepRecord& r) { return std::abs(r.c) == 0.0; }
bool any_row(const SweepRecord&) { return true; }

// 1. tape = tau_v gives vanishing currents and entropy production.
Outcome equilibrium() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const MachineConfig cfg = random_config(rng);
    const TapeQubitState tv = gibbs_qubit(virtual_beta(cfg), cfg.e_q());
    const CurrentSet cs = compute_currents(steady_state(cfg, tv), tv, cfg, default_tolerance(cfg));
    worst = std::max({worst, std::abs(cs.delta), std::abs(cs.zeta), std::abs(cs.s_tot)});
  }
  return {worst <= 1e-11, fmt::format("50 configs, max(|delta|,|zeta|,|s_tot|) = {:.3g}", worst)};
}

// 2. Second law on the full regime maps.
Outcome second_law() {
  double worst = kInf;
  std::size_t n = 0, failed = 0;
  for (const char* name : {"fig3", "fig4", "figEP"}) {
    const SweepTable t = run_preset(name);
    for (const auto& r : t.rows) {
      if (!r.evaluated) {
        ++failed;
        continue;
      }
      worst = std::min(worst, r.currents.s_tot);
      ++n;
    }
  }
  return {worst >= -1e-12 && failed == 0,
          fmt::format("{} points (fig3, fig4, figEP at 201x201), {} unevaluated, min s_tot = {:.3g}", n,
                      failed, worst)};
}

// 3. E_tape : Q_c : Q_h = E_q : -E_c : E_h and Q_c + Q_h = E_tape.
Outcome proportionality() {
  double worst = 0.0;
  std::size_t n = 0;
  for (const char* name : {"fig3", "fig4", "figEP"}) {
    const MachineConfig cfg = preset_config(name);
    const SweepTable t = run_preset(name);
    for (const auto& r : t.rows) {
      if (!r.evaluated) continue;
      const CurrentSet& c = r.currents;
      const double j = c.e_tape / cfg.e_q();
      const double scale = std::max(std::abs(c.e_tape), std::max(std::abs(c.q_c), std::abs(c.q_h)));
      if (scale == 0.0) continue;
      const double dev = std::max({std::abs(c.q_c + cfg.e_c() * j), std::abs(c.q_h - cfg.e_h() * j),
                                   std::abs(c.q_c + c.q_h - c.e_tape)});
      worst = std::max(worst, dev / scale);
      ++n;
    }
  }
  return {worst <= 1e-11, fmt::format("{} points, max relative deviation = {:.3g}", n, worst)};
}

// 4. Efficiency and COP never exceed their Carnot bounds.
Outcome carnot_bounds() {
  double eta_max = 0.0, cop_max = 0.0;
  std::size_t n_he = 0, n_r = 0;
  for (const auto& r : run_preset("fig3").rows)
    if (r.regime == Regime::HeatEngine && r.currents.eta) {
      eta_max = std::max(eta_max, *r.currents.eta);
      ++n_he;
    }
  for (const auto& r : run_preset("fig4").rows)
    if (r.regime == Regime::Refrigerator && r.currents.cop) {
      cop_max = std::max(cop_max, *r.currents.cop);
      ++n_r;
    }
  const bool ok = n_he > 0 && n_r > 0 && eta_max <= 0.95 * (1 + 1e-9) && cop_max <= 1.0 * (1 + 1e-9);
  return {ok, fmt::format("fig3 HE points {} max eta = {:.6f} (<= 0.95); fig4 R points {} max cop = {:.6f} (<= 1)",
                          n_he, eta_max, n_r, cop_max)};
}

// 5. Kernel vs time integration, and Liouvillian projection vs the 6x6 matrix.
Outcome oracle_equivalence() {
  std::mt19937_64 rng(505);
  double worst_td = 0.0, worst_proj = 0.0;
  for (int k = 0; k < 100; ++k) {
    const MachineConfig cfg = random_config(rng);
    const TapeQubitState tape = random_tape(rng);
    const Matrix4c kernel = steady_state(cfg, tape).density_matrix();
    const Matrix4c integrated =
        integrate_to_steady(build_liouvillian(cfg, tape), Matrix4c::Identity() / 4.0);
    worst_td = std::max(worst_td, trace_distance(kernel, integrated));
  }
  for (int k = 0; k < 1000; ++k) {
    const MachineConfig cfg = random_config(rng);
    const TapeQubitState tape = random_tape(rng);
    const Matrix6c diff = project_to_dynamical(build_liouvillian(cfg, tape)).entries -
                          build_dynamical_matrix(cfg, tape).entries;
    worst_proj = std::max(worst_proj, diff.cwiseAbs().maxCoeff());
  }
  return {worst_td <= 1e-8 && worst_proj <= 1e-13,
          fmt::format("100 configs max trace distance = {:.3g} (<= 1e-8); 1000 draws max entry diff = {:.3g} (<= 1e-13)",
                      worst_td, worst_proj)};
}

// 6. Exact-map vs perturbative rates along the phi ladder at the fig3 point.
Outcome order_ladder() {
  MachineConfig::Params p = find_preset("fig3")->params;
  const TapeQubitState tape = TapeQubitState::make(0.5, complex{0.4, 0.0});
  const double phis[4] = {0.08, 0.04, 0.02, 0.01};
  double err_s[4], err_w[4];
  for (int k = 0; k < 4; ++k) {
    p.phi = phis[k];
    const MachineConfig cfg = MachineConfig::make(p);
    const SteadyState pi = steady_state(cfg, tape);
    const CurrentSet cs = compute_currents(pi, tape, cfg, default_tolerance(cfg));
    const double s_exact = exact_map_entropy_delta(pi, tape, cfg.phi(), cfg.r());
    const double w_exact = exact_map_ergotropy_delta(pi, tape, cfg.phi(), cfg.r(), cfg.e_q());
    err_s[k] = std::abs(cs.s_tape - s_exact) / std::abs(s_exact);
    err_w[k] = std::abs(cs.ergotropy_rate - w_exact) / std::abs(w_exact);
  }
  bool ok = true;
  std::string rs, rw;
  for (int k = 0; k < 3; ++k) {
    const double a = err_s[k] / err_s[k + 1], b = err_w[k] / err_w[k + 1];
    ok = ok && a >= 1.6 && a <= 2.6 && b >= 1.6 && b <= 2.6;
    rs += fmt::format("{}{:.2f}", k ? "," : "", a);
    rw += fmt::format("{}{:.2f}", k ? "," : "", b);
  }
  return {ok, fmt::format("error ratios entropy [{}] ergotropy [{}] (each in [1.6, 2.6]); rel errors at phi=0.01: {:.2g}, {:.2g}",
                          rs, rw, err_s[3], err_w[3])};
}

// 7. The map leaves tau_v fixed up to third order.
Outcome fixed_point() {
  std::mt19937_64 rng(707);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const MachineConfig cfg = random_config(rng);
    const TapeQubitState tv = gibbs_qubit(virtual_beta(cfg), cfg.e_q());
    const SteadyState pi = steady_state(cfg, tv);
    const Matrix2c diff = tape_density(apply_map(pi, tv, cfg.phi())) - tape_density(tv);
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(diff, Eigen::EigenvaluesOnly);
    worst = std::max(worst, es.eigenvalues().cwiseAbs().sum() / (10.0 * std::pow(cfg.phi(), 3)));
  }
  return {worst <= 1.0, fmt::format("50 configs, max ||E(tau_v) - tau_v||_1 / (10 phi^3) = {:.3g}", worst)};
}

std::vector<double> scalars(const CurrentSet& c) {
  auto opt = [](const std::optional<double>& v) { return v.value_or(0.0); };
  return {c.delta, c.zeta,  c.e_tape, c.q_c,          c.q_h,   c.s_tape,  c.f_tape,
          c.f_classical,    c.c_coh,  c.s_tot,        c.ergotropy_rate,   opt(c.eta),
          opt(c.eta_over_carnot),     opt(c.cop),     opt(c.cop_over_carnot)};
}

// 8. Every scalar output depends on |c| only.
Outcome phase_invariance() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const MachineConfig cfg = random_config(rng);
    const TapeQubitState tape = random_tape(rng);
    const TapeQubitState real_tape{tape.p1, complex{std::abs(tape.c), 0.0}};
    const TapeQubitState rotated{tape.p1, std::polar(std::abs(tape.c), angle(rng))};
    const SweepRecord a = evaluate_point(cfg, real_tape);
    const SweepRecord b = evaluate_point(cfg, rotated);
    const auto va = scalars(a.currents), vb = scalars(b.currents);
    for (std::size_t i = 0; i < va.size(); ++i) {
      const double scale = std::max(std::abs(va[i]), cfg.e_q() * cfg.tape_rate_scale());
      worst = std::max(worst, std::abs(va[i] - vb[i]) / scale);
    }
    if (a.regime != b.regime) worst = kInf;
  }
  return {worst <= 1e-10, fmt::format("20 random phases, max relative change = {:.3g}", worst)};
}

// 9. Stochastic collision trajectories reproduce the kernel steady state.
Outcome monte_carlo() {
  const MachineConfig cfg = preset_config("fig3");
  const TapeQubitState tape = TapeQubitState::make(0.5, complex{0.4, 0.0});
  const TrajectoryResult traj = simulate_collisions(cfg, tape, 1e-3, 100000, 20240917);
  const Matrix4c exact = steady_state(cfg, tape).density_matrix();
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const complex d = traj.mean_state(i, j) - exact(i, j);
      const double zre = std::abs(d.real()) <= 1e-14 ? 0.0 : std::abs(d.real()) / traj.stderr_re(i, j);
      const double zim = std::abs(d.imag()) <= 1e-14 ? 0.0 : std::abs(d.imag()) / traj.stderr_im(i, j);
      worst = std::max({worst, zre, zim});
    }
  return {worst <= 3.0, fmt::format("{} collisions, max |deviation| / stderr = {:.3f} (<= 3)",
                                    traj.n_collisions, worst)};
}

// 10. Free-energy enhancement on the fig3 regime map.
Outcome fig3_enhancement() {
  const MachineConfig cfg = preset_config("fig3");
  const double unit = cfg.e_q() * cfg.tape_rate_scale();
  const SweepTable t = run_preset("fig3");
  auto f = [](const SweepRecord& r) { return r.currents.f_tape; };
  const SweepRecord* all = best_row(t, f, any_row);
  const SweepRecord* inc = best_row(t, f, incoherent);
  const double ratio = all->currents.f_tape / inc->currents.f_tape;
  const double inc_max = inc->currents.f_tape / unit;
  const bool ok = within(ratio, 6.0, 0.6) && within(inc_max, 0.10, 0.02) &&
                  std::abs(all->c) >= 0.35 && std::abs(all->c) <= 0.45 && all->p1 >= 0.45 && all->p1 <= 0.55;
  return {ok, fmt::format("max/incoherent max = {:.3f} (6 +- 0.6); incoherent max = {:.4f} E_q r phi^2 (0.10 +- 0.02); argmax (p1, |c|) = ({:.3f}, {:.3f})",
                          ratio, inc_max, all->p1, std::abs(all->c))};
}

struct Campaign {
  SweepTable table;
  const SweepRecord* best = nullptr;
  const SweepRecord* best_incoherent = nullptr;
};

Campaign campaign(const char* name, std::function<double(const SweepRecord&)> objective) {
  Campaign c{run_preset(name)};
  c.best = best_row(c.table, objective, any_row);
  c.best_incoherent = best_row(c.table, objective, incoherent);
  if (!c.best || !c.best_incoherent)
    throw std::runtime_error(std::string(name) + ": no feasible point on the disc or on c = 0");
  return c;
}

double free_power(const SweepRecord& r) { return r.currents.f_tape; }
double cooling_power(const SweepRecord& r) { return r.currents.q_c; }

// 11. Free-energy optimization campaign: enhancement factors and E_m*.
Outcome fig5_campaign(const std::vector<Campaign>& runs) {
  const double target_ratio[3] = {4.76, 6.1, 3.34};
  const double target_em[3] = {7.3, 3.9, 1.7};
  bool ok = true;
  std::string d;
  for (int k = 0; k < 3; ++k) {
    const Campaign& c = runs[k];
    const double ratio = c.best->currents.f_tape / c.best_incoherent->currents.f_tape;
    const bool r_ok = within(ratio, target_ratio[k], 0.05 * target_ratio[k]);
    const bool e_ok = within(c.best->e_m, target_em[k], 0.2);
    ok = ok && r_ok && e_ok;
    d += fmt::format("{}beta_c={}: ratio {:.3f} vs {} [{}], E_m* {:.3f} vs {} [{}]", k ? "; " : "",
                     find_preset(k == 0 ? "fig5a" : k == 1 ? "fig5b" : "fig5c")->params.beta_c, ratio,
                     target_ratio[k], r_ok ? "ok" : "off", c.best->e_m, target_em[k], e_ok ? "ok" : "off");
  }
  return {ok, d};
}

// 12. Efficiency at maximum free-energy power.
Outcome fig5_efficiency(const std::vector<Campaign>& runs) {
  auto eta_c = [](const SweepRecord& r) { return r.currents.eta_over_carnot.value_or(-kInf); };
  const SweepRecord* a = best_row(runs[0].table, eta_c, incoherent);
  const SweepRecord* c_inc = best_row(runs[2].table, eta_c, incoherent);
  const double eta_best = runs[2].best->currents.eta_over_carnot.value_or(0.0);
  const bool a_ok = within(eta_c(*a), 0.47, 0.03) && within(a->p1, 0.9, 0.03);
  const bool c_ok = within(eta_best, 0.78, 0.03) && within(eta_c(*c_inc), 0.75, 0.03) &&
                    within(c_inc->p1, 0.73, 0.03);
  return {a_ok && c_ok,
          fmt::format("beta_c=1 incoherent peak eta/eta_C {:.3f} at p1 {:.3f} (0.47 at 0.9) [{}]; beta_c=10 at max power {:.3f} (0.78), best incoherent {:.3f} at p1 {:.3f} (0.75 at 0.73) [{}]",
                      eta_c(*a), a->p1, a_ok ? "ok" : "off", eta_best, eta_c(*c_inc), c_inc->p1,
                      c_ok ? "ok" : "off")};
}

// Lowest p1 on the c = 0 line where cooling is achievable.
double incoherent_cooling_threshold(const SweepTable& t) {
  double lo = kInf;
  for (const auto& r : t.rows)
    if (r.status == "ok" && incoherent(r)) lo = std::min(lo, r.p1);
  return lo;
}

// 13. Cooling-power optimization campaign.
Outcome fig6_campaign(const std::vector<Campaign>& runs) {
  bool ok = true;
  std::string d;
  const double target_ratio[2] = {1.5, 2.4};
  const double target_p1[2] = {0.6, 0.55}, target_c[2] = {0.49, 0.50};
  for (int k = 0; k < 2; ++k) {
    const Campaign& c = runs[k + 1];
    const double ratio = c.best->currents.q_c / c.best_incoherent->currents.q_c;
    const bool r_ok = within(ratio, target_ratio[k], 0.15 * target_ratio[k]);
    const bool a_ok = within(c.best->p1, target_p1[k], 0.05) && within(std::abs(c.best->c), target_c[k], 0.05);
    ok = ok && r_ok && a_ok;
    d += fmt::format("beta_c={}: ratio {:.3f} vs {} [{}], argmax ({:.3f}, {:.3f}) [{}]; ", k == 0 ? 2 : 10,
                     ratio, target_ratio[k], r_ok ? "ok" : "off", c.best->p1, std::abs(c.best->c),
                     a_ok ? "ok" : "off");
  }
  const double th_a = incoherent_cooling_threshold(runs[0].table);
  const double th_b = incoherent_cooling_threshold(runs[1].table);
  // The threshold sits between the last infeasible and first feasible grid row.
  const double step = 0.5 * (runs[0].table.grid.p1_at(1) - runs[0].table.grid.p1_at(0));
  const bool th_ok = within(th_a - step, 0.38, 0.03) && within(th_b - step, 0.26, 0.03);
  ok = ok && th_ok;
  double em_lo = kInf, em_hi = -kInf;
  for (const auto& c : runs)
    for (const auto& r : c.table.rows)
      if (r.status == "ok") em_lo = std::min(em_lo, r.e_m), em_hi = std::max(em_hi, r.e_m);
  const bool em_ok = em_lo >= 1.0 && em_hi <= 4.5;
  ok = ok && em_ok;
  d += fmt::format("incoherent cooling thresholds {:.3f}, {:.3f} (0.38, 0.26) [{}]; E_m* range [{:.3f}, {:.3f}] [{}]",
                   th_a - step, th_b - step, th_ok ? "ok" : "off", em_lo, em_hi, em_ok ? "ok" : "off");
  return {ok, d};
}

// 14. Ergotropy map: zero line and enhancement.
Outcome fig7_ergotropy() {
  const MachineConfig cfg = preset_config("fig7");
  const double unit = cfg.e_q() * cfg.tape_rate_scale();
  const SweepTable t = run_preset("fig7");
  double zero_line = 0.0;
  for (const auto& r : t.rows)
    if (r.evaluated && incoherent(r) && r.p1 < 0.5)
      zero_line = std::max(zero_line, std::abs(r.currents.ergotropy_rate) / unit);
  auto w = [](const SweepRecord& r) { return r.currents.ergotropy_rate; };
  const SweepRecord* all = best_row(t, w, any_row);
  const SweepRecord* inc = best_row(t, w, incoherent);
  const double ratio = all->currents.ergotropy_rate / inc->currents.ergotropy_rate;
  const bool z_ok = zero_line <= 1e-12;
  const bool r_ok = within(ratio, 3.0, 0.45) && std::abs(all->c) >= 0.35 && std::abs(all->c) <= 0.45;
  return {z_ok && r_ok,
          fmt::format("max |W| on c=0, p1<0.5 = {:.3g} E_q r phi^2 [{}]; max/incoherent max = {:.3f} (3 +- 0.45) at (p1, |c|) = ({:.3f}, {:.3f}), incoherent max at p1 = {:.3f} [{}]",
                      zero_line, z_ok ? "ok" : "off", ratio, all->p1, std::abs(all->c), inc->p1,
                      r_ok ? "ok" : "off")};
}

// 15. Entropy production vs p1 at fixed |c|, and its growth towards c_max.
Outcome entropy_production_profile() {
  const MachineConfig cfg = preset_config("figEP");
  const double tol = default_tolerance(cfg);
  auto s_tot = [&](double p1, double c) {
    const TapeQubitState tape = TapeQubitState::make(p1, complex{c, 0.0});
    return compute_currents(steady_state(cfg, tape), tape, cfg, tol).s_tot;
  };
  bool ok = true;
  std::string d = "argmin p1:";
  for (double c : {0.0, 0.1, 0.2, 0.3}) {
    double best = kInf, at = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double p1 = 0.0005 * i;
      if (p1 <= 0.0 || p1 >= 1.0 || c * c > p1 * (1 - p1) * (1 - kPurityMargin)) continue;
      const double v = s_tot(p1, c);
      if (v < best) best = v, at = p1;
    }
    const bool c_ok = within(at, 0.65, 0.03);
    ok = ok && c_ok;
    d += fmt::format(" |c|={} -> {:.4f} [{}]", c, at, c_ok ? "ok" : "off");
  }
  int non_monotone = 0;
  for (double p1 : {0.1, 0.2, 0.3, 0.5, 0.65, 0.8, 0.9}) {
    const double c_max = std::sqrt(p1 * (1 - p1) * (1 - kPurityMargin));
    double prev = -kInf;
    for (int k = 0; k <= 20; ++k) {
      const double v = s_tot(p1, c_max * (0.8 + 0.01 * k));
      if (v < prev) ++non_monotone;
      prev = v;
    }
  }
  ok = ok && non_monotone == 0;
  d += fmt::format("; non-monotone steps in |c| in [0.8, 1] c_max: {}", non_monotone);
  return {ok, d};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    double budget_s;  // 0 when no runtime bound is stated
    std::function<Outcome()> run;
  };
  std::vector<Campaign> fig5, fig6;
  const std::vector<Entry> entries = {
      {"equilibrium_reversibility", 1.0, equilibrium},
      {"second_law", 30.0, second_law},
      {"current_proportionality", 0.0, proportionality},
      {"carnot_cop_bounds", 0.0, carnot_bounds},
      {"oracle_equivalence", 120.0, oracle_equivalence},
      {"perturbative_order_ladder", 10.0, order_ladder},
      {"fixed_point", 0.0, fixed_point},
      {"phase_invariance", 0.0, phase_invariance},
      {"monte_carlo", 300.0, monte_carlo},
      {"fig3_free_energy_enhancement", 60.0, fig3_enhancement},
      {"fig5_free_energy_campaign", 600.0,
       [&] {
         for (const char* n : {"fig5a", "fig5b", "fig5c"}) fig5.push_back(campaign(n, free_power));
         return fig5_campaign(fig5);
       }},
      {"fig5_efficiency_at_max_power", 0.0, [&] { return fig5_efficiency(fig5); }},
      {"fig6_cooling_campaign", 600.0,
       [&] {
         for (const char* n : {"fig6a", "fig6b", "fig6c"}) fig6.push_back(campaign(n, cooling_power));
         return fig6_campaign(fig6);
       }},
      {"fig7_ergotropy", 0.0, fig7_ergotropy},
      {"figEP_entropy_production", 0.0, entropy_production_profile},
  };

  int passed = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("threw: ") + ex.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.budget_s > 0.0 && dt > e.budget_s) {
      o.pass = false;
      o.detail += fmt::format("; over runtime budget {} s", e.budget_s);
    }
    passed += o.pass;
    std::printf("%s [%02zu] %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, e.name, dt, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("summary: %d/%zu criteria passed\n", passed, entries.size());
  return passed == static_cast<int>(entries.size()) ? 0 : 1;
}
