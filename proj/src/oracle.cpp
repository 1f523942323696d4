#include "cohengine/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "cohengine/error.hpp"
#include "cohengine/tapemap.hpp"

namespace cohengine {

namespace {

using Vector16c = Eigen::Matrix<complex, 16, 1>;
using Matrix2c = Eigen::Matrix<complex, 2, 2>;

Matrix2c sm2() {
  Matrix2c s = Matrix2c::Zero();
  s(0, 1) = 1.0;
  return s;
}

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

Matrix4c dissipate(const Matrix4c& l, const Matrix4c& rho) {
  const Matrix4c ld = l.adjoint();
  const Matrix4c ldl = ld * l;
  return l * rho * ld - 0.5 * (ldl * rho + rho * ldl);
}

struct Channel {
  double rate;
  Matrix4c op;
};

std::vector<Channel> bath_channels(const MachineConfig& cfg) {
  const Matrix2c sm = sm2();
  const Matrix2c sp = sm.transpose();
  const Matrix2c id = Matrix2c::Identity();
  const RatePair cold = bath_rates(cfg.beta_c(), cfg.e_c(), cfg.gamma0());
  const RatePair hot = bath_rates(cfg.beta_h(), cfg.e_h(), cfg.gamma0());
  return {{cold.down, kron2(sm, id)},
          {cold.up, kron2(sp, id)},
          {hot.down, kron2(id, sm)},
          {hot.up, kron2(id, sp)}};
}

// A = s_c+ s_h- = |10><01|.
Matrix4c swap_operator() {
  Matrix4c a = Matrix4c::Zero();
  a(machine_index(1, 0), machine_index(0, 1)) = 1.0;
  return a;
}

template <class F>
Liouvillian tabulate(F&& generator) {
  Liouvillian l;
  for (int k = 0; k < 16; ++k) {
    Matrix4c e = Matrix4c::Zero();
    e(k / 4, k % 4) = 1.0;
    l.entries.col(k) = vectorize(generator(e));
  }
  return l;
}

double trace_norm_change(const Vector16c& a, const Vector16c& b) {
  const Matrix4c d = unvectorize(a - b);
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

Matrix16c matrix_power(Matrix16c base, std::int64_t n) {
  Matrix16c out = Matrix16c::Identity();
  while (n > 0) {
    if (n & 1) out = base * out;
    base = base * base;
    n >>= 1;
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Single-qubit thermal relaxation over time t applied to one factor of rho.
void relax_qubit(Matrix4c& rho, int qubit, const RatePair& rates, double t) {
  const double total = rates.up + rates.down;
  const double pe = rates.up / total;
  const double e = std::exp(-total * t);
  const double coh = std::exp(-0.5 * total * t);
  const double a00 = 1.0 - pe * (1.0 - e), a01 = (1.0 - pe) * (1.0 - e);
  const double a10 = pe * (1.0 - e), a11 = pe + (1.0 - pe) * e;
  auto idx = [qubit](int bit, int other) {
    return qubit == 0 ? machine_index(bit, other) : machine_index(other, bit);
  };
  for (int o = 0; o < 2; ++o) {
    for (int op = 0; op < 2; ++op) {
      const complex x00 = rho(idx(0, o), idx(0, op));
      const complex x11 = rho(idx(1, o), idx(1, op));
      rho(idx(0, o), idx(0, op)) = a00 * x00 + a01 * x11;
      rho(idx(1, o), idx(1, op)) = a10 * x00 + a11 * x11;
      rho(idx(0, o), idx(1, op)) *= coh;
      rho(idx(1, o), idx(0, op)) *= coh;
    }
  }
}

Matrix4c collide(const Matrix8c& u, const Matrix4c& rho, const Matrix2c& rq) {
  Matrix8c joint;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) joint(2 * i + k, 2 * j + l) = rho(i, j) * rq(k, l);
  const Matrix8c out = u * joint * u.adjoint();
  Matrix4c reduced;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) reduced(i, j) = out(2 * i, 2 * j) + out(2 * i + 1, 2 * j + 1);
  return reduced;
}

}  // namespace

Vector16c vectorize(const Matrix4c& rho) {
  Vector16c v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v(vec_index(i, j)) = rho(i, j);
  return v;
}

Matrix4c unvectorize(const Vector16c& v) {
  Matrix4c rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho(i, j) = v(vec_index(i, j));
  return rho;
}

Liouvillian build_liouvillian(const MachineConfig& cfg, const TapeQubitState& tape) {
  const Matrix4c a = swap_operator();
  const double k = cfg.r() * cfg.phi();
  const Matrix4c v = k * (tape.c * a + std::conj(tape.c) * a.adjoint());
  std::vector<Channel> channels = bath_channels(cfg);
  const RatePair q = tape_rates(cfg, tape);
  channels.push_back({q.down, a});
  channels.push_back({q.up, a.adjoint()});
  const complex i{0.0, 1.0};
  return tabulate([&](const Matrix4c& rho) {
    Matrix4c out = -i * (v * rho - rho * v);
    for (const auto& ch : channels) out += ch.rate * dissipate(ch.op, rho);
    return out;
  });
}

Liouvillian build_bath_liouvillian(const MachineConfig& cfg) {
  const std::vector<Channel> channels = bath_channels(cfg);
  return tabulate([&](const Matrix4c& rho) {
    Matrix4c out = Matrix4c::Zero();
    for (const auto& ch : channels) out += ch.rate * dissipate(ch.op, rho);
    return out;
  });
}

DynamicalMatrix project_to_dynamical(const Liouvillian& l) {
  const std::array<int, 6> slots = {
      vec_index(0, 0), vec_index(1, 1), vec_index(2, 2), vec_index(3, 3),
      vec_index(machine_index(1, 0), machine_index(0, 1)),
      vec_index(machine_index(0, 1), machine_index(1, 0))};
  DynamicalMatrix m;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m.entries(r, c) = l.entries(slots[r], slots[c]);
  return m;
}

double trace_distance(const Matrix4c& a, const Matrix4c& b) {
  const Matrix4c d = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double infinity_norm(const Liouvillian& l) {
  return l.entries.cwiseAbs().rowwise().sum().maxCoeff();
}

Matrix4c integrate_to_steady(const Liouvillian& l, const Matrix4c& initial,
                             const IntegrationOptions& opt) {
  const double norm = infinity_norm(l);
  const double dt_max = 0.1 / norm;
  const double dt = opt.dt > 0.0 ? std::min(opt.dt, dt_max) : dt_max;
  if (opt.tol < 1e-12) throw Error(ErrorKind::InvalidConfig, "tol: must be >= 1e-12");

  // RK4 applied to a linear generator is multiplication by this polynomial in h L.
  const Matrix16c hl = dt * l.entries;
  const Matrix16c hl2 = hl * hl;
  const Matrix16c step = Matrix16c::Identity() + hl + hl2 / 2.0 + hl2 * hl / 6.0 +
                         hl2 * hl2 / 24.0;
  const Matrix16c probe = matrix_power(step, opt.probe_steps);
  const Matrix16c jump = matrix_power(step, opt.jump_steps);
  const double window = dt * opt.probe_steps;

  Vector16c rho = vectorize(initial);
  std::int64_t steps = 0;
  while (steps < opt.max_steps) {
    const Vector16c next = probe * rho;
    steps += opt.probe_steps;
    if (trace_norm_change(next, rho) < opt.tol * window) {
      rho = next;
      Matrix4c out = unvectorize(rho);
      out = 0.5 * (out + out.adjoint()).eval();
      return out / out.trace().real();
    }
    rho = jump * next;
    steps += opt.jump_steps;
  }
  throw Error(ErrorKind::SteadyStateTimeout,
              "integration did not reach the steady state within max_steps");
}

Matrix8c collision_unitary(double phi) {
  Matrix8c u = Matrix8c::Identity();
  // H couples |01>|0> and |10>|1> only.
  const int a = 2 * machine_index(0, 1) + 0;
  const int b = 2 * machine_index(1, 0) + 1;
  const complex i{0.0, 1.0};
  u(a, a) = std::cos(phi);
  u(b, b) = std::cos(phi);
  u(a, b) = -i * std::sin(phi);
  u(b, a) = -i * std::sin(phi);
  return u;
}

Matrix8c bare_hamiltonian(const MachineConfig& cfg) {
  Matrix8c h = Matrix8c::Zero();
  for (int cold = 0; cold < 2; ++cold)
    for (int hot = 0; hot < 2; ++hot)
      for (int q = 0; q < 2; ++q) {
        const int k = 2 * machine_index(cold, hot) + q;
        h(k, k) = cold * cfg.e_c() + hot * cfg.e_h() + q * cfg.e_q();
      }
  return h;
}

Matrix4c propagate_baths(const MachineConfig& cfg, const Matrix4c& rho, double t) {
  Matrix4c out = rho;
  relax_qubit(out, 0, bath_rates(cfg.beta_c(), cfg.e_c(), cfg.gamma0()), t);
  relax_qubit(out, 1, bath_rates(cfg.beta_h(), cfg.e_h(), cfg.gamma0()), t);
  return out;
}

TrajectoryResult simulate_collisions(const MachineConfig& cfg, const TapeQubitState& tape,
                                     double tau, std::int64_t n_collisions, std::uint64_t seed) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorKind::InvalidConfig, "tau: must be > 0");
  const std::int64_t per_stream = n_collisions / kTrajectoryStreams;
  const std::int64_t burn = per_stream / 5;
  const std::int64_t batch = (per_stream - burn) / kBatchesPerStream;
  if (batch < 1) throw Error(ErrorKind::InvalidConfig, "n_collisions: too few for batch means");

  TrajectoryResult res;
  res.seed = seed;
  if (cfg.gamma0() * tau > 0.01)
    res.warnings.emplace_back("gamma0*tau > 0.01: baths act during the collision");

  const Matrix8c u = collision_unitary(cfg.phi());
  const Matrix2c rq = tape_density(tape);
  const Matrix4c start = local_gibbs_state(cfg).density_matrix();

  std::vector<Matrix4c> means;
  means.reserve(kTrajectoryStreams * kBatchesPerStream);
  for (int s = 0; s < kTrajectoryStreams; ++s) {
    std::mt19937_64 rng(splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(s)));
    std::exponential_distribution<double> wait(cfg.r());
    Matrix4c rho = start;
    Matrix4c acc = Matrix4c::Zero();
    std::int64_t in_batch = 0;
    const std::int64_t used = burn + batch * kBatchesPerStream;
    for (std::int64_t n = 0; n < used; ++n) {
      rho = propagate_baths(cfg, rho, wait(rng));
      if (n >= burn) {
        acc += rho;
        if (++in_batch == batch) {
          means.push_back(acc / static_cast<double>(batch));
          acc.setZero();
          in_batch = 0;
        }
      }
      rho = collide(u, rho, rq);
    }
    res.n_collisions += used;
  }

  const double m = static_cast<double>(means.size());
  Matrix4c mean = Matrix4c::Zero();
  for (const auto& b : means) mean += b;
  mean /= m;
  Matrix4d var_re = Matrix4d::Zero(), var_im = Matrix4d::Zero();
  for (const auto& b : means) {
    const Matrix4c d = b - mean;
    var_re += d.real().cwiseAbs2();
    var_im += d.imag().cwiseAbs2();
  }
  res.stderr_re = (var_re / (m * (m - 1.0))).cwiseSqrt();
  res.stderr_im = (var_im / (m * (m - 1.0))).cwiseSqrt();
  res.mean_state = 0.5 * (mean + mean.adjoint());
  return res;
}

double von_neumann_entropy(const TapeQubitState& tape) {
  const QubitSpectrum spec = qubit_spectrum(tape);
  auto h = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  return h(spec.plus) + h(spec.minus);
}

double exact_map_entropy_delta(const SteadyState& pi, const TapeQubitState& tape, double phi,
                               double r) {
  const TapeQubitState out = apply_map(pi, tape, phi);
  return r * (von_neumann_entropy(out) - von_neumann_entropy(tape));
}

double exact_map_ergotropy_delta(const SteadyState& pi, const TapeQubitState& tape, double phi,
                                 double r, double gap) {
  const TapeQubitState out = apply_map(pi, tape, phi);
  auto w = [gap](const TapeQubitState& t) {
    return gap * (t.p1 - qubit_spectrum(t).minus);
  };
  return r * (w(out) - w(tape));
}

}  // namespace cohengine
