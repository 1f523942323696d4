#include "cohengine/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "kernel_trees.hpp"

namespace cohengine::kernels {

using detail::kOrientedTrees;

void steady_batch_scalar(const SteadyBatchInput& in, const SteadyBatchOutput& out, std::size_t n) {
  const double drive2c2 = 2.0 * in.drive * in.drive * std::norm(in.c);
  const double tape_sum = in.tape_up + in.tape_down;
  for (std::size_t i = 0; i < n; ++i) {
    const double cu = in.cold_up[i], cd = in.cold_down[i];
    const double hu = in.hot_up[i], hd = in.hot_down[i];
    const double d = -0.5 * tape_sum - 0.5 * (((cu + cd) + hu) + hd);
    const double kappa = drive2c2 / -d;
    const double w[detail::kDirectedEdges] = {hu, hd, cu, cd, cu, cd, hu, hd,
                                              in.tape_down + kappa, in.tape_up + kappa};
    double z[detail::kStates];
    for (int root = 0; root < detail::kStates; ++root) {
      double acc = 0.0;
      for (const auto& e : kOrientedTrees[root]) acc = acc + (w[e[0]] * w[e[1]]) * w[e[2]];
      z[root] = acc;
    }
    const double inv = 1.0 / (((z[0] + z[1]) + z[2]) + z[3]);
    const double p01 = z[1] * inv, p10 = z[2] * inv;
    const double g = in.drive * (p01 - p10) / d;
    out.pi00[i] = z[0] * inv;
    out.pi01[i] = p01;
    out.pi10[i] = p10;
    out.pi11[i] = z[3] * inv;
    out.pi_c_re[i] = -in.c.imag() * g;
    out.pi_c_im[i] = in.c.real() * g;
  }
}

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

namespace {

bool forced_scalar() {
  static const bool forced = [] {
    const char* v = std::getenv("COHENGINE_SIMD");
    return v != nullptr && std::strcmp(v, "scalar") == 0;
  }();
  return forced;
}

}  // namespace

std::string_view active_variant() {
  if (!forced_scalar() && avx2_available()) return "avx2";
  return "scalar";
}

void steady_batch(const SteadyBatchInput& in, const SteadyBatchOutput& out, std::size_t n) {
#if defined(__x86_64__) || defined(__i386__)
  if (!forced_scalar() && avx2_available()) {
    steady_batch_avx2(in, out, n);
    return;
  }
#endif
  steady_batch_scalar(in, out, n);
}

}  // namespace cohengine::kernels
