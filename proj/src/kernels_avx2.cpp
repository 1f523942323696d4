// AVX2 variant of the batched steady-state kernel. No FMA, so results match
// the scalar reference operation for operation.

#if defined(__x86_64__) || defined(__i386__)

#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC target("avx2")
#elif defined(__clang__)
#pragma clang attribute push(__attribute__((target("avx2"))), apply_to = function)
#endif

#include <immintrin.h>

#include "cohengine/kernels.hpp"
#include "kernel_trees.hpp"

namespace cohengine::kernels {

void steady_batch_avx2(const SteadyBatchInput& in, const SteadyBatchOutput& out, std::size_t n) {
  constexpr std::size_t kWidth = 4;
  const std::size_t simd_end = n / kWidth * kWidth;

  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d neg_half_tape = _mm256_set1_pd(-0.5 * (in.tape_up + in.tape_down));
  const __m256d drive2c2 = _mm256_set1_pd(2.0 * in.drive * in.drive * std::norm(in.c));
  const __m256d tape_up = _mm256_set1_pd(in.tape_up);
  const __m256d tape_down = _mm256_set1_pd(in.tape_down);
  const __m256d drive = _mm256_set1_pd(in.drive);
  const __m256d neg_c_im = _mm256_set1_pd(-in.c.imag());
  const __m256d c_re = _mm256_set1_pd(in.c.real());
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign = _mm256_set1_pd(-0.0);

  for (std::size_t i = 0; i < simd_end; i += kWidth) {
    const __m256d cu = _mm256_loadu_pd(in.cold_up + i);
    const __m256d cd = _mm256_loadu_pd(in.cold_down + i);
    const __m256d hu = _mm256_loadu_pd(in.hot_up + i);
    const __m256d hd = _mm256_loadu_pd(in.hot_down + i);
    const __m256d bath = _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(cu, cd), hu), hd);
    const __m256d d = _mm256_sub_pd(neg_half_tape, _mm256_mul_pd(half, bath));
    const __m256d kappa = _mm256_div_pd(drive2c2, _mm256_xor_pd(d, sign));
    const __m256d w[detail::kDirectedEdges] = {hu, hd, cu, cd, cu, cd, hu, hd,
                                               _mm256_add_pd(tape_down, kappa),
                                               _mm256_add_pd(tape_up, kappa)};
    __m256d z[detail::kStates];
    for (int root = 0; root < detail::kStates; ++root) {
      __m256d acc = _mm256_setzero_pd();
      for (const auto& e : detail::kOrientedTrees[root]) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(w[e[0]], w[e[1]]), w[e[2]]));
      }
      z[root] = acc;
    }
    const __m256d total = _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(z[0], z[1]), z[2]), z[3]);
    const __m256d inv = _mm256_div_pd(one, total);
    const __m256d p01 = _mm256_mul_pd(z[1], inv);
    const __m256d p10 = _mm256_mul_pd(z[2], inv);
    const __m256d g = _mm256_div_pd(_mm256_mul_pd(drive, _mm256_sub_pd(p01, p10)), d);
    _mm256_storeu_pd(out.pi00 + i, _mm256_mul_pd(z[0], inv));
    _mm256_storeu_pd(out.pi01 + i, p01);
    _mm256_storeu_pd(out.pi10 + i, p10);
    _mm256_storeu_pd(out.pi11 + i, _mm256_mul_pd(z[3], inv));
    _mm256_storeu_pd(out.pi_c_re + i, _mm256_mul_pd(neg_c_im, g));
    _mm256_storeu_pd(out.pi_c_im + i, _mm256_mul_pd(c_re, g));
  }

  if (simd_end < n) {
    SteadyBatchInput tail = in;
    tail.cold_up += simd_end;
    tail.cold_down += simd_end;
    tail.hot_up += simd_end;
    tail.hot_down += simd_end;
    const SteadyBatchOutput rest{out.pi00 + simd_end,   out.pi01 + simd_end,
                                 out.pi10 + simd_end,   out.pi11 + simd_end,
                                 out.pi_c_re + simd_end, out.pi_c_im + simd_end};
    steady_batch_scalar(tail, rest, n - simd_end);
  }
}

}  // namespace cohengine::kernels

#if defined(__clang__)
#pragma clang attribute pop
#endif

#endif
