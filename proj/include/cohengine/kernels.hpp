#pragma once

#include <cstddef>
#include <string_view>

#include "cohengine/model.hpp"

namespace cohengine::kernels {

/// Structure-of-arrays batch of operating points that share the tape state
/// and coupling but differ in bath rates (e.g. an E_m scan).
struct SteadyBatchInput {
  const double* cold_up = nullptr;
  const double* cold_down = nullptr;
  const double* hot_up = nullptr;
  const double* hot_down = nullptr;
  double tape_up = 0.0;    // r phi^2 p1
  double tape_down = 0.0;  // r phi^2 p0
  double drive = 0.0;      // r phi
  complex c{0.0, 0.0};
};

struct SteadyBatchOutput {
  double* pi00 = nullptr;
  double* pi01 = nullptr;
  double* pi10 = nullptr;
  double* pi11 = nullptr;
  double* pi_c_re = nullptr;
  double* pi_c_im = nullptr;
};

/// Steady state by eliminating the inner coherence (it adds a symmetric
/// 01 <-> 10 rate) and applying the matrix-tree theorem to the 4-state chain.
void steady_batch_scalar(const SteadyBatchInput& in, const SteadyBatchOutput& out, std::size_t n);

#if defined(__x86_64__) || defined(__i386__)
void steady_batch_avx2(const SteadyBatchInput& in, const SteadyBatchOutput& out, std::size_t n);
#endif

/// Runtime-selected variant. COHENGINE_SIMD=scalar forces the reference path.
void steady_batch(const SteadyBatchInput& in, const SteadyBatchOutput& out, std::size_t n);

bool avx2_available();
std::string_view active_variant();

}  // namespace cohengine::kernels
