// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include <immintrin.h>

#include "omnitok/evs_kernels.hpp"

namespace omnitok::evs::kernels {

namespace {

inline double fold(__m256d v, double tail0, double tail1, double tail2) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  lane[0] += tail0;
  lane[1] += tail1;
  lane[2] += tail2;
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

CosineStats cosine_stats_avx2(const float* a, const float* b, std::size_t n) noexcept {
  __m256d dot = _mm256_setzero_pd();
  __m256d na = _mm256_setzero_pd();
  __m256d nb = _mm256_setzero_pd();

  // Four floats widen to four double lanes, matching lane = i % 4.
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_cvtps_pd(_mm_loadu_ps(a + i));
    const __m256d y = _mm256_cvtps_pd(_mm_loadu_ps(b + i));
    dot = _mm256_add_pd(dot, _mm256_mul_pd(x, y));
    na = _mm256_add_pd(na, _mm256_mul_pd(x, x));
    nb = _mm256_add_pd(nb, _mm256_mul_pd(y, y));
  }

  // Tail of at most three elements lands in lanes 0..2.
  double tail_dot[3] = {0.0, 0.0, 0.0};
  double tail_na[3] = {0.0, 0.0, 0.0};
  double tail_nb[3] = {0.0, 0.0, 0.0};
  for (std::size_t lane = 0; i < n; ++i, ++lane) {
    const double x = a[i];
    const double y = b[i];
    tail_dot[lane] = x * y;
    tail_na[lane] = x * x;
    tail_nb[lane] = y * y;
  }

  return {fold(dot, tail_dot[0], tail_dot[1], tail_dot[2]),
          fold(na, tail_na[0], tail_na[1], tail_na[2]),
          fold(nb, tail_nb[0], tail_nb[1], tail_nb[2])};
}

}  // namespace omnitok::evs::kernels
