// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include <arm_neon.h>

#include "omnitok/evs_kernels.hpp"

namespace omnitok::evs::kernels {

CosineStats cosine_stats_neon(const float* a, const float* b, std::size_t n) noexcept {
  // lo holds lanes {0, 1}, hi holds lanes {2, 3}.
  float64x2_t dot_lo = vdupq_n_f64(0.0), dot_hi = vdupq_n_f64(0.0);
  float64x2_t na_lo = vdupq_n_f64(0.0), na_hi = vdupq_n_f64(0.0);
  float64x2_t nb_lo = vdupq_n_f64(0.0), nb_hi = vdupq_n_f64(0.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t xf = vld1q_f32(a + i);
    const float32x4_t yf = vld1q_f32(b + i);
    const float64x2_t x_lo = vcvt_f64_f32(vget_low_f32(xf));
    const float64x2_t x_hi = vcvt_high_f64_f32(xf);
    const float64x2_t y_lo = vcvt_f64_f32(vget_low_f32(yf));
    const float64x2_t y_hi = vcvt_high_f64_f32(yf);
    dot_lo = vaddq_f64(dot_lo, vmulq_f64(x_lo, y_lo));
    dot_hi = vaddq_f64(dot_hi, vmulq_f64(x_hi, y_hi));
    na_lo = vaddq_f64(na_lo, vmulq_f64(x_lo, x_lo));
    na_hi = vaddq_f64(na_hi, vmulq_f64(x_hi, x_hi));
    nb_lo = vaddq_f64(nb_lo, vmulq_f64(y_lo, y_lo));
    nb_hi = vaddq_f64(nb_hi, vmulq_f64(y_hi, y_hi));
  }

  double dot[4] = {vgetq_lane_f64(dot_lo, 0), vgetq_lane_f64(dot_lo, 1),
                   vgetq_lane_f64(dot_hi, 0), vgetq_lane_f64(dot_hi, 1)};
  double na[4] = {vgetq_lane_f64(na_lo, 0), vgetq_lane_f64(na_lo, 1),
                  vgetq_lane_f64(na_hi, 0), vgetq_lane_f64(na_hi, 1)};
  double nb[4] = {vgetq_lane_f64(nb_lo, 0), vgetq_lane_f64(nb_lo, 1),
                  vgetq_lane_f64(nb_hi, 0), vgetq_lane_f64(nb_hi, 1)};
  for (std::size_t lane = 0; i < n; ++i, ++lane) {
    const double x = a[i];
    const double y = b[i];
    dot[lane] += x * y;
    na[lane] += x * x;
    nb[lane] += y * y;
  }
  return {(dot[0] + dot[1]) + (dot[2] + dot[3]), (na[0] + na[1]) + (na[2] + na[3]),
          (nb[0] + nb[1]) + (nb[2] + nb[3])};
}

}  // namespace omnitok::evs::kernels
