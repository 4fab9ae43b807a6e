// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/evs_kernels.hpp"

namespace omnitok::evs::kernels {

CosineStats cosine_stats_scalar(const float* a, const float* b, std::size_t n) noexcept {
  double dot[4] = {0.0, 0.0, 0.0, 0.0};
  double na[4] = {0.0, 0.0, 0.0, 0.0};
  double nb[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a[i];
    const double y = b[i];
    dot[i % 4] += x * y;
    na[i % 4] += x * x;
    nb[i % 4] += y * y;
  }
  return {(dot[0] + dot[1]) + (dot[2] + dot[3]), (na[0] + na[1]) + (na[2] + na[3]),
          (nb[0] + nb[1]) + (nb[2] + nb[3])};
}

}  // namespace omnitok::evs::kernels
