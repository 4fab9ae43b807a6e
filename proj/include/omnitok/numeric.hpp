// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>

namespace omnitok {

// Token arithmetic takes ceil/floor of products like (1 - q) * N or
// seconds * 100. Binary rounding can push a mathematically integral product
// a few ulps off (e.g. (1 - 0.7) * 10 == 3.0000000000000004), so values
// within a relative 1e-9 of an integer snap to it first.
inline constexpr double kSnapTolerance = 1e-9;

inline double snap_to_integer(double x) {
  const double nearest = std::round(x);
  const double scale = std::fabs(x) > 1.0 ? std::fabs(x) : 1.0;
  return std::fabs(x - nearest) <= kSnapTolerance * scale ? nearest : x;
}

inline std::int64_t snapped_ceil(double x) {
  return static_cast<std::int64_t>(std::ceil(snap_to_integer(x)));
}

inline std::int64_t snapped_floor(double x) {
  return static_cast<std::int64_t>(std::floor(snap_to_integer(x)));
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// ceil((1 - q) * n): the token budget kept at pruning rate q.
inline std::int64_t keep_budget(double q, std::int64_t n) {
  return snapped_ceil((1.0 - q) * static_cast<double>(n));
}

}  // namespace omnitok
