// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations for tests. Each one is the most direct
// (slowest) formulation of its rule and shares no code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

struct Grid {
  std::int64_t w = 0;
  std::int64_t h = 0;
};

// Nearest even integer >= 2; exact halves between two evens go down.
inline std::int64_t nearest_even(double x) {
  const double lo = 2.0 * std::floor(x / 2.0);
  const std::int64_t e = static_cast<std::int64_t>(x - lo > 1.0 ? lo + 2.0 : lo);
  return std::max<std::int64_t>(2, e);
}

// Largest-area even grid not exceeding the rounded uniform scaling of the
// native grid on either side, with area <= max_patches.
inline Grid brute_force_grid(std::int64_t width, std::int64_t height, std::int64_t min_patches,
                             std::int64_t max_patches) {
  const double gw = width / 16.0;
  const double gh = height / 16.0;
  const double area = gw * gh;
  const double target = std::clamp(area, static_cast<double>(min_patches),
                                   static_cast<double>(max_patches));
  const double s = std::sqrt(target / area);
  const std::int64_t cw = nearest_even(gw * s);
  const std::int64_t ch = nearest_even(gh * s);
  Grid best;
  for (std::int64_t a = 2; a <= cw; a += 2) {
    for (std::int64_t b = 2; b <= ch; b += 2) {
      if (a * b <= max_patches && a * b > best.w * best.h) best = {a, b};
    }
  }
  return best;
}

// Keep mask by full descending sort of (pinned, d, -index).
inline std::vector<std::uint8_t> evs_full_sort(const std::vector<double>& d, std::int64_t spatial,
                                               std::int64_t keep) {
  const auto n = static_cast<std::int64_t>(d.size());
  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    const bool pa = a < spatial;
    const bool pb = b < spatial;
    if (pa != pb) return pa;
    if (pa) return false;
    return d[static_cast<std::size_t>(a)] > d[static_cast<std::size_t>(b)];
  });
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
  for (std::int64_t i = 0; i < std::min(keep, n); ++i) mask[static_cast<std::size_t>(order[i])] = 1;
  return mask;
}

// 1 - cos in long double; 1 when either vector is zero.
inline double cosine_distance(const float* a, const float* b, std::int64_t n) {
  long double dot = 0, na = 0, nb = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) return 1.0;
  return static_cast<double>(1.0L - dot / std::sqrt(na * nb));
}

// First-fit decreasing over the whole input; returns bin fills.
inline std::vector<std::int64_t> first_fit_decreasing(std::vector<std::int64_t> lengths,
                                                      std::int64_t capacity) {
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  std::vector<std::int64_t> fills;
  for (const std::int64_t len : lengths) {
    auto it = std::find_if(fills.begin(), fills.end(),
                           [&](std::int64_t f) { return f + len <= capacity; });
    if (it == fills.end()) {
      fills.push_back(len);
    } else {
      *it += len;
    }
  }
  return fills;
}

// Audio tokens by integer arithmetic on whole milliseconds.
inline std::int64_t audio_tokens_ms(std::int64_t ms) {
  std::int64_t total = 0;
  for (std::int64_t start = 0; start < ms; start += 30000) {
    const std::int64_t len = std::min<std::int64_t>(30000, ms - start);
    const std::int64_t mel = (len + 9) / 10;
    total += (mel + 7) / 8;
  }
  return total;
}

}  // namespace oracle
