// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace omnitok {

// SplitMix64. Fully specified integer recurrence, so streams are identical
// on every platform and compiler.
class SplitMix64 {
public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Top 24 bits -> [-1, 1); every value is exactly representable as float.
  constexpr float next_signed_unit() noexcept {
    const auto bits = static_cast<std::uint32_t>(next() >> 40);
    return 2.0f * (static_cast<float>(bits) * 0x1.0p-24f) - 1.0f;
  }

  // Uniform integer in [0, bound) by rejection; bound > 0.
  constexpr std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

private:
  std::uint64_t state_;
};

}  // namespace omnitok
