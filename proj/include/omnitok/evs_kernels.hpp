// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace omnitok::evs::kernels {

// Dot product and squared norms of two float vectors, accumulated in double.
//
// Every implementation follows one summation order so results are
// bit-identical across ISAs: element i goes to lane i % 4, each lane sums
// in increasing i, and lanes combine as (l0 + l1) + (l2 + l3). Products of
// two floats are exact in double, so fused multiply-add cannot change a
// result either.
struct CosineStats {
  double dot = 0.0;
  double norm2_a = 0.0;
  double norm2_b = 0.0;
};

using CosineFn = CosineStats (*)(const float* a, const float* b, std::size_t n) noexcept;

CosineStats cosine_stats_scalar(const float* a, const float* b, std::size_t n) noexcept;
#if defined(OMNITOK_HAVE_AVX2)
CosineStats cosine_stats_avx2(const float* a, const float* b, std::size_t n) noexcept;
#endif
#if defined(OMNITOK_HAVE_NEON)
CosineStats cosine_stats_neon(const float* a, const float* b, std::size_t n) noexcept;
#endif

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view name) noexcept;

/// Built into this binary and usable on the running CPU.
bool is_supported(Isa isa) noexcept;
std::vector<Isa> supported_isas();

/// Widest supported ISA, unless OMNITOK_ISA names another supported one.
Isa default_isa();

/// Throws InvalidInput for an ISA that is not supported here.
CosineFn kernel_for(Isa isa);

CosineStats cosine_stats(Isa isa, std::span<const float> a, std::span<const float> b);

}  // namespace omnitok::evs::kernels
