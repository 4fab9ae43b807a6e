// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <string>

#include "omnitok/error.hpp"
#include "omnitok/evs_kernels.hpp"

namespace omnitok::evs::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) noexcept {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  if (name == "neon") return Isa::Neon;
  return std::nullopt;
}

bool is_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(OMNITOK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(OMNITOK_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (is_supported(isa)) out.push_back(isa);
  }
  return out;
}

Isa default_isa() {
  if (const char* forced = std::getenv("OMNITOK_ISA")) {
    if (auto isa = parse_isa(forced); isa && is_supported(*isa)) return *isa;
  }
  if (is_supported(Isa::Avx2)) return Isa::Avx2;
  if (is_supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

CosineFn kernel_for(Isa isa) {
  require(is_supported(isa), ErrorCode::InvalidInput,
          "kernel '" + std::string(to_string(isa)) + "' is not available on this machine");
  switch (isa) {
#if defined(OMNITOK_HAVE_AVX2)
    case Isa::Avx2: return &cosine_stats_avx2;
#endif
#if defined(OMNITOK_HAVE_NEON)
    case Isa::Neon: return &cosine_stats_neon;
#endif
    default: return &cosine_stats_scalar;
  }
}

CosineStats cosine_stats(Isa isa, std::span<const float> a, std::span<const float> b) {
  require(a.size() == b.size(), ErrorCode::InvalidInput, "cosine operands differ in length");
  return kernel_for(isa)(a.data(), b.data(), a.size());
}

}  // namespace omnitok::evs::kernels
