// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/footprint.hpp"

#include <cmath>

#include "omnitok/error.hpp"

namespace omnitok::footprint {

void validate(const ParamGroupInventory& inventory) {
  require(!inventory.groups.empty(), ErrorCode::InvalidInput, "inventory has no groups");
  for (const auto& g : inventory.groups) {
    require(g.param_count > 0, ErrorCode::InvalidInput,
            "group '" + g.name + "' must have a positive parameter count");
    require(g.bits_per_weight > 0.0 && std::isfinite(g.bits_per_weight), ErrorCode::InvalidInput,
            "group '" + g.name + "' must have positive bits per weight");
  }
}

Footprint effective_bpw(const ParamGroupInventory& inventory, BpwScope scope) {
  validate(inventory);
  Footprint fp;
  double scoped_bits = 0.0;
  double total_bits = 0.0;
  for (const auto& g : inventory.groups) {
    const double count = static_cast<double>(g.param_count);
    const double bits = count * g.bits_per_weight;
    total_bits += bits;
    fp.total_params += count;
    if (scope == BpwScope::WholeModel || !g.encoder) {
      scoped_bits += bits;
      fp.bpw_params += count;
    }
  }
  require(fp.bpw_params > 0.0, ErrorCode::InvalidInput,
          "inventory has no language-model groups to average over");
  fp.bits_per_weight = scoped_bits / fp.bpw_params;
  fp.total_bytes = total_bits / 8.0;
  return fp;
}

std::string_view to_string(Precision precision) noexcept {
  switch (precision) {
    case Precision::Bf16: return "bf16";
    case Precision::Fp8: return "fp8";
    case Precision::Nvfp4: return "nvfp4";
  }
  return "unknown";
}

std::optional<Precision> parse_precision(std::string_view name) noexcept {
  if (name == "bf16") return Precision::Bf16;
  if (name == "fp8") return Precision::Fp8;
  if (name == "nvfp4") return Precision::Nvfp4;
  return std::nullopt;
}

ParamGroupInventory reference_inventory(Precision precision) {
  // Split chosen so the FP8 and NVFP4 rules land on the published sizes:
  // encoders ~1.25e9, LM 29.5e9 dominated by routed experts.
  struct Row {
    const char* name;
    std::int64_t params;
    double bf16, fp8, nvfp4;
    bool encoder;
  };
  static constexpr Row kRows[] = {
      {"lm.routed_experts", 27'540'000'000, kBf16Bits, kFp8Bits, kNvfp4Bits, false},
      {"lm.mamba_io_proj+shared_experts+attn_o_proj", 1'010'000'000, kBf16Bits, kFp8Bits,
       kFp8Bits, false},
      {"lm.other_linear", 200'000'000, kBf16Bits, kFp8Bits, kBf16Bits, false},
      {"lm.embedding+lm_head+router+norms", 750'000'000, kBf16Bits, kBf16Bits, kBf16Bits, false},
      {"vision_encoder+projector", 700'000'000, kBf16Bits, kBf16Bits, kBf16Bits, true},
      {"audio_encoder+projector", 550'000'000, kBf16Bits, kBf16Bits, kBf16Bits, true},
  };

  ParamGroupInventory inv;
  inv.name = std::string(to_string(precision));
  for (const Row& row : kRows) {
    const double bits = precision == Precision::Bf16  ? row.bf16
                        : precision == Precision::Fp8 ? row.fp8
                                                      : row.nvfp4;
    inv.groups.push_back({row.name, row.params, bits, row.encoder});
  }
  return inv;
}

PublishedFootprint published_footprint(Precision precision) noexcept {
  switch (precision) {
    case Precision::Bf16: return {61.5, 16.0};
    case Precision::Fp8: return {32.8, 8.5};
    case Precision::Nvfp4: return {20.9, 4.98};
  }
  return {0.0, 0.0};
}

CacheConfig reference_cache_config() {
  CacheConfig config;
  config.layers_attention = 6;
  config.layers_ssm = 23;
  // K and V, 2 KV heads of width 128, one byte each.
  config.kv_bytes_per_token_per_layer = 2 * 2 * 128;
  // 64 heads x 64 head dim x 128 state, four bytes each.
  config.ssm_state_bytes_per_layer = std::int64_t{64} * 64 * 128 * 4;
  return config;
}

std::int64_t cache_bytes(const CacheConfig& config, std::int64_t tokens, std::int64_t concurrency) {
  require(tokens >= 0 && concurrency >= 0, ErrorCode::InvalidInput,
          "tokens and concurrency must be non-negative");
  require(config.layers_attention >= 0 && config.layers_ssm >= 0 &&
              config.kv_bytes_per_token_per_layer >= 0 && config.ssm_state_bytes_per_layer >= 0,
          ErrorCode::InvalidInput, "cache config counts must be non-negative");
  return concurrency * (tokens * config.layers_attention * config.kv_bytes_per_token_per_layer +
                        config.layers_ssm * config.ssm_state_bytes_per_layer);
}

}  // namespace omnitok::footprint
