// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omnitok::footprint {

inline constexpr double kBf16Bits = 16.0;
// Per-tensor E4M3 with one FP32 scale; the scale is negligible at tensor sizes.
inline constexpr double kFp8Bits = 8.0;
// E2M1 values plus one E4M3 scale per 16-element block.
inline constexpr double kNvfp4Bits = 4.0 + 8.0 / 16.0;

/// Storage bits per weight including the amortized per-tensor FP32 scale.
constexpr double fp8_bits(double tensor_elements) { return kFp8Bits + 32.0 / tensor_elements; }
constexpr double nvfp4_bits(double tensor_elements) { return kNvfp4Bits + 32.0 / tensor_elements; }

struct ParamGroup {
  std::string name;
  std::int64_t param_count = 0;
  double bits_per_weight = kBf16Bits;
  bool encoder = false;  // vision/audio encoders and their projectors

  friend bool operator==(const ParamGroup&, const ParamGroup&) = default;
};

struct ParamGroupInventory {
  std::string name;
  std::vector<ParamGroup> groups;

  friend bool operator==(const ParamGroupInventory&, const ParamGroupInventory&) = default;
};

void validate(const ParamGroupInventory& inventory);

/// Which groups enter the bits-per-weight denominator. Bytes always cover
/// every group.
enum class BpwScope { WholeModel, LanguageModelOnly };

struct Footprint {
  double bits_per_weight = 0.0;
  double total_bytes = 0.0;
  double bpw_params = 0.0;    // parameters in the bpw denominator
  double total_params = 0.0;

  double gigabytes() const { return total_bytes / 1e9; }
};

/// bpw = sum(count * bits) / sum(count) over the scope; bytes = sum(count * bits) / 8.
Footprint effective_bpw(const ParamGroupInventory& inventory,
                        BpwScope scope = BpwScope::WholeModel);

enum class Precision { Bf16, Fp8, Nvfp4 };

std::string_view to_string(Precision precision) noexcept;
std::optional<Precision> parse_precision(std::string_view name) noexcept;

/// Estimated 30.75e9-parameter split of the omni model (61.5 GB at BF16)
/// with the mixed-precision assignment for each checkpoint. The split is an
/// estimate; group sizes are not published.
ParamGroupInventory reference_inventory(Precision precision);

/// Published checkpoint size (decimal GB) and effective bpw.
struct PublishedFootprint {
  double gigabytes;
  double bits_per_weight;
};
PublishedFootprint published_footprint(Precision precision) noexcept;

struct CacheConfig {
  std::int64_t layers_attention = 0;
  std::int64_t layers_ssm = 0;
  std::int64_t kv_bytes_per_token_per_layer = 0;
  std::int64_t ssm_state_bytes_per_layer = 0;
  int kv_precision_bits = 8;
  int ssm_precision_bits = 32;
};

/// Estimated hybrid backbone cache shape: FP8 KV for the attention layers,
/// FP32 recurrent state for the Mamba layers.
CacheConfig reference_cache_config();

/// concurrency * (tokens * layers_attention * kv_bytes + layers_ssm * ssm_bytes)
std::int64_t cache_bytes(const CacheConfig& config, std::int64_t tokens, std::int64_t concurrency = 1);

}  // namespace omnitok::footprint
