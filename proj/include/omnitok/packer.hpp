// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace omnitok::packer {

inline constexpr std::int64_t kDefaultBufferSize = 512;

struct Bin {
  std::vector<std::size_t> sequence_ids;
  std::vector<std::int64_t> lengths;
  std::int64_t fill = 0;
};

struct PackedBins {
  std::int64_t capacity = 0;
  std::vector<Bin> bins;
  double utilization = 1.0;  // total fill / (bins * capacity); 1 when empty
};

/// Online balanced greedy knapsack.
///
/// Input is consumed in batches of buffer_size. Each batch is sorted by
/// length, longest first (stable on input index), and every sequence goes
/// to the open bin with the most remaining space, provided it fits (lowest
/// bin index on a tie). A new bin opens when nothing fits. Bins stay open
/// across batches. Throws OversizeSequence naming the first sequence longer
/// than capacity.
PackedBins pack(std::span<const std::int64_t> lengths, std::int64_t capacity,
                std::int64_t buffer_size = kDefaultBufferSize);

struct UtilizationStats {
  std::int64_t bin_count = 0;
  double min_fill = 1.0;
  double mean_fill = 1.0;
  double max_fill = 1.0;
  std::int64_t waste_tokens = 0;
};

UtilizationStats utilization_stats(const PackedBins& packed);

}  // namespace omnitok::packer
