// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/packer.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

#include "omnitok/error.hpp"

namespace omnitok::packer {

namespace {

// (remaining, bin index); top() is the roomiest bin, lowest index on ties.
struct RoomierFirst {
  bool operator()(const std::pair<std::int64_t, std::size_t>& a,
                  const std::pair<std::int64_t, std::size_t>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  }
};

}  // namespace

PackedBins pack(std::span<const std::int64_t> lengths, std::int64_t capacity,
                std::int64_t buffer_size) {
  require(capacity >= 1, ErrorCode::InvalidInput, "bin capacity must be at least 1");
  require(buffer_size >= 1, ErrorCode::InvalidInput, "buffer size must be at least 1");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    require(lengths[i] >= 0, ErrorCode::InvalidInput,
            "sequence " + std::to_string(i) + " has negative length");
    require(lengths[i] <= capacity, ErrorCode::OversizeSequence,
            "sequence " + std::to_string(i) + " of length " + std::to_string(lengths[i]) +
                " exceeds capacity " + std::to_string(capacity));
  }

  PackedBins packed;
  packed.capacity = capacity;
  // Worst fit only ever needs the roomiest bin: if it cannot take the
  // sequence, no bin can.
  std::priority_queue<std::pair<std::int64_t, std::size_t>,
                      std::vector<std::pair<std::int64_t, std::size_t>>, RoomierFirst>
      open;

  const auto batch = static_cast<std::size_t>(buffer_size);
  std::vector<std::size_t> order;
  for (std::size_t begin = 0; begin < lengths.size(); begin += batch) {
    const std::size_t end = std::min(lengths.size(), begin + batch);
    order.resize(end - begin);
    std::iota(order.begin(), order.end(), begin);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lengths[a] > lengths[b]; });

    for (const std::size_t id : order) {
      const std::int64_t len = lengths[id];
      std::size_t target = 0;
      if (!open.empty() && open.top().first >= len) {
        target = open.top().second;
        open.pop();
      } else {
        target = packed.bins.size();
        packed.bins.emplace_back();
      }
      Bin& bin = packed.bins[target];
      bin.sequence_ids.push_back(id);
      bin.lengths.push_back(len);
      bin.fill += len;
      open.emplace(capacity - bin.fill, target);
    }
  }

  std::int64_t total_fill = 0;
  for (const auto& bin : packed.bins) {
    check_invariant(bin.fill <= capacity, "bin fill within capacity");
    total_fill += bin.fill;
  }
  packed.utilization = packed.bins.empty()
                           ? 1.0
                           : static_cast<double>(total_fill) /
                                 (static_cast<double>(packed.bins.size()) * capacity);
  return packed;
}

UtilizationStats utilization_stats(const PackedBins& packed) {
  UtilizationStats stats;
  stats.bin_count = static_cast<std::int64_t>(packed.bins.size());
  if (packed.bins.empty()) return stats;

  const double cap = static_cast<double>(packed.capacity);
  stats.min_fill = 1.0;
  stats.max_fill = 0.0;
  std::int64_t total_fill = 0;
  for (const auto& bin : packed.bins) {
    const double f = static_cast<double>(bin.fill) / cap;
    stats.min_fill = std::min(stats.min_fill, f);
    stats.max_fill = std::max(stats.max_fill, f);
    total_fill += bin.fill;
    stats.waste_tokens += packed.capacity - bin.fill;
  }
  stats.mean_fill = static_cast<double>(total_fill) / (cap * static_cast<double>(stats.bin_count));
  return stats;
}

}  // namespace omnitok::packer
