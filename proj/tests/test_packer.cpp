// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "omnitok/error.hpp"
#include "omnitok/packer.hpp"
#include "omnitok/rng.hpp"
#include "oracles.hpp"

using namespace omnitok;
using packer::pack;

TEST_CASE("worked example packs into two bins") {
  const std::vector<std::int64_t> lengths = {10, 9, 5, 4, 2};
  const auto p = pack(lengths, 16, 16);
  REQUIRE(p.bins.size() == 2);
  CHECK(p.bins[0].lengths == std::vector<std::int64_t>{10, 4, 2});
  CHECK(p.bins[1].lengths == std::vector<std::int64_t>{9, 5});
  CHECK(p.bins[0].fill == 16);
  CHECK(p.bins[1].fill == 14);
  CHECK(p.utilization == 0.9375);
  const auto s = packer::utilization_stats(p);
  CHECK(s.mean_fill == 0.9375);
  CHECK(s.waste_tokens == 2);
}

TEST_CASE("exact fit and empty input") {
  const std::vector<std::int64_t> one = {16};
  const auto p = pack(one, 16);
  REQUIRE(p.bins.size() == 1);
  CHECK(p.utilization == 1.0);
  const auto s = packer::utilization_stats(p);
  CHECK(s.mean_fill == 1.0);
  CHECK(s.waste_tokens == 0);
  const auto e = pack(std::vector<std::int64_t>{}, 16);
  CHECK(e.bins.empty());
  CHECK(e.utilization == 1.0);
}

TEST_CASE("half-full bins") {
  packer::PackedBins p;
  p.capacity = 16;
  p.bins.resize(2);
  p.bins[0].fill = 8;
  p.bins[1].fill = 8;
  const auto s = packer::utilization_stats(p);
  CHECK(s.mean_fill == 0.5);
  CHECK(s.waste_tokens == 16);
}

TEST_CASE("oversize sequence names its index") {
  const std::vector<std::int64_t> lengths = {3, 20};
  try {
    pack(lengths, 16);
    FAIL("expected OversizeSequence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OversizeSequence);
    CHECK(std::string(e.what()).find("sequence 1") != std::string::npos);
  }
  CHECK_THROWS_AS(pack(lengths, 0), Error);
  CHECK_THROWS_AS(pack(std::vector<std::int64_t>{1}, 16, 0), Error);
}

TEST_CASE("property: capacity, conservation, determinism, closeness to FFD") {
  SplitMix64 rng(8);
  double gap_sum = 0.0;
  int compared = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t cap = 16 + static_cast<std::int64_t>(rng.next_below(4096));
    const auto n = static_cast<std::size_t>(rng.next_below(200));
    std::vector<std::int64_t> lengths(n);
    for (auto& l : lengths) l = 1 + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(cap)));
    const auto buffer = static_cast<std::int64_t>(1 + rng.next_below(n + 1));
    const auto p = pack(lengths, cap, buffer);

    std::vector<std::int64_t> packed_lengths;
    std::vector<std::size_t> ids;
    for (const auto& b : p.bins) {
      REQUIRE(b.fill <= cap);
      REQUIRE(std::accumulate(b.lengths.begin(), b.lengths.end(), std::int64_t{0}) == b.fill);
      for (std::size_t k = 0; k < b.lengths.size(); ++k) {
        REQUIRE(lengths[b.sequence_ids[k]] == b.lengths[k]);
        packed_lengths.push_back(b.lengths[k]);
        ids.push_back(b.sequence_ids[k]);
      }
    }
    std::sort(ids.begin(), ids.end());
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    REQUIRE(ids == all);
    auto sorted = lengths;
    std::sort(sorted.begin(), sorted.end());
    std::sort(packed_lengths.begin(), packed_lengths.end());
    REQUIRE(sorted == packed_lengths);

    const auto again = pack(lengths, cap, buffer);
    REQUIRE(again.bins.size() == p.bins.size());
    for (std::size_t b = 0; b < p.bins.size(); ++b) {
      REQUIRE(again.bins[b].sequence_ids == p.bins[b].sequence_ids);
    }

    if (n > 0) {
      const auto full = pack(lengths, cap, static_cast<std::int64_t>(n));
      const auto ffd = oracle::first_fit_decreasing(lengths, cap);
      const double ffd_util =
          static_cast<double>(std::accumulate(lengths.begin(), lengths.end(), std::int64_t{0})) /
          (static_cast<double>(ffd.size()) * static_cast<double>(cap));
      const auto total = std::accumulate(lengths.begin(), lengths.end(), std::int64_t{0});
      REQUIRE(static_cast<std::int64_t>(full.bins.size()) >= (total + cap - 1) / cap);
      gap_sum += ffd_util - full.utilization;
      ++compared;
    }
  }
  // Per-instance gaps can exceed 10 pp on small inputs; the mean stays small.
  CHECK(gap_sum / compared < 0.01);
}
