// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "omnitok/evs_kernels.hpp"
#include "omnitok/video.hpp"

namespace omnitok::evs {

/// Tubelet features laid out [tubelet][spatial][dim], dim fastest.
struct FeatureTensor {
  std::int64_t tubelets = 0;
  std::int64_t spatial = 0;
  std::int64_t dim = 0;
  std::vector<float> data;

  std::int64_t token_count() const { return tubelets * spatial; }

  std::span<const float> token(std::int64_t t, std::int64_t s) const {
    return {data.data() + static_cast<std::size_t>((t * spatial + s) * dim),
            static_cast<std::size_t>(dim)};
  }
  std::span<float> token(std::int64_t t, std::int64_t s) {
    return {data.data() + static_cast<std::size_t>((t * spatial + s) * dim),
            static_cast<std::size_t>(dim)};
  }
};

/// Shape must be positive and match data.size(); values must be finite.
void validate(const FeatureTensor& tensor);

/// Dissimilarity of one token against the same position one tubelet earlier.
/// Pinned tokens (the whole first tubelet) order above every real value.
struct Dissimilarity {
  bool pinned = false;
  double value = 0.0;

  friend bool operator==(const Dissimilarity&, const Dissimilarity&) = default;
  friend bool operator<(const Dissimilarity& a, const Dissimilarity& b) {
    if (a.pinned != b.pinned) return b.pinned;
    return !a.pinned && a.value < b.value;
  }
};

class DissimilarityMap {
public:
  DissimilarityMap(std::int64_t tubelets, std::int64_t spatial);

  std::int64_t tubelets() const { return tubelets_; }
  std::int64_t spatial() const { return spatial_; }
  std::int64_t size() const { return tubelets_ * spatial_; }

  Dissimilarity at(std::int64_t index) const {
    if (index < spatial_) return {true, 0.0};
    return {false, values_[static_cast<std::size_t>(index)]};
  }
  Dissimilarity at(std::int64_t t, std::int64_t s) const { return at(t * spatial_ + s); }

  void set(std::int64_t t, std::int64_t s, double value);

private:
  std::int64_t tubelets_;
  std::int64_t spatial_;
  std::vector<double> values_;
};

/// d[t,s] = 1 - cos(f[t,s], f[t-1,s]) for t >= 1, in [0, 2] and unclamped;
/// 1 when either vector has zero norm. The first tubelet is pinned.
DissimilarityMap evs_dissimilarity(const FeatureTensor& tensor,
                                   kernels::Isa isa = kernels::default_isa());

struct RetentionMask {
  std::int64_t tubelets = 0;
  std::int64_t spatial = 0;
  std::vector<std::uint8_t> keep;
  std::int64_t retained = 0;
  double budget_q = 0.0;

  bool kept(std::int64_t t, std::int64_t s) const {
    return keep[static_cast<std::size_t>(t * spatial + s)] != 0;
  }
  /// Linear indices t * spatial + s of kept tokens, in input order.
  std::vector<std::int64_t> kept_indices() const;

  friend bool operator==(const RetentionMask&, const RetentionMask&) = default;
};

/// max(S, ceil((1 - q) * T * S)).
std::int64_t retention_budget(std::int64_t tubelets, std::int64_t spatial, double q);

/// Keeps the retention_budget() most dissimilar tokens. Equal
/// dissimilarities go to the smaller linear index.
RetentionMask select_tokens(const DissimilarityMap& map, double q);

RetentionMask evs_prune(const FeatureTensor& tensor, double q,
                        kernels::Isa isa = kernels::default_isa());

/// Kept features in input order, shape (retained x dim).
std::vector<float> gather_kept(const FeatureTensor& tensor, const RetentionMask& mask);

/// Deterministic fixture: SplitMix64(seed) mapped to [-1, 1), row-major.
FeatureTensor synth_feature_tensor(std::uint64_t seed, std::int64_t tubelets, std::int64_t spatial,
                                   std::int64_t dim);

/// Visual tokens left after pruning a whole video budget at rate q; never
/// fewer than one frame's worth of post-shuffle tokens.
std::int64_t retained_visual_tokens(const video::VideoTokenBudget& budget, double q);

void validate_pruning_rate(double q);

}  // namespace omnitok::evs
