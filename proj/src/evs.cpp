// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/evs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "omnitok/error.hpp"
#include "omnitok/numeric.hpp"
#include "omnitok/rng.hpp"

namespace omnitok::evs {

void validate(const FeatureTensor& tensor) {
  require(tensor.tubelets >= 1 && tensor.spatial >= 1 && tensor.dim >= 1,
          ErrorCode::InvalidInput, "feature tensor dimensions must all be at least 1");
  const auto expected = static_cast<std::size_t>(tensor.tubelets * tensor.spatial * tensor.dim);
  require(tensor.data.size() == expected, ErrorCode::InvalidInput,
          "feature tensor holds " + std::to_string(tensor.data.size()) + " values, shape needs " +
              std::to_string(expected));
  const auto bad = std::find_if(tensor.data.begin(), tensor.data.end(),
                                [](float v) { return !std::isfinite(v); });
  require(bad == tensor.data.end(), ErrorCode::InvalidInput,
          "feature tensor has a non-finite value at flat index " +
              std::to_string(bad - tensor.data.begin()));
}

void validate_pruning_rate(double q) {
  require(q >= 0.0 && q < 1.0, ErrorCode::InvalidInput,
          "pruning rate q must lie in [0, 1) (got " + std::to_string(q) + ")");
}

DissimilarityMap::DissimilarityMap(std::int64_t tubelets, std::int64_t spatial)
    : tubelets_(tubelets), spatial_(spatial),
      values_(static_cast<std::size_t>(tubelets * spatial), 0.0) {}

void DissimilarityMap::set(std::int64_t t, std::int64_t s, double value) {
  values_[static_cast<std::size_t>(t * spatial_ + s)] = value;
}

DissimilarityMap evs_dissimilarity(const FeatureTensor& tensor, kernels::Isa isa) {
  validate(tensor);
  const kernels::CosineFn cosine = kernels::kernel_for(isa);
  const auto dim = static_cast<std::size_t>(tensor.dim);

  DissimilarityMap map(tensor.tubelets, tensor.spatial);
  for (std::int64_t t = 1; t < tensor.tubelets; ++t) {
    for (std::int64_t s = 0; s < tensor.spatial; ++s) {
      const auto stats = cosine(tensor.token(t, s).data(), tensor.token(t - 1, s).data(), dim);
      double d = 1.0;
      if (stats.norm2_a > 0.0 && stats.norm2_b > 0.0) {
        d = 1.0 - stats.dot / std::sqrt(stats.norm2_a * stats.norm2_b);
      }
      map.set(t, s, d);
    }
  }
  return map;
}

std::int64_t retention_budget(std::int64_t tubelets, std::int64_t spatial, double q) {
  validate_pruning_rate(q);
  return std::max(spatial, keep_budget(q, tubelets * spatial));
}

RetentionMask select_tokens(const DissimilarityMap& map, double q) {
  const std::int64_t total = map.size();
  const std::int64_t budget = retention_budget(map.tubelets(), map.spatial(), q);

  RetentionMask mask;
  mask.tubelets = map.tubelets();
  mask.spatial = map.spatial();
  mask.budget_q = q;
  mask.keep.assign(static_cast<std::size_t>(total), 0);

  // The pinned first tubelet is always inside the budget, so only the
  // remaining slots are contested.
  std::fill_n(mask.keep.begin(), map.spatial(), std::uint8_t{1});
  std::vector<std::int64_t> candidates(static_cast<std::size_t>(total - map.spatial()));
  std::iota(candidates.begin(), candidates.end(), map.spatial());
  const auto slots = static_cast<std::size_t>(budget - map.spatial());

  auto ranks_before = [&map](std::int64_t a, std::int64_t b) {
    const Dissimilarity da = map.at(a);
    const Dissimilarity db = map.at(b);
    if (db < da) return true;
    if (da < db) return false;
    return a < b;
  };
  if (slots > 0 && slots < candidates.size()) {
    std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(slots - 1),
                     candidates.end(), ranks_before);
  }
  for (std::size_t i = 0; i < std::min(slots, candidates.size()); ++i) {
    mask.keep[static_cast<std::size_t>(candidates[i])] = 1;
  }
  mask.retained = static_cast<std::int64_t>(std::count(mask.keep.begin(), mask.keep.end(), 1));
  check_invariant(mask.retained == budget, "mask retains exactly the budget");
  return mask;
}

RetentionMask evs_prune(const FeatureTensor& tensor, double q, kernels::Isa isa) {
  validate_pruning_rate(q);
  return select_tokens(evs_dissimilarity(tensor, isa), q);
}

std::vector<std::int64_t> RetentionMask::kept_indices() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(retained));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] != 0) out.push_back(static_cast<std::int64_t>(i));
  }
  return out;
}

std::vector<float> gather_kept(const FeatureTensor& tensor, const RetentionMask& mask) {
  require(mask.tubelets == tensor.tubelets && mask.spatial == tensor.spatial,
          ErrorCode::InvalidInput, "mask shape does not match tensor");
  std::vector<float> out;
  out.reserve(static_cast<std::size_t>(mask.retained * tensor.dim));
  for (const std::int64_t index : mask.kept_indices()) {
    const auto token = tensor.token(index / tensor.spatial, index % tensor.spatial);
    out.insert(out.end(), token.begin(), token.end());
  }
  return out;
}

FeatureTensor synth_feature_tensor(std::uint64_t seed, std::int64_t tubelets, std::int64_t spatial,
                                   std::int64_t dim) {
  require(tubelets >= 1 && spatial >= 1 && dim >= 1, ErrorCode::InvalidInput,
          "synthetic tensor dimensions must all be at least 1");
  FeatureTensor tensor{tubelets, spatial, dim, {}};
  tensor.data.resize(static_cast<std::size_t>(tubelets * spatial * dim));
  SplitMix64 rng(seed);
  for (float& v : tensor.data) v = rng.next_signed_unit();
  return tensor;
}

std::int64_t retained_visual_tokens(const video::VideoTokenBudget& budget, double q) {
  validate_pruning_rate(q);
  return std::max(budget.patches_per_frame / vision::kPixelShuffleFactor,
                  keep_budget(q, budget.visual_tokens));
}

}  // namespace omnitok::evs
