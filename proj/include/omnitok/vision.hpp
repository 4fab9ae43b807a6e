// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "omnitok/overhead.hpp"

namespace omnitok::vision {

inline constexpr std::int64_t kPatchSize = 16;
// 2x2 spatial grouping of ViT patches into one LLM token.
inline constexpr std::int64_t kPixelShuffleFactor = 4;
inline constexpr std::int64_t kDefaultMinPatches = 1024;
inline constexpr std::int64_t kDefaultMaxPatches = 13312;

/// Bounds on the pre-shuffle ViT patch count for one image or frame.
struct PatchBudget {
  std::int64_t min_patches = kDefaultMinPatches;
  std::int64_t max_patches = kDefaultMaxPatches;

  friend bool operator==(const PatchBudget&, const PatchBudget&) = default;
};

/// Throws InvalidInput unless 0 < min <= max, BudgetInfeasible if max < 4
/// (the smallest even grid is 2x2).
void validate(const PatchBudget& budget);

struct ResolutionPlan {
  std::int64_t source_width = 0;
  std::int64_t source_height = 0;
  std::int64_t target_width = 0;
  std::int64_t target_height = 0;
  std::int64_t grid_w = 0;
  std::int64_t grid_h = 0;
  std::int64_t vit_tokens = 0;
  std::int64_t llm_tokens = 0;

  friend bool operator==(const ResolutionPlan&, const ResolutionPlan&) = default;
};

/// Aspect-preserving dynamic resolution.
///
/// The native patch grid (width/16, height/16) is scaled uniformly so its
/// area equals the native area clamped into the budget. Each side is then
/// rounded to the nearest even count (ties toward the smaller even count,
/// minimum 2). If the area still exceeds max_patches the longer side
/// (grid_w on a tie) shrinks by 2 until it fits; if it falls below
/// min_patches, whichever side keeps the grid aspect closest to the
/// source grows by 2 (grid_h on a tie).
ResolutionPlan plan_image_resolution(std::int64_t width, std::int64_t height,
                                     const PatchBudget& budget = {});

/// LLM tokens for a single image, including wrapper tokens.
std::int64_t image_llm_tokens(const ResolutionPlan& plan, const TokenOverheadModel& overhead);

/// |log((grid_w / grid_h) * (height / width))|
double aspect_error(std::int64_t grid_w, std::int64_t grid_h, std::int64_t width,
                    std::int64_t height);

}  // namespace omnitok::vision
