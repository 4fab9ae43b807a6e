// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/vision.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "omnitok/error.hpp"

namespace omnitok::vision {

namespace {

// Nearest even integer, exact halves going to the smaller one, floor of 2.
std::int64_t round_to_even(double x) {
  const auto half = static_cast<std::int64_t>(std::ceil(x / 2.0 - 0.5));
  return std::max<std::int64_t>(2, 2 * half);
}

}  // namespace

void validate(const PatchBudget& budget) {
  require(budget.min_patches > 0 && budget.min_patches <= budget.max_patches,
          ErrorCode::InvalidInput,
          "patch budget must satisfy 0 < min <= max (got [" + std::to_string(budget.min_patches) +
              ", " + std::to_string(budget.max_patches) + "])");
  require(budget.max_patches >= 4, ErrorCode::BudgetInfeasible,
          "patch budget max " + std::to_string(budget.max_patches) +
              " is below the smallest 2x2 grid");
}

double aspect_error(std::int64_t grid_w, std::int64_t grid_h, std::int64_t width,
                    std::int64_t height) {
  const double ratio = (static_cast<double>(grid_w) / static_cast<double>(grid_h)) *
                       (static_cast<double>(height) / static_cast<double>(width));
  return std::fabs(std::log(ratio));
}

ResolutionPlan plan_image_resolution(std::int64_t width, std::int64_t height,
                                     const PatchBudget& budget) {
  require(width >= 1 && height >= 1, ErrorCode::InvalidInput,
          "image dimensions must be positive (got " + std::to_string(width) + "x" +
              std::to_string(height) + ")");
  validate(budget);

  const double native_w = static_cast<double>(width) / kPatchSize;
  const double native_h = static_cast<double>(height) / kPatchSize;
  const double native_area = native_w * native_h;
  const double target_area = std::clamp(native_area, static_cast<double>(budget.min_patches),
                                        static_cast<double>(budget.max_patches));
  const double scale = std::sqrt(target_area / native_area);

  std::int64_t gw = round_to_even(native_w * scale);
  std::int64_t gh = round_to_even(native_h * scale);

  while (gw * gh > budget.max_patches) {
    if (gw >= gh) {
      gw -= 2;
    } else {
      gh -= 2;
    }
  }
  while (gw * gh < budget.min_patches) {
    const double grow_w = aspect_error(gw + 2, gh, width, height);
    const double grow_h = aspect_error(gw, gh + 2, width, height);
    if (grow_w < grow_h) {
      gw += 2;
    } else {
      gh += 2;
    }
  }
  require(gw * gh <= budget.max_patches, ErrorCode::BudgetInfeasible,
          "no even grid for " + std::to_string(width) + "x" + std::to_string(height) +
              " lands inside [" + std::to_string(budget.min_patches) + ", " +
              std::to_string(budget.max_patches) + "]");

  ResolutionPlan plan;
  plan.source_width = width;
  plan.source_height = height;
  plan.grid_w = gw;
  plan.grid_h = gh;
  plan.target_width = gw * kPatchSize;
  plan.target_height = gh * kPatchSize;
  plan.vit_tokens = gw * gh;
  plan.llm_tokens = plan.vit_tokens / kPixelShuffleFactor;
  check_invariant(plan.llm_tokens * kPixelShuffleFactor == plan.vit_tokens,
                  "even grid gives an integral pixel-shuffle reduction");
  return plan;
}

std::int64_t image_llm_tokens(const ResolutionPlan& plan, const TokenOverheadModel& overhead) {
  return plan.llm_tokens + overhead.per_image_fixed;
}

}  // namespace omnitok::vision
