// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/video.hpp"

#include <algorithm>
#include <string>

#include "omnitok/error.hpp"
#include "omnitok/numeric.hpp"

namespace omnitok {

void validate(const TokenOverheadModel& overhead) {
  require(overhead.per_frame >= 0 && overhead.per_image_fixed >= 0 &&
              overhead.per_sequence_fixed >= 0,
          ErrorCode::InvalidInput, "overhead token counts must be non-negative");
}

}  // namespace omnitok

namespace omnitok::video {

FrameSamplingPlan sample_frames(double duration, double native_fps, std::int64_t max_frames) {
  require(duration > 0.0, ErrorCode::InvalidInput, "duration must be positive");
  require(native_fps > 0.0, ErrorCode::InvalidInput, "native fps must be positive");
  require(max_frames >= 1, ErrorCode::InvalidInput, "max_frames must be at least 1");

  FrameSamplingPlan plan;
  plan.duration = duration;
  plan.native_fps = native_fps;
  plan.max_frames = max_frames;

  const std::int64_t native_frames = snapped_floor(duration * native_fps);
  if (native_frames <= max_frames) {
    plan.sampled_timestamps.reserve(static_cast<std::size_t>(native_frames));
    for (std::int64_t i = 0; i < native_frames; ++i) {
      plan.sampled_timestamps.push_back(static_cast<double>(i) / native_fps);
    }
  } else {
    plan.sampled_timestamps.reserve(static_cast<std::size_t>(max_frames));
    const double step = duration / static_cast<double>(max_frames);
    for (std::int64_t i = 0; i < max_frames; ++i) {
      plan.sampled_timestamps.push_back((static_cast<double>(i) + 0.5) * step);
    }
  }
  return plan;
}

vision::ResolutionPlan plan_frame_resolution(std::int64_t width, std::int64_t height,
                                             std::int64_t target_patches) {
  const bool allowed = std::find(kFramePatchTargets.begin(), kFramePatchTargets.end(),
                                 target_patches) != kFramePatchTargets.end();
  require(allowed, ErrorCode::InvalidInput,
          "per-frame patch target must be one of 256, 512, 768, 1024 (got " +
              std::to_string(target_patches) + ")");
  return vision::plan_image_resolution(width, height, vision::PatchBudget{4, target_patches});
}

VideoTokenBudget video_token_budget(std::int64_t frames, std::int64_t patches_per_frame,
                                    bool conv3d, const TokenOverheadModel& overhead) {
  require(frames >= 1, ErrorCode::InvalidInput, "a video needs at least one frame");
  require(patches_per_frame >= 4 && patches_per_frame % vision::kPixelShuffleFactor == 0,
          ErrorCode::InvalidInput,
          "patches per frame must be a positive multiple of 4 (got " +
              std::to_string(patches_per_frame) + ")");
  validate(overhead);

  VideoTokenBudget budget;
  budget.frames = frames;
  budget.conv3d = conv3d;
  budget.patches_per_frame = patches_per_frame;
  budget.tubelets = conv3d ? ceil_div(frames, kFramesPerTubelet) : frames;
  budget.visual_tokens = budget.tubelets * (patches_per_frame / vision::kPixelShuffleFactor);
  budget.overhead_tokens = frames * overhead.per_frame + overhead.per_sequence_fixed;
  budget.total_tokens = budget.visual_tokens + budget.overhead_tokens;
  return budget;
}

}  // namespace omnitok::video
