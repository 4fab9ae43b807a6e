// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "omnitok/overhead.hpp"
#include "omnitok/vision.hpp"

namespace omnitok::video {

// Frame caps used by the short-context and long-context training stages.
inline constexpr std::int64_t kMaxFramesShort = 64;
inline constexpr std::int64_t kMaxFramesLong = 256;

// Per-frame patch targets drawn by the resolution augmentation.
inline constexpr std::array<std::int64_t, 4> kFramePatchTargets = {256, 512, 768, 1024};

// Conv3D patch embedding fuses this many consecutive frames into one tubelet.
inline constexpr std::int64_t kFramesPerTubelet = 2;

struct FrameSamplingPlan {
  double duration = 0.0;
  double native_fps = 0.0;
  std::int64_t max_frames = 0;
  std::vector<double> sampled_timestamps;

  std::int64_t frame_count() const { return static_cast<std::int64_t>(sampled_timestamps.size()); }
};

/// Every native frame when they fit under max_frames, otherwise max_frames
/// bin centres t_i = (i + 0.5) * duration / max_frames.
FrameSamplingPlan sample_frames(double duration, double native_fps, std::int64_t max_frames);

/// Resolution for one frame at an augmentation target; budget is [4, target].
vision::ResolutionPlan plan_frame_resolution(std::int64_t width, std::int64_t height,
                                             std::int64_t target_patches);

struct VideoTokenBudget {
  std::int64_t frames = 0;
  std::int64_t tubelets = 0;
  std::int64_t patches_per_frame = 0;
  std::int64_t visual_tokens = 0;
  std::int64_t overhead_tokens = 0;
  std::int64_t total_tokens = 0;
  bool conv3d = false;

  friend bool operator==(const VideoTokenBudget&, const VideoTokenBudget&) = default;
};

/// Tubelets are ceil(frames / 2) with Conv3D (an odd tail frame is paired
/// with a copy of itself), otherwise one per frame. Per-frame overhead is
/// charged on frames, not tubelets.
VideoTokenBudget video_token_budget(std::int64_t frames, std::int64_t patches_per_frame,
                                    bool conv3d, const TokenOverheadModel& overhead = {});

}  // namespace omnitok::video
