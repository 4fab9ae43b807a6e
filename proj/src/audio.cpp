// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/audio.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "omnitok/error.hpp"
#include "omnitok/numeric.hpp"

namespace omnitok::audio {

namespace {

void require_positive(double duration) {
  require(std::isfinite(duration) && duration > 0.0, ErrorCode::InvalidInput,
          "audio duration must be positive (got " + std::to_string(duration) + ")");
}

}  // namespace

std::int64_t mel_frame_count(double duration) {
  require_positive(duration);
  return snapped_ceil(duration * kMelFramesPerSecond);
}

std::int64_t audio_token_count(double duration) {
  return ceil_div(mel_frame_count(duration), kSubsampling);
}

std::int64_t AudioClipPlan::total_tokens() const {
  return std::accumulate(clips.begin(), clips.end(), std::int64_t{0},
                         [](std::int64_t acc, const AudioClip& c) { return acc + c.tokens; });
}

AudioClipPlan segment_clips(double duration) {
  require_positive(duration);
  AudioClipPlan plan;
  plan.total_duration = duration;
  plan.below_trained_minimum = duration < kMinTrainedSeconds;

  const std::int64_t full_clips = snapped_floor(duration / kClipSeconds);
  const auto add_clip = [&plan](double start, double length) {
    plan.clips.push_back({start, length, mel_frame_count(length), audio_token_count(length)});
  };
  for (std::int64_t i = 0; i < full_clips; ++i) {
    add_clip(static_cast<double>(i) * kClipSeconds, kClipSeconds);
  }
  const double covered = static_cast<double>(full_clips) * kClipSeconds;
  const double remainder = duration - covered;
  // Remainders within rounding noise of zero are not a clip.
  if (snap_to_integer(remainder * kMelFramesPerSecond) > 0.0) {
    add_clip(covered, remainder);
  }
  return plan;
}

}  // namespace omnitok::audio
