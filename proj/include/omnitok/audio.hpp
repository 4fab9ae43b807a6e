// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace omnitok::audio {

inline constexpr double kHopSeconds = 0.01;
inline constexpr std::int64_t kMelFramesPerSecond = 100;
// Three stride-2 convolutional subsampling stages.
inline constexpr std::int64_t kSubsampling = 8;
inline constexpr double kClipSeconds = 30.0;
// Shortest input the encoder was trained on; shorter audio is still planned.
inline constexpr double kMinTrainedSeconds = 0.5;

/// ceil(duration / 10 ms)
std::int64_t mel_frame_count(double duration);

/// ceil(mel_frame_count(duration) / 8), about 12.5 tokens per second.
std::int64_t audio_token_count(double duration);

struct AudioClip {
  double start = 0.0;
  double length = 0.0;
  std::int64_t mel_frames = 0;
  std::int64_t tokens = 0;
};

struct AudioClipPlan {
  double total_duration = 0.0;
  std::vector<AudioClip> clips;
  bool below_trained_minimum = false;

  std::int64_t total_tokens() const;
};

/// Full 30 s clips plus an unpadded remainder clip.
AudioClipPlan segment_clips(double duration);

}  // namespace omnitok::audio
