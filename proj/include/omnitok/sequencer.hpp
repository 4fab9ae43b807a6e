// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omnitok::sequencer {

enum class MediaKind { Image, Video, Audio, Text };

std::string_view to_string(MediaKind kind) noexcept;
std::optional<MediaKind> parse_media_kind(std::string_view name) noexcept;

/// Video and audio live on the timeline; images and text do not.
constexpr bool is_timed(MediaKind kind) noexcept {
  return kind == MediaKind::Video || kind == MediaKind::Audio;
}

struct MediaItem {
  MediaKind kind = MediaKind::Text;
  double start = 0.0;
  double duration = 0.0;
  std::int64_t token_budget = 0;
  std::string id;
};

inline constexpr std::int64_t kUntimedWindow = -1;
inline constexpr double kDefaultWindowSeconds = 30.0;

struct Span {
  std::string media_id;
  MediaKind kind = MediaKind::Text;
  std::int64_t window_index = kUntimedWindow;
  std::int64_t tokens = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct Window {
  std::int64_t index = kUntimedWindow;
  double start = 0.0;
  double end = 0.0;
  std::vector<Span> spans;
};

/// Splits timed items over consecutive windows of `window` seconds starting
/// at the earliest timed start. Each item's budget is apportioned by
/// temporal overlap with largest-remainder rounding (ties to the earlier
/// window), so per-item window sums equal the budget exactly. Untimed items
/// form window -1, in input order, ahead of all timed content. Windows that
/// receive no spans are omitted.
std::vector<Window> build_timeline(const std::vector<MediaItem>& items,
                                   double window = kDefaultWindowSeconds);

struct SequenceLayout {
  std::vector<Span> spans;
  std::int64_t content_tokens = 0;   // sum of span tokens
  std::int64_t overhead_tokens = 0;  // per-sequence wrapper tokens
  std::int64_t total_tokens = 0;     // content + overhead
};

/// Emits spans window by window; inside a window, video before audio, then
/// by media id.
SequenceLayout interleave(const std::vector<Window>& windows, std::int64_t per_sequence_fixed = 0);

enum class Stage { Ctx16k, Ctx48k, Ctx256k };

std::string_view to_string(Stage stage) noexcept;
/// Accepts "16k", "48k", "256k" (either case of k). Throws InvalidInput.
Stage parse_stage(std::string_view label);
std::int64_t context_limit(Stage stage) noexcept;

struct FitReport {
  bool fits = true;
  std::int64_t total = 0;
  std::int64_t limit = 0;
  std::int64_t excess = 0;
};

FitReport check_context(const SequenceLayout& layout, Stage stage);

}  // namespace omnitok::sequencer
