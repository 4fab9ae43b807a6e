// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/sequencer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "omnitok/error.hpp"
#include "omnitok/numeric.hpp"

namespace omnitok::sequencer {

std::string_view to_string(MediaKind kind) noexcept {
  switch (kind) {
    case MediaKind::Image: return "image";
    case MediaKind::Video: return "video";
    case MediaKind::Audio: return "audio";
    case MediaKind::Text: return "text";
  }
  return "unknown";
}

std::optional<MediaKind> parse_media_kind(std::string_view name) noexcept {
  if (name == "image") return MediaKind::Image;
  if (name == "video") return MediaKind::Video;
  if (name == "audio") return MediaKind::Audio;
  if (name == "text") return MediaKind::Text;
  return std::nullopt;
}

namespace {

int kind_rank(MediaKind kind) {
  switch (kind) {
    case MediaKind::Video: return 0;
    case MediaKind::Audio: return 1;
    default: return 2;
  }
}

// Largest-remainder split of `budget` over weights that sum to 1.
std::vector<std::int64_t> apportion(std::int64_t budget, const std::vector<double>& weights) {
  std::vector<std::int64_t> shares(weights.size(), 0);
  std::vector<double> remainders(weights.size(), 0.0);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = static_cast<double>(budget) * weights[i];
    shares[i] = snapped_floor(exact);
    remainders[i] = exact - static_cast<double>(shares[i]);
    assigned += shares[i];
  }
  std::vector<std::size_t> order(weights.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  // Leftover is below weights.size() unless floating error shaved a share.
  for (std::size_t k = 0; assigned < budget; k = (k + 1) % order.size()) {
    ++shares[order[k]];
    ++assigned;
  }
  while (assigned > budget) {
    auto it = std::max_element(shares.begin(), shares.end());
    --*it;
    --assigned;
  }
  return shares;
}

}  // namespace

std::vector<Window> build_timeline(const std::vector<MediaItem>& items, double window) {
  require(window > 0.0 && std::isfinite(window), ErrorCode::InvalidInput,
          "interleave window must be positive");

  std::vector<Window> out;
  Window untimed;
  double origin = std::numeric_limits<double>::infinity();
  double horizon = -std::numeric_limits<double>::infinity();
  for (const auto& item : items) {
    require(item.token_budget >= 0, ErrorCode::InvalidInput,
            "media '" + item.id + "' has a negative token budget");
    require(item.duration >= 0.0 && item.start >= 0.0, ErrorCode::InvalidInput,
            "media '" + item.id + "' has a negative start or duration");
    if (!is_timed(item.kind)) {
      untimed.spans.push_back({item.id, item.kind, kUntimedWindow, item.token_budget});
      continue;
    }
    origin = std::min(origin, item.start);
    horizon = std::max(horizon, item.start + item.duration);
  }
  if (!untimed.spans.empty()) out.push_back(std::move(untimed));
  if (!std::isfinite(origin)) return out;

  const auto window_of = [&](double t) {
    return static_cast<std::int64_t>(std::floor(snap_to_integer((t - origin) / window)));
  };
  const std::int64_t window_count =
      std::max<std::int64_t>(1, snapped_ceil((horizon - origin) / window));

  std::map<std::int64_t, Window> timed;
  for (const auto& item : items) {
    if (!is_timed(item.kind)) continue;
    if (item.duration == 0.0) {
      // Instantaneous media sits in the window containing its start.
      const std::int64_t w = std::min(window_of(item.start), window_count - 1);
      timed[w].spans.push_back({item.id, item.kind, w, item.token_budget});
      continue;
    }
    const double end = item.start + item.duration;
    const std::int64_t first = window_of(item.start);
    const std::int64_t last = std::min(
        window_count - 1, std::max(first, snapped_ceil((end - origin) / window) - 1));
    std::vector<double> weights;
    for (std::int64_t w = first; w <= last; ++w) {
      const double lo = std::max(item.start, origin + static_cast<double>(w) * window);
      const double hi = std::min(end, origin + static_cast<double>(w + 1) * window);
      weights.push_back(std::max(0.0, hi - lo) / item.duration);
    }
    const auto shares = apportion(item.token_budget, weights);
    for (std::int64_t w = first; w <= last; ++w) {
      const auto tokens = shares[static_cast<std::size_t>(w - first)];
      // Zero-token slivers are dropped; an empty item keeps one span.
      if (tokens == 0 && (item.token_budget != 0 || w != first)) continue;
      timed[w].spans.push_back({item.id, item.kind, w, tokens});
    }
  }

  for (auto& [index, win] : timed) {
    win.index = index;
    win.start = origin + static_cast<double>(index) * window;
    win.end = std::min(horizon, origin + static_cast<double>(index + 1) * window);
    std::stable_sort(win.spans.begin(), win.spans.end(), [](const Span& a, const Span& b) {
      if (kind_rank(a.kind) != kind_rank(b.kind)) return kind_rank(a.kind) < kind_rank(b.kind);
      return a.media_id < b.media_id;
    });
    out.push_back(std::move(win));
  }
  return out;
}

SequenceLayout interleave(const std::vector<Window>& windows, std::int64_t per_sequence_fixed) {
  require(per_sequence_fixed >= 0, ErrorCode::InvalidInput, "sequence overhead must be >= 0");
  SequenceLayout layout;
  for (const auto& win : windows) {
    for (const auto& span : win.spans) {
      layout.spans.push_back(span);
      layout.content_tokens += span.tokens;
    }
  }
  layout.overhead_tokens = per_sequence_fixed;
  layout.total_tokens = layout.content_tokens + layout.overhead_tokens;
  return layout;
}

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::Ctx16k: return "16k";
    case Stage::Ctx48k: return "48k";
    case Stage::Ctx256k: return "256k";
  }
  return "unknown";
}

Stage parse_stage(std::string_view label) {
  if (label == "16k" || label == "16K") return Stage::Ctx16k;
  if (label == "48k" || label == "48K") return Stage::Ctx48k;
  if (label == "256k" || label == "256K") return Stage::Ctx256k;
  fail(ErrorCode::InvalidInput,
       "unknown context stage '" + std::string(label) + "' (expected 16k, 48k or 256k)");
}

std::int64_t context_limit(Stage stage) noexcept {
  switch (stage) {
    case Stage::Ctx16k: return 16384;
    case Stage::Ctx48k: return 49152;
    case Stage::Ctx256k: return 262144;
  }
  return 0;
}

FitReport check_context(const SequenceLayout& layout, Stage stage) {
  FitReport report;
  report.total = layout.total_tokens;
  report.limit = context_limit(stage);
  report.fits = report.total <= report.limit;
  report.excess = report.fits ? 0 : report.total - report.limit;
  return report;
}

}  // namespace omnitok::sequencer
