// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omnitok/error.hpp"
#include "omnitok/footprint.hpp"
#include "omnitok/overhead.hpp"
#include "omnitok/sequencer.hpp"
#include "omnitok/vision.hpp"

namespace omnitok::cli {

inline constexpr int kManifestVersion = 1;

struct MediaEntry {
  std::string id;
  sequencer::MediaKind kind = sequencer::MediaKind::Text;
  double start = 0.0;
  double duration = 0.0;
  std::int64_t width = 0;
  std::int64_t height = 0;
  // Video: either an explicit frame count or fps-based sampling.
  std::optional<std::int64_t> frames;
  std::optional<double> fps;
  std::optional<std::int64_t> max_frames;
  // Text: literal token count.
  std::int64_t tokens = 0;

  friend bool operator==(const MediaEntry&, const MediaEntry&) = default;
};

struct PipelineFlags {
  bool conv3d = false;
  double evs_q = 0.0;
  vision::PatchBudget patch_budget;
  // Per-frame patch target; nullopt plans frames like images.
  std::optional<std::int64_t> frame_patches;
  TokenOverheadModel overhead;
  sequencer::Stage stage = sequencer::Stage::Ctx256k;
  double window = sequencer::kDefaultWindowSeconds;
  std::int64_t max_frames = 256;

  friend bool operator==(const PipelineFlags&, const PipelineFlags&) = default;
};

struct Manifest {
  int version = kManifestVersion;
  PipelineFlags pipeline;
  std::vector<MediaEntry> entries;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

struct FieldError {
  std::string field;  // dotted path, e.g. "entries[2].width"
  int line = 0;       // 1-based; 0 when unknown
  int column = 0;
  std::string message;
};

/// Carries every field-level problem found in one pass.
class ConfigError : public Error {
public:
  explicit ConfigError(std::vector<FieldError> errors);
  const std::vector<FieldError>& errors() const noexcept { return errors_; }

private:
  std::vector<FieldError> errors_;
};

/// YAML manifest. Missing optional fields take the compiled-in defaults.
Manifest parse_manifest_text(std::string_view text);
Manifest parse_manifest(const std::filesystem::path& path);
/// Every field written explicitly, stable order; parses back to `manifest`.
std::string serialize_manifest(const Manifest& manifest);

/// YAML inventory: name, groups[{name, params, bits, encoder}].
footprint::ParamGroupInventory parse_inventory_text(std::string_view text);
footprint::ParamGroupInventory parse_inventory(const std::filesystem::path& path);
std::string serialize_inventory(const footprint::ParamGroupInventory& inventory);

}  // namespace omnitok::cli
