// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace omnitok {

// Wrapper/separator tokens added around visual content. The defaults are
// fitted values (19/frame + 50/sequence puts a 512-frame, 1024-patch video
// at 140,850 tokens), not published constants.
struct TokenOverheadModel {
  std::int64_t per_frame = 19;
  std::int64_t per_image_fixed = 2;
  std::int64_t per_sequence_fixed = 50;

  static constexpr TokenOverheadModel zero() { return {0, 0, 0}; }

  friend bool operator==(const TokenOverheadModel&, const TokenOverheadModel&) = default;
};

void validate(const TokenOverheadModel& overhead);

}  // namespace omnitok
