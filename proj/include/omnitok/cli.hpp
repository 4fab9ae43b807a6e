// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "omnitok/manifest.hpp"
#include "omnitok/report.hpp"

namespace omnitok::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;

struct EntryEvaluation {
  sequencer::MediaItem item;
  Json detail;
};

/// Token budget of one manifest entry as placed on the timeline. Video
/// budgets carry per-frame overhead; the per-sequence overhead is added
/// once by the layout.
EntryEvaluation evaluate_entry(const MediaEntry& entry, const PipelineFlags& pipeline);

/// Per-entry budgets, interleaved layout and context fit.
Json sequence_report(const Manifest& manifest);

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`; returns the process exit status.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace omnitok::cli
