// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <string>
#include <string_view>

#include "omnitok/audio.hpp"
#include "omnitok/budget.hpp"
#include "omnitok/footprint.hpp"
#include "omnitok/packer.hpp"
#include "omnitok/sequencer.hpp"
#include "omnitok/video.hpp"
#include "omnitok/vision.hpp"

namespace omnitok::cli {

// Reports are JSON objects with insertion-ordered keys, so field order is
// part of the format.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kReportSchema = "omnitok.report";

Json report_header(std::string_view command);

/// Two-space indented, trailing newline.
std::string render(const Json& report);

Json to_json(const vision::PatchBudget& budget);
Json to_json(const vision::ResolutionPlan& plan);
Json to_json(const TokenOverheadModel& overhead);
Json to_json(const video::VideoTokenBudget& budget);
Json to_json(const audio::AudioClipPlan& plan);
Json to_json(const sequencer::SequenceLayout& layout);
Json to_json(const sequencer::FitReport& fit);
Json to_json(const packer::PackedBins& packed);
Json to_json(const packer::UtilizationStats& stats);
Json to_json(const budget::BudgetConfig& config);
Json to_json(const budget::StreamStats& stats);
Json to_json(const footprint::Footprint& fp);
Json to_json(const footprint::CacheConfig& config);

}  // namespace omnitok::cli
