// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/report.hpp"

namespace omnitok::cli {

Json report_header(std::string_view command) {
  Json j;
  j["schema"] = kReportSchema;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  return j;
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

Json to_json(const vision::PatchBudget& budget) {
  return Json{{"min_patches", budget.min_patches}, {"max_patches", budget.max_patches}};
}

Json to_json(const vision::ResolutionPlan& plan) {
  Json j;
  j["source_width"] = plan.source_width;
  j["source_height"] = plan.source_height;
  j["target_width"] = plan.target_width;
  j["target_height"] = plan.target_height;
  j["grid_w"] = plan.grid_w;
  j["grid_h"] = plan.grid_h;
  j["vit_tokens"] = plan.vit_tokens;
  j["llm_tokens"] = plan.llm_tokens;
  return j;
}

Json to_json(const TokenOverheadModel& overhead) {
  Json j;
  j["per_frame"] = overhead.per_frame;
  j["per_image_fixed"] = overhead.per_image_fixed;
  j["per_sequence_fixed"] = overhead.per_sequence_fixed;
  return j;
}

Json to_json(const video::VideoTokenBudget& budget) {
  Json j;
  j["frames"] = budget.frames;
  j["conv3d"] = budget.conv3d;
  j["tubelets"] = budget.tubelets;
  j["patches_per_frame"] = budget.patches_per_frame;
  j["visual_tokens"] = budget.visual_tokens;
  j["overhead_tokens"] = budget.overhead_tokens;
  j["total_tokens"] = budget.total_tokens;
  return j;
}

Json to_json(const audio::AudioClipPlan& plan) {
  Json clips = Json::array();
  for (const auto& c : plan.clips) {
    Json cj;
    cj["start"] = c.start;
    cj["length"] = c.length;
    cj["mel_frames"] = c.mel_frames;
    cj["tokens"] = c.tokens;
    clips.push_back(std::move(cj));
  }
  Json j;
  j["total_duration"] = plan.total_duration;
  j["below_trained_minimum"] = plan.below_trained_minimum;
  j["clip_count"] = plan.clips.size();
  j["clips"] = std::move(clips);
  j["total_tokens"] = plan.total_tokens();
  return j;
}

Json to_json(const sequencer::SequenceLayout& layout) {
  Json spans = Json::array();
  for (const auto& s : layout.spans) {
    Json sj;
    sj["media_id"] = s.media_id;
    sj["kind"] = sequencer::to_string(s.kind);
    sj["window"] = s.window_index;
    sj["tokens"] = s.tokens;
    spans.push_back(std::move(sj));
  }
  Json j;
  j["spans"] = std::move(spans);
  j["content_tokens"] = layout.content_tokens;
  j["overhead_tokens"] = layout.overhead_tokens;
  j["total_tokens"] = layout.total_tokens;
  return j;
}

Json to_json(const sequencer::FitReport& fit) {
  Json j;
  j["fits"] = fit.fits;
  j["total"] = fit.total;
  j["limit"] = fit.limit;
  j["excess"] = fit.excess;
  return j;
}

Json to_json(const packer::PackedBins& packed) {
  Json bins = Json::array();
  for (const auto& b : packed.bins) {
    Json bj;
    bj["sequence_ids"] = b.sequence_ids;
    bj["lengths"] = b.lengths;
    bj["fill"] = b.fill;
    bins.push_back(std::move(bj));
  }
  Json j;
  j["capacity"] = packed.capacity;
  j["bin_count"] = packed.bins.size();
  j["utilization"] = packed.utilization;
  j["bins"] = std::move(bins);
  return j;
}

Json to_json(const packer::UtilizationStats& stats) {
  Json j;
  j["bin_count"] = stats.bin_count;
  j["min_fill"] = stats.min_fill;
  j["mean_fill"] = stats.mean_fill;
  j["max_fill"] = stats.max_fill;
  j["waste_tokens"] = stats.waste_tokens;
  return j;
}

Json to_json(const budget::BudgetConfig& config) {
  Json j;
  j["reasoning_budget"] = config.reasoning_budget;
  j["grace"] = config.grace;
  j["max_sequence"] = config.max_sequence;
  return j;
}

Json to_json(const budget::StreamStats& stats) {
  Json j;
  j["reasoning_tokens"] = stats.reasoning_tokens;
  j["total_tokens"] = stats.total_tokens;
  j["forced_closures"] = stats.forced_closures;
  j["stopped_at_cap"] = stats.stopped_at_cap;
  return j;
}

Json to_json(const footprint::Footprint& fp) {
  Json j;
  j["bits_per_weight"] = fp.bits_per_weight;
  j["bpw_params"] = fp.bpw_params;
  j["total_params"] = fp.total_params;
  j["total_bytes"] = fp.total_bytes;
  j["gigabytes"] = fp.gigabytes();
  return j;
}

Json to_json(const footprint::CacheConfig& config) {
  Json j;
  j["layers_attention"] = config.layers_attention;
  j["layers_ssm"] = config.layers_ssm;
  j["kv_bytes_per_token_per_layer"] = config.kv_bytes_per_token_per_layer;
  j["ssm_state_bytes_per_layer"] = config.ssm_state_bytes_per_layer;
  j["kv_precision_bits"] = config.kv_precision_bits;
  j["ssm_precision_bits"] = config.ssm_precision_bits;
  return j;
}

}  // namespace omnitok::cli
