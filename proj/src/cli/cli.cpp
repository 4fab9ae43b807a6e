// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "omnitok/evs.hpp"
#include "omnitok/evs_io.hpp"

namespace omnitok::cli {

namespace {

struct Resolution {
  std::int64_t width = 0;
  std::int64_t height = 0;
};

Resolution parse_resolution(const std::string& text) {
  const auto x = text.find_first_of("xX");
  std::int64_t w = 0;
  std::int64_t h = 0;
  bool ok = x != std::string::npos;
  if (ok) {
    const auto rw = std::from_chars(text.data(), text.data() + x, w);
    const auto rh = std::from_chars(text.data() + x + 1, text.data() + text.size(), h);
    ok = rw.ec == std::errc{} && rw.ptr == text.data() + x && rh.ec == std::errc{} &&
         rh.ptr == text.data() + text.size();
  }
  require(ok && w >= 1 && h >= 1, ErrorCode::InvalidInput,
          "--res expects WIDTHxHEIGHT with positive integers (got '" + text + "')");
  return {w, h};
}

std::optional<std::int64_t> parse_patch_budget(const std::string& text) {
  if (text == "default") return std::nullopt;
  for (const std::int64_t allowed : video::kFramePatchTargets) {
    if (text == std::to_string(allowed)) return allowed;
  }
  fail(ErrorCode::InvalidInput,
       "--patch-budget expects 256, 512, 768, 1024 or default (got '" + text + "')");
}

vision::ResolutionPlan plan_visual(std::int64_t width, std::int64_t height,
                                   const std::optional<std::int64_t>& frame_patches,
                                   const vision::PatchBudget& budget) {
  return frame_patches ? video::plan_frame_resolution(width, height, *frame_patches)
                       : vision::plan_image_resolution(width, height, budget);
}

std::vector<std::int64_t> read_lengths(std::istream& in) {
  std::vector<std::int64_t> lengths;
  std::string word;
  for (std::size_t n = 1; in >> word; ++n) {
    std::int64_t v = 0;
    const auto res = std::from_chars(word.data(), word.data() + word.size(), v);
    require(res.ec == std::errc{} && res.ptr == word.data() + word.size() && v >= 0,
            ErrorCode::Parse,
            "length #" + std::to_string(n) + " ('" + word + "') is not a non-negative integer");
    lengths.push_back(v);
  }
  return lengths;
}

std::string fnv1a_hex(const std::vector<std::uint8_t>& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- subcommands ---------------------------------------------------------

struct PlanImageArgs {
  std::string res;
  std::int64_t min_patches = vision::kDefaultMinPatches;
  std::int64_t max_patches = vision::kDefaultMaxPatches;
  std::int64_t per_image = TokenOverheadModel{}.per_image_fixed;
};

Json plan_image(const PlanImageArgs& a) {
  const Resolution r = parse_resolution(a.res);
  const vision::PatchBudget budget{a.min_patches, a.max_patches};
  TokenOverheadModel overhead;
  overhead.per_image_fixed = a.per_image;
  validate(overhead);
  const auto plan = vision::plan_image_resolution(r.width, r.height, budget);

  Json j = report_header("plan-image");
  j["budget"] = to_json(budget);
  j["plan"] = to_json(plan);
  j["per_image_overhead"] = overhead.per_image_fixed;
  j["total_tokens"] = vision::image_llm_tokens(plan, overhead);
  return j;
}

struct PlanVideoArgs {
  std::int64_t frames = 0;
  double duration = 0.0;
  double fps = 0.0;
  std::int64_t max_frames = video::kMaxFramesLong;
  std::string res = "512x512";
  std::string patch_budget = "default";
  bool conv3d = false;
  double evs_q = 0.0;
  std::int64_t per_frame = TokenOverheadModel{}.per_frame;
  std::int64_t per_sequence = TokenOverheadModel{}.per_sequence_fixed;
  std::string stage;
};

Json plan_video(const PlanVideoArgs& a) {
  const Resolution r = parse_resolution(a.res);
  const auto frame_patches = parse_patch_budget(a.patch_budget);
  TokenOverheadModel overhead;
  overhead.per_frame = a.per_frame;
  overhead.per_sequence_fixed = a.per_sequence;
  evs::validate_pruning_rate(a.evs_q);

  Json j = report_header("plan-video");
  std::int64_t frames = a.frames;
  if (frames == 0) {
    require(a.duration > 0.0 && a.fps > 0.0, ErrorCode::InvalidInput,
            "plan-video needs --frames, or --duration with --fps");
    const auto sampling = video::sample_frames(a.duration, a.fps, a.max_frames);
    require(sampling.frame_count() >= 1, ErrorCode::InvalidInput,
            "video is shorter than one native frame");
    frames = sampling.frame_count();
    Json s;
    s["duration"] = sampling.duration;
    s["native_fps"] = sampling.native_fps;
    s["max_frames"] = sampling.max_frames;
    s["frame_count"] = sampling.frame_count();
    s["first_timestamp"] = sampling.sampled_timestamps.front();
    s["last_timestamp"] = sampling.sampled_timestamps.back();
    j["sampling"] = std::move(s);
  }

  const auto plan = plan_visual(r.width, r.height, frame_patches, vision::PatchBudget{});
  const auto budget = video::video_token_budget(frames, plan.vit_tokens, a.conv3d, overhead);
  const std::int64_t retained = evs::retained_visual_tokens(budget, a.evs_q);
  const std::int64_t total = retained + budget.overhead_tokens;

  j["patch_budget"] = frame_patches ? Json(*frame_patches) : Json("default");
  j["frame_plan"] = to_json(plan);
  j["overhead"] = to_json(overhead);
  j["budget"] = to_json(budget);
  Json e;
  e["q"] = a.evs_q;
  e["retained_visual_tokens"] = retained;
  e["pruned_visual_tokens"] = budget.visual_tokens - retained;
  j["evs"] = std::move(e);
  j["total_tokens"] = total;
  if (!a.stage.empty()) {
    sequencer::SequenceLayout layout;
    layout.total_tokens = total;
    j["fit"] = to_json(sequencer::check_context(layout, sequencer::parse_stage(a.stage)));
  }
  return j;
}

struct PlanAudioArgs {
  double duration = 0.0;
  std::string stage;
};

Json plan_audio(const PlanAudioArgs& a) {
  const auto plan = audio::segment_clips(a.duration);
  Json j = report_header("plan-audio");
  j["mel_frames"] = audio::mel_frame_count(a.duration);
  j["clips"] = to_json(plan);
  j["total_tokens"] = plan.total_tokens();
  j["tokens_per_second"] = static_cast<double>(plan.total_tokens()) / a.duration;
  if (!a.stage.empty()) {
    sequencer::SequenceLayout layout;
    layout.total_tokens = plan.total_tokens();
    j["fit"] = to_json(sequencer::check_context(layout, sequencer::parse_stage(a.stage)));
  }
  return j;
}

struct SequenceArgs {
  std::string manifest;
  std::string stage;
};

struct PackArgs {
  std::int64_t capacity = 0;
  std::int64_t buffer = packer::kDefaultBufferSize;
  std::string input;
};

Json pack(const PackArgs& a, std::istream& in) {
  std::vector<std::int64_t> lengths;
  if (a.input.empty() || a.input == "-") {
    lengths = read_lengths(in);
  } else {
    std::ifstream file(a.input);
    require(file.is_open(), ErrorCode::Io, "cannot open " + a.input);
    lengths = read_lengths(file);
  }
  const auto packed = packer::pack(lengths, a.capacity, a.buffer);
  Json j = report_header("pack");
  j["sequence_count"] = lengths.size();
  j["buffer_size"] = a.buffer;
  j["packing"] = to_json(packed);
  j["stats"] = to_json(packer::utilization_stats(packed));
  return j;
}

struct EvsArgs {
  std::string input;
  std::uint64_t seed = 42;
  std::int64_t tubelets = 8;
  std::int64_t spatial = 16;
  std::int64_t dim = 8;
  double q = 0.5;
  std::string mask_out;
  std::string isa;
};

Json evs_prune(const EvsArgs& a) {
  Json source;
  evs::FeatureTensor tensor;
  if (!a.input.empty()) {
    tensor = evs::load_tensor(a.input);
    source["kind"] = "file";
  } else {
    tensor = evs::synth_feature_tensor(a.seed, a.tubelets, a.spatial, a.dim);
    source["kind"] = "synthetic";
    source["seed"] = a.seed;
  }
  source["tubelets"] = tensor.tubelets;
  source["spatial"] = tensor.spatial;
  source["dim"] = tensor.dim;

  auto isa = evs::kernels::default_isa();
  if (!a.isa.empty()) {
    const auto parsed = evs::kernels::parse_isa(a.isa);
    require(parsed.has_value(), ErrorCode::InvalidInput, "unknown --isa '" + a.isa + "'");
    isa = *parsed;
  }
  evs::validate_pruning_rate(a.q);
  const auto map = evs::evs_dissimilarity(tensor, isa);
  const auto mask = evs::select_tokens(map, a.q);
  if (!a.mask_out.empty()) evs::save_mask(a.mask_out, mask);

  // Mean over the unpinned tubelets, summed in index order.
  double sum = 0.0;
  for (std::int64_t i = tensor.spatial; i < map.size(); ++i) sum += map.at(i).value;
  const std::int64_t unpinned = map.size() - tensor.spatial;

  Json kept = Json::array();
  for (std::int64_t t = 0; t < mask.tubelets; ++t) {
    std::int64_t n = 0;
    for (std::int64_t s = 0; s < mask.spatial; ++s) n += mask.kept(t, s) ? 1 : 0;
    kept.push_back(n);
  }

  Json j = report_header("evs-prune");
  j["input"] = std::move(source);
  j["q"] = a.q;
  j["token_count"] = tensor.token_count();
  j["budget"] = evs::retention_budget(tensor.tubelets, tensor.spatial, a.q);
  j["retained"] = mask.retained;
  j["kept_per_tubelet"] = std::move(kept);
  j["mean_dissimilarity"] = unpinned > 0 ? sum / static_cast<double>(unpinned) : 0.0;
  j["mask_fnv1a64"] = fnv1a_hex(mask.keep);
  return j;
}

struct ReplayArgs {
  std::string trace;
  budget::BudgetConfig config;
};

Json budget_replay(const ReplayArgs& a, std::istream& in) {
  std::vector<budget::Event> events;
  if (a.trace.empty() || a.trace == "-") {
    events = budget::parse_trace(in);
  } else {
    std::ifstream file(a.trace);
    require(file.is_open(), ErrorCode::Io, "cannot open " + a.trace);
    events = budget::parse_trace(file);
  }
  const auto result = budget::replay(events, a.config);
  Json j = report_header("budget-replay");
  j["config"] = to_json(a.config);
  j["events_in_trace"] = events.size();
  j["events_consumed"] = result.actions.size();
  j["injected_closures"] = result.injected;
  j["suppressed_closes"] = result.suppressed;
  j["stats"] = to_json(result.stats);
  return j;
}

struct FootprintArgs {
  std::string preset;
  std::string inventory;
  std::int64_t tokens = -1;
  std::int64_t concurrency = 1;
};

Json footprint_report(const FootprintArgs& a) {
  require(a.preset.empty() != a.inventory.empty(), ErrorCode::InvalidInput,
          "footprint needs exactly one of --preset or --inventory");
  footprint::ParamGroupInventory inv;
  std::optional<footprint::Precision> precision;
  if (!a.preset.empty()) {
    precision = footprint::parse_precision(a.preset);
    require(precision.has_value(), ErrorCode::InvalidInput,
            "--preset expects bf16, fp8 or nvfp4 (got '" + a.preset + "')");
    inv = footprint::reference_inventory(*precision);
  } else {
    inv = parse_inventory(a.inventory);
  }

  const auto whole = footprint::effective_bpw(inv, footprint::BpwScope::WholeModel);
  const auto lm = footprint::effective_bpw(inv, footprint::BpwScope::LanguageModelOnly);

  Json groups = Json::array();
  for (const auto& g : inv.groups) {
    Json gj;
    gj["name"] = g.name;
    gj["params"] = g.param_count;
    gj["bits"] = g.bits_per_weight;
    gj["encoder"] = g.encoder;
    gj["bytes"] = static_cast<double>(g.param_count) * g.bits_per_weight / 8.0;
    groups.push_back(std::move(gj));
  }

  Json j = report_header("footprint");
  j["inventory"] = inv.name;
  j["groups"] = std::move(groups);
  j["whole_model"] = to_json(whole);
  j["language_model_only"] = to_json(lm);
  if (precision) {
    const auto pub = footprint::published_footprint(*precision);
    Json p;
    p["gigabytes"] = pub.gigabytes;
    p["bits_per_weight"] = pub.bits_per_weight;
    p["gigabytes_rel_deviation"] = whole.gigabytes() / pub.gigabytes - 1.0;
    p["bpw_rel_deviation_whole_model"] = whole.bits_per_weight / pub.bits_per_weight - 1.0;
    p["bpw_rel_deviation_language_model"] = lm.bits_per_weight / pub.bits_per_weight - 1.0;
    j["published"] = std::move(p);
  }
  if (a.tokens >= 0) {
    const auto cache = footprint::reference_cache_config();
    Json c;
    c["config"] = to_json(cache);
    c["tokens"] = a.tokens;
    c["concurrency"] = a.concurrency;
    c["bytes"] = footprint::cache_bytes(cache, a.tokens, a.concurrency);
    j["cache"] = std::move(c);
  }
  return j;
}

}  // namespace

EntryEvaluation evaluate_entry(const MediaEntry& entry, const PipelineFlags& pipeline) {
  using sequencer::MediaKind;
  EntryEvaluation ev;
  ev.item.id = entry.id;
  ev.item.kind = entry.kind;
  ev.item.start = entry.start;
  ev.item.duration = sequencer::is_timed(entry.kind) ? entry.duration : 0.0;

  switch (entry.kind) {
    case MediaKind::Image: {
      const auto plan = vision::plan_image_resolution(entry.width, entry.height, pipeline.patch_budget);
      ev.item.token_budget = vision::image_llm_tokens(plan, pipeline.overhead);
      ev.detail["plan"] = to_json(plan);
      break;
    }
    case MediaKind::Video: {
      std::int64_t frames = 0;
      if (entry.frames) {
        frames = *entry.frames;
      } else {
        const auto sampling = video::sample_frames(
            entry.duration, entry.fps.value_or(0.0), entry.max_frames.value_or(pipeline.max_frames));
        require(sampling.frame_count() >= 1, ErrorCode::InvalidInput,
                "video '" + entry.id + "' is shorter than one native frame");
        frames = sampling.frame_count();
      }
      const auto plan =
          plan_visual(entry.width, entry.height, pipeline.frame_patches, pipeline.patch_budget);
      const auto budget =
          video::video_token_budget(frames, plan.vit_tokens, pipeline.conv3d, pipeline.overhead);
      const std::int64_t retained = evs::retained_visual_tokens(budget, pipeline.evs_q);
      ev.item.token_budget = retained + frames * pipeline.overhead.per_frame;
      ev.detail["frame_plan"] = to_json(plan);
      ev.detail["budget"] = to_json(budget);
      ev.detail["retained_visual_tokens"] = retained;
      break;
    }
    case MediaKind::Audio: {
      const auto plan = audio::segment_clips(entry.duration);
      ev.item.token_budget = plan.total_tokens();
      ev.detail["clip_count"] = plan.clips.size();
      ev.detail["below_trained_minimum"] = plan.below_trained_minimum;
      break;
    }
    case MediaKind::Text:
      ev.item.token_budget = entry.tokens;
      break;
  }
  return ev;
}

Json sequence_report(const Manifest& manifest) {
  const auto& p = manifest.pipeline;
  std::vector<sequencer::MediaItem> items;
  Json entries = Json::array();
  for (const auto& entry : manifest.entries) {
    auto ev = evaluate_entry(entry, p);
    Json ej;
    ej["id"] = entry.id;
    ej["kind"] = sequencer::to_string(entry.kind);
    ej["tokens"] = ev.item.token_budget;
    if (!ev.detail.is_null()) ej["detail"] = std::move(ev.detail);
    entries.push_back(std::move(ej));
    items.push_back(std::move(ev.item));
  }
  const auto windows = sequencer::build_timeline(items, p.window);
  const auto layout = sequencer::interleave(windows, p.overhead.per_sequence_fixed);

  Json pj;
  pj["conv3d"] = p.conv3d;
  pj["evs_q"] = p.evs_q;
  pj["patch_budget"] = to_json(p.patch_budget);
  pj["frame_patches"] = p.frame_patches ? Json(*p.frame_patches) : Json("default");
  pj["overhead"] = to_json(p.overhead);
  pj["stage"] = sequencer::to_string(p.stage);
  pj["window"] = p.window;

  Json j = report_header("sequence");
  j["pipeline"] = std::move(pj);
  j["entries"] = std::move(entries);
  j["layout"] = to_json(layout);
  j["fit"] = to_json(sequencer::check_context(layout, p.stage));
  return j;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Token-budget planner for omni-modal (image/video/audio) LLM inputs", "omnitok"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "omnitok 0.1.0");

  PlanImageArgs image_args;
  auto* image_cmd = app.add_subcommand("plan-image", "Dynamic-resolution plan for one image");
  image_cmd->add_option("--res", image_args.res, "Source resolution WIDTHxHEIGHT")->required();
  image_cmd->add_option("--min-patches", image_args.min_patches, "Minimum ViT patches");
  image_cmd->add_option("--max-patches", image_args.max_patches, "Maximum ViT patches");
  image_cmd->add_option("--per-image", image_args.per_image, "Wrapper tokens per image");

  PlanVideoArgs video_args;
  auto* video_cmd = app.add_subcommand("plan-video", "Token budget for one video");
  video_cmd->add_option("--frames", video_args.frames, "Frame count (skips sampling)");
  video_cmd->add_option("--duration", video_args.duration, "Duration in seconds");
  video_cmd->add_option("--fps", video_args.fps, "Native frame rate");
  video_cmd->add_option("--max-frames", video_args.max_frames, "Sampling cap");
  video_cmd->add_option("--res", video_args.res, "Frame resolution WIDTHxHEIGHT");
  video_cmd->add_option("--patch-budget", video_args.patch_budget,
                        "Per-frame patches: 256, 512, 768, 1024 or default");
  video_cmd->add_flag("--conv3d", video_args.conv3d, "Fuse frame pairs into tubelets");
  video_cmd->add_option("--evs", video_args.evs_q, "EVS pruning rate q in [0, 1)");
  video_cmd->add_option("--overhead-per-frame", video_args.per_frame, "Wrapper tokens per frame");
  video_cmd->add_option("--overhead-per-sequence", video_args.per_sequence,
                        "Wrapper tokens per sequence");
  video_cmd->add_option("--stage", video_args.stage, "Context stage: 16k, 48k or 256k");

  PlanAudioArgs audio_args;
  auto* audio_cmd = app.add_subcommand("plan-audio", "Clip segmentation and audio token count");
  audio_cmd->add_option("--duration", audio_args.duration, "Duration in seconds")->required();
  audio_cmd->add_option("--stage", audio_args.stage, "Context stage: 16k, 48k or 256k");

  SequenceArgs seq_args;
  auto* seq_cmd = app.add_subcommand("sequence", "Interleaved layout for a YAML manifest");
  seq_cmd->add_option("manifest", seq_args.manifest, "Manifest path")->required();
  seq_cmd->add_option("--stage", seq_args.stage, "Override the manifest's context stage");

  PackArgs pack_args;
  auto* pack_cmd = app.add_subcommand("pack", "Balanced greedy packing of sequence lengths");
  pack_cmd->add_option("--capacity", pack_args.capacity, "Bin capacity in tokens")->required();
  pack_cmd->add_option("--buffer", pack_args.buffer, "Online buffer size");
  pack_cmd->add_option("--input", pack_args.input, "Lengths file (default: stdin)");

  EvsArgs evs_args;
  auto* evs_cmd = app.add_subcommand("evs-prune", "EVS token pruning on a feature tensor");
  evs_cmd->add_option("--input", evs_args.input, "EVST tensor file");
  evs_cmd->add_option("--seed", evs_args.seed, "Seed for a synthetic tensor");
  evs_cmd->add_option("--tubelets", evs_args.tubelets, "Synthetic tubelet count");
  evs_cmd->add_option("--spatial", evs_args.spatial, "Synthetic positions per tubelet");
  evs_cmd->add_option("--dim", evs_args.dim, "Synthetic feature width");
  evs_cmd->add_option("--evs", evs_args.q, "Pruning rate q in [0, 1)");
  evs_cmd->add_option("--mask-out", evs_args.mask_out, "Write the EVSM mask here");
  evs_cmd->add_option("--isa", evs_args.isa, "Kernel: scalar, avx2 or neon");

  ReplayArgs replay_args;
  auto* replay_cmd = app.add_subcommand("budget-replay", "Replay a think-token trace");
  replay_cmd->add_option("trace", replay_args.trace, "Trace file (default: stdin)");
  replay_cmd->add_option("--reasoning-budget", replay_args.config.reasoning_budget,
                         "Reasoning tokens before grace");
  replay_cmd->add_option("--grace", replay_args.config.grace, "Grace tokens");
  replay_cmd->add_option("--max-sequence", replay_args.config.max_sequence, "Hard sequence cap");

  FootprintArgs fp_args;
  auto* fp_cmd = app.add_subcommand("footprint", "Mixed-precision weight and cache footprint");
  fp_cmd->add_option("--preset", fp_args.preset, "Reference inventory: bf16, fp8 or nvfp4");
  fp_cmd->add_option("--inventory", fp_args.inventory, "YAML inventory file");
  fp_cmd->add_option("--tokens", fp_args.tokens, "Context tokens for cache sizing");
  fp_cmd->add_option("--concurrency", fp_args.concurrency, "Concurrent sequences");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    Json report;
    if (image_cmd->parsed()) {
      report = plan_image(image_args);
    } else if (video_cmd->parsed()) {
      report = plan_video(video_args);
    } else if (audio_cmd->parsed()) {
      report = plan_audio(audio_args);
    } else if (seq_cmd->parsed()) {
      Manifest manifest = parse_manifest(seq_args.manifest);
      if (!seq_args.stage.empty()) manifest.pipeline.stage = sequencer::parse_stage(seq_args.stage);
      report = sequence_report(manifest);
    } else if (pack_cmd->parsed()) {
      report = pack(pack_args, in);
    } else if (evs_cmd->parsed()) {
      report = evs_prune(evs_args);
    } else if (replay_cmd->parsed()) {
      report = budget_replay(replay_args, in);
    } else if (fp_cmd->parsed()) {
      report = footprint_report(fp_args);
    }
    out << render(report);
    return kExitOk;
  } catch (const Error& e) {
    err << "omnitok: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.is_input_error() ? kExitInputError : kExitInternalError;
  } catch (const std::exception& e) {
    err << "omnitok: internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace omnitok::cli
