// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>

#include "cli_harness.hpp"
#include "omnitok/audio.hpp"
#include "omnitok/evs.hpp"
#include "omnitok/evs_io.hpp"
#include "omnitok/manifest.hpp"
#include "omnitok/video.hpp"

using namespace omnitok;
using harness::run_cli;
using Json = omnitok::cli::Json;

namespace {

Json ok(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  const auto r = run_cli(args, stdin_text);
  INFO(r.err);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

std::string data(const char* name) { return std::string(OMNITOK_SOURCE_DIR) + "/data/" + name; }

}  // namespace

TEST_CASE("reports carry the schema header") {
  const auto j = ok({"plan-audio", "--duration", "30"});
  auto it = j.begin();
  CHECK(it.key() == "schema");
  CHECK((++it).key() == "schema_version");
  CHECK((++it).key() == "command");
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "plan-audio");
  CHECK(j["total_tokens"] == 375);
}

TEST_CASE("plan-video with conv3d and evs") {
  const auto j = ok({"plan-video", "--frames", "512", "--res", "512x512", "--conv3d", "--evs", "0.5"});
  CHECK(j["total_tokens"] == 42546);
  const auto b = video::video_token_budget(512, 1024, true, {});
  CHECK(j["budget"]["visual_tokens"] == b.visual_tokens);
  CHECK(j["evs"]["retained_visual_tokens"].get<std::int64_t>() + b.overhead_tokens ==
        j["total_tokens"].get<std::int64_t>());
}

TEST_CASE("plan-video from duration and fps") {
  const auto j = ok({"plan-video", "--duration", "10", "--fps", "30", "--max-frames", "64",
                     "--patch-budget", "256", "--stage", "16k"});
  CHECK(j["sampling"]["frame_count"] == 64);
  CHECK(j["frame_plan"]["vit_tokens"] == 256);
  CHECK(j["total_tokens"] == 64 * 64 + 64 * 19 + 50);
  CHECK(j["fit"]["fits"] == true);
}

TEST_CASE("plan-image") {
  const auto j = ok({"plan-image", "--res", "4000x1000"});
  CHECK(j["plan"]["grid_w"] == 228);
  CHECK(j["total_tokens"] == 13224 / 4 + 2);
}

TEST_CASE("pack from stdin") {
  const auto j = ok({"pack", "--capacity", "16"}, "10 9 5 4 2\n");
  CHECK(j["packing"]["bin_count"] == 2);
  CHECK(j["packing"]["utilization"] == 0.9375);
}

TEST_CASE("sequence report totals equal recomputation") {
  const auto j = ok({"sequence", data("lecture.yaml")});
  const auto m = cli::parse_manifest(data("lecture.yaml"));
  std::int64_t sum = 0;
  for (const auto& e : m.entries) sum += cli::evaluate_entry(e, m.pipeline).item.token_budget;
  CHECK(j["layout"]["content_tokens"] == sum);
  CHECK(j["layout"]["total_tokens"] == sum + m.pipeline.overhead.per_sequence_fixed);
  std::int64_t span_sum = 0;
  for (const auto& s : j["layout"]["spans"]) span_sum += s["tokens"].get<std::int64_t>();
  CHECK(span_sum == sum);
  // Entries stay in manifest order.
  for (std::size_t i = 0; i < m.entries.size(); ++i) CHECK(j["entries"][i]["id"] == m.entries[i].id);
  CHECK(j["entries"][3]["tokens"] == audio::audio_token_count(90.0));
  const auto over = ok({"sequence", data("lecture.yaml"), "--stage", "16k"});
  CHECK(over["fit"]["limit"] == 16384);
}

TEST_CASE("evs-prune from file matches library and writes a mask") {
  const auto dir = std::filesystem::temp_directory_path() / "omnitok_cli_test";
  std::filesystem::create_directories(dir);
  const auto t = evs::synth_feature_tensor(3, 6, 12, 8);
  evs::save_tensor(dir / "t.evst", t);
  const auto j = ok({"evs-prune", "--input", (dir / "t.evst").string(), "--evs", "0.7",
                     "--mask-out", (dir / "m.evsm").string()});
  const auto mask = evs::load_mask(dir / "m.evsm");
  CHECK(mask.keep == evs::evs_prune(t, 0.7).keep);
  CHECK(j["retained"] == mask.retained);
  std::filesystem::remove_all(dir);
}

TEST_CASE("evs-prune output does not depend on the kernel") {
  const auto a = run_cli({"evs-prune", "--seed", "5", "--tubelets", "12", "--dim", "33", "--isa", "scalar"});
  const auto b = run_cli({"evs-prune", "--seed", "5", "--tubelets", "12", "--dim", "33"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("budget-replay and footprint") {
  const auto r = ok({"budget-replay", data("think_trace.txt"), "--reasoning-budget", "4", "--grace", "2"});
  CHECK(r["stats"]["forced_closures"] == 1);
  CHECK(r["stats"]["reasoning_tokens"] == 6);
  const auto s = ok({"budget-replay", "-"}, "OPEN\nTOK\nCLOSE\nEND\n");
  CHECK(s["stats"]["total_tokens"] == 3);
  const auto f = ok({"footprint", "--preset", "bf16"});
  CHECK(f["whole_model"]["bits_per_weight"] == 16.0);
  CHECK(f["published"]["gigabytes"] == 61.5);
  const auto c = ok({"footprint", "--inventory", data("custom_inventory.yaml"), "--tokens", "1000"});
  CHECK(c["inventory"] == "toy-moe");
  CHECK(c.contains("cache"));
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({"plan-audio"}).code == 1);
  CHECK(run_cli({"plan-audio", "--duration", "abc"}).code == 1);
  CHECK(run_cli({"plan-audio", "--duration", "-2"}).code == 1);
  CHECK(run_cli({"plan-image", "--res", "12by3"}).code == 1);
  CHECK(run_cli({"plan-video", "--frames", "8", "--patch-budget", "300"}).code == 1);
  CHECK(run_cli({"plan-video", "--frames", "8", "--evs", "1.5"}).code == 1);
  CHECK(run_cli({"pack", "--capacity", "4"}, "5\n").code == 1);
  CHECK(run_cli({"pack", "--capacity", "4"}, "1 x\n").code == 1);
  CHECK(run_cli({"sequence", "/nonexistent.yaml"}).code == 1);
  CHECK(run_cli({"footprint"}).code == 1);
  CHECK(run_cli({"footprint", "--preset", "int3"}).code == 1);
  CHECK(run_cli({"budget-replay", "-"}, "CLOSE\n").code == 1);
  const auto bad = run_cli({"plan-video", "--frames", "8", "--evs", "1.5"});
  CHECK(bad.out.empty());
  CHECK(bad.err.find("q") != std::string::npos);
}
