// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>

#include "omnitok/manifest.hpp"

using namespace omnitok;
using namespace omnitok::cli;

namespace {

const char* kMixed = R"(version: 1
pipeline:
  conv3d: true
  evs_q: 0.7
  frame_patches: 512
  overhead: {per_frame: 19, per_image_fixed: 2, per_sequence_fixed: 50}
  stage: 48k
entries:
  - {id: cover, kind: image, width: 800, height: 600}
  - id: clip
    kind: video
    start: 5
    duration: 90.5
    fps: 29.97
    width: 1280
    height: 720
  - {id: voice, kind: audio, start: 5, duration: 90.5}
  - {id: q, kind: text, tokens: 40}
)";

std::vector<FieldError> errors_of(const std::string& text) {
  try {
    parse_manifest_text(text);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

}  // namespace

TEST_CASE("minimal manifest takes defaults") {
  const auto m = parse_manifest_text("entries:\n  - {id: a, kind: image, width: 10, height: 20}\n");
  CHECK(m.version == kManifestVersion);
  CHECK(m.pipeline == PipelineFlags{});
  REQUIRE(m.entries.size() == 1);
  CHECK(m.entries[0].width == 10);
  CHECK(m.entries[0].kind == sequencer::MediaKind::Image);
}

TEST_CASE("out-of-range q names the field and line") {
  const auto errs = errors_of("pipeline:\n  evs_q: 1.5\nentries: []\n");
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].field == "pipeline.evs_q");
  CHECK(errs[0].line == 2);
}

TEST_CASE("every bad field is reported") {
  const auto errs = errors_of(
      "pipeline:\n  stage: 32k\n  colour: red\nentries:\n"
      "  - {id: a, kind: image, width: -3, height: 4}\n"
      "  - {id: a, kind: sound}\n");
  std::vector<std::string> fields;
  for (const auto& e : errs) fields.push_back(e.field);
  CHECK(std::find(fields.begin(), fields.end(), "pipeline.stage") != fields.end());
  CHECK(std::find(fields.begin(), fields.end(), "pipeline.colour") != fields.end());
  CHECK(std::find(fields.begin(), fields.end(), "entries[0].width") != fields.end());
  CHECK(std::find(fields.begin(), fields.end(), "entries[1].kind") != fields.end());
  for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i - 1].line <= errs[i].line);
}

TEST_CASE("malformed yaml and missing files") {
  CHECK_THROWS_AS(parse_manifest_text("entries: [\n"), Error);
  CHECK_THROWS_AS(parse_manifest("/nonexistent/manifest.yaml"), Error);
}

TEST_CASE("mixed manifest round-trips") {
  const auto m = parse_manifest_text(kMixed);
  CHECK(m.pipeline.conv3d);
  CHECK(m.pipeline.evs_q == 0.7);
  CHECK(m.pipeline.frame_patches == 512);
  CHECK(m.pipeline.stage == sequencer::Stage::Ctx48k);
  REQUIRE(m.entries.size() == 4);
  CHECK(m.entries[1].fps == 29.97);
  const auto text = serialize_manifest(m);
  const auto back = parse_manifest_text(text);
  CHECK(back == m);
  CHECK(serialize_manifest(back) == text);
}

TEST_CASE("inventory round-trip and errors") {
  const auto inv = parse_inventory_text(
      "name: t\ngroups:\n  - {name: a, params: 1000, bits: 4.5}\n"
      "  - {name: enc, params: 20, bits: 16, encoder: true}\n");
  REQUIRE(inv.groups.size() == 2);
  CHECK(inv.groups[1].encoder);
  CHECK(parse_inventory_text(serialize_inventory(inv)) == inv);
  CHECK_THROWS_AS(parse_inventory_text("name: t\ngroups: []\n"), Error);
  CHECK_THROWS_AS(parse_inventory_text("groups:\n  - {name: a, params: 0, bits: 4}\n"), Error);
}
