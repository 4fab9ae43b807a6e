// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "omnitok/error.hpp"
#include "omnitok/video.hpp"
#include "oracles.hpp"

using namespace omnitok;
using video::video_token_budget;

TEST_CASE("sampling above the cap uses bin centres") {
  const auto p = video::sample_frames(10.0, 30.0, 64);
  REQUIRE(p.frame_count() == 64);
  CHECK(p.sampled_timestamps.front() == 0.078125);
  CHECK(p.sampled_timestamps.back() == doctest::Approx(10.0 - 0.078125));
}

TEST_CASE("sampling under the cap keeps every native frame") {
  const auto p = video::sample_frames(1.0, 4.0, 64);
  REQUIRE(p.frame_count() == 4);
  CHECK(p.sampled_timestamps[0] == 0.0);
  CHECK(p.sampled_timestamps[3] == 0.75);
}

TEST_CASE("long video sampling spans the whole duration") {
  const auto p = video::sample_frames(7680.0, 30.0, 256);
  REQUIRE(p.frame_count() == 256);
  CHECK(p.sampled_timestamps.front() == 15.0);
  CHECK(p.sampled_timestamps.back() == 7665.0);
  for (std::size_t i = 1; i < p.sampled_timestamps.size(); ++i) {
    REQUIRE(p.sampled_timestamps[i] - p.sampled_timestamps[i - 1] == doctest::Approx(30.0));
  }
}

TEST_CASE("sampling rejects non-positive inputs") {
  CHECK_THROWS_AS(video::sample_frames(0.0, 30.0, 64), Error);
  CHECK_THROWS_AS(video::sample_frames(10.0, -1.0, 64), Error);
  CHECK_THROWS_AS(video::sample_frames(10.0, 30.0, 0), Error);
}

TEST_CASE("frame resolution targets") {
  const auto a = video::plan_frame_resolution(512, 512, 1024);
  CHECK(a.grid_w == 32);
  CHECK(a.vit_tokens == 1024);
  const auto b = video::plan_frame_resolution(512, 512, 256);
  CHECK(b.grid_w == 16);
  CHECK(b.grid_h == 16);
  CHECK(b.vit_tokens == 256);
  const auto c = video::plan_frame_resolution(1920, 1080, 512);
  CHECK(c.grid_w == 30);
  CHECK(c.grid_h == 16);
  CHECK(c.vit_tokens == 480);
  const auto o = oracle::brute_force_grid(1920, 1080, 4, 512);
  CHECK(o.w == 30);
  CHECK(o.h == 16);
  CHECK_THROWS_AS(video::plan_frame_resolution(512, 512, 300), Error);
}

TEST_CASE("512-frame budgets") {
  const auto base = video_token_budget(512, 1024, false, {});
  CHECK(base.visual_tokens == 131072);
  CHECK(base.overhead_tokens == 9778);
  CHECK(base.total_tokens == 140850);
  const auto c3 = video_token_budget(512, 1024, true, {});
  CHECK(c3.tubelets == 256);
  CHECK(c3.visual_tokens == 65536);
  CHECK(c3.total_tokens == 75314);
  const double reduction = 1.0 - static_cast<double>(c3.total_tokens) / base.total_tokens;
  CHECK(reduction >= 0.46);
  CHECK(reduction <= 0.48);
}

TEST_CASE("odd frame counts round tubelets up") {
  const auto one = video_token_budget(1, 1024, true, TokenOverheadModel::zero());
  CHECK(one.visual_tokens == 256);
  CHECK(one.total_tokens == 256);
  const auto three = video_token_budget(3, 256, true, TokenOverheadModel::zero());
  CHECK(three.tubelets == 2);
  CHECK(three.visual_tokens == 128);
}

TEST_CASE("budget input validation") {
  CHECK_THROWS_AS(video_token_budget(0, 1024, false, {}), Error);
  CHECK_THROWS_AS(video_token_budget(4, 1022, false, {}), Error);
  TokenOverheadModel bad;
  bad.per_frame = -1;
  CHECK_THROWS_AS(video_token_budget(4, 1024, false, bad), Error);
}

TEST_CASE("property: conv3d halves visual tokens, overhead unchanged") {
  for (std::int64_t f = 1; f <= 1000; ++f) {
    for (const std::int64_t ppf : {256, 512, 768, 1024}) {
      const auto off = video_token_budget(f, ppf, false, {});
      const auto on = video_token_budget(f, ppf, true, {});
      REQUIRE(on.tubelets == (f + 1) / 2);
      if (f % 2 == 0) REQUIRE(2 * on.visual_tokens == off.visual_tokens);
      REQUIRE(on.visual_tokens == (f + 1) / 2 * (ppf / 4));
      REQUIRE(on.overhead_tokens == off.overhead_tokens);
      REQUIRE(on.total_tokens == on.visual_tokens + on.overhead_tokens);
      REQUIRE(off.total_tokens == off.visual_tokens + off.overhead_tokens);
    }
  }
}
