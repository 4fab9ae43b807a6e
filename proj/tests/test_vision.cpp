// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "omnitok/error.hpp"
#include "omnitok/rng.hpp"
#include "omnitok/vision.hpp"
#include "oracles.hpp"

using namespace omnitok;
using vision::PatchBudget;
using vision::plan_image_resolution;

TEST_CASE("default patch budget bounds") {
  const PatchBudget b;
  CHECK(b.min_patches == 1024);
  CHECK(b.max_patches == 13312);
}

TEST_CASE("512x512 maps to a 32x32 grid") {
  const auto p = plan_image_resolution(512, 512);
  CHECK(p.target_width == 512);
  CHECK(p.target_height == 512);
  CHECK(p.grid_w == 32);
  CHECK(p.grid_h == 32);
  CHECK(p.vit_tokens == 1024);
  CHECK(p.llm_tokens == 256);
}

TEST_CASE("1024x1024 is already inside the budget") {
  const auto p = plan_image_resolution(1024, 1024);
  CHECK(p.grid_w == 64);
  CHECK(p.grid_h == 64);
  CHECK(p.vit_tokens == 4096);
  CHECK(p.llm_tokens == 1024);
}

TEST_CASE("wide panorama is scaled down under the max") {
  const auto p = plan_image_resolution(4000, 1000);
  CHECK(p.grid_w == 228);
  CHECK(p.grid_h == 58);
  CHECK(p.vit_tokens == 13224);
  CHECK(p.target_width == 3648);
  CHECK(p.target_height == 928);
  const auto o = oracle::brute_force_grid(4000, 1000, 1024, 13312);
  CHECK(o.w == p.grid_w);
  CHECK(o.h == p.grid_h);
}

TEST_CASE("small image is upscaled to the min") {
  const auto p = plan_image_resolution(100, 100);
  CHECK(p.grid_w == 32);
  CHECK(p.grid_h == 32);
  CHECK(p.vit_tokens == 1024);
}

TEST_CASE("exact-half rounding goes to the smaller even value") {
  // 1840 / 16 = 115, halfway between 114 and 116.
  const auto p = plan_image_resolution(1840, 1840);
  CHECK(p.grid_w == 114);
  CHECK(p.grid_h == 114);
}

TEST_CASE("llm tokens add per-image overhead") {
  const auto p512 = plan_image_resolution(512, 512);
  CHECK(vision::image_llm_tokens(p512, TokenOverheadModel::zero()) == 256);
  TokenOverheadModel o = TokenOverheadModel::zero();
  o.per_image_fixed = 2;
  CHECK(vision::image_llm_tokens(p512, o) == 258);
  CHECK(vision::image_llm_tokens(plan_image_resolution(1024, 1024), TokenOverheadModel::zero()) ==
        1024);
}

TEST_CASE("invalid dimensions and budgets") {
  CHECK_THROWS_AS(plan_image_resolution(0, 10), Error);
  CHECK_THROWS_AS(plan_image_resolution(10, -1), Error);
  try {
    plan_image_resolution(10, 10, {1, 3});
    FAIL("expected BudgetInfeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetInfeasible);
  }
  try {
    plan_image_resolution(10, 10, {20, 10});
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
}

TEST_CASE("narrow budgets that no even grid can hit are infeasible") {
  // Even grids near 30 patches: 28 (2x14, 4x7 is odd) and 32; nothing in [29, 31].
  try {
    plan_image_resolution(1000, 1000, {29, 31});
    FAIL("expected BudgetInfeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetInfeasible);
  }
}

TEST_CASE("property: grids are even, at least 2, inside the budget") {
  SplitMix64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const auto w = static_cast<std::int64_t>(rng.next_below(8192)) + 1;
    const auto h = static_cast<std::int64_t>(rng.next_below(8192)) + 1;
    const auto p = plan_image_resolution(w, h);
    REQUIRE(p.grid_w % 2 == 0);
    REQUIRE(p.grid_h % 2 == 0);
    REQUIRE(p.grid_w >= 2);
    REQUIRE(p.grid_h >= 2);
    REQUIRE(p.vit_tokens >= 1024);
    REQUIRE(p.vit_tokens <= 13312);
    REQUIRE(p.llm_tokens * 4 == p.vit_tokens);
    REQUIRE(p.target_width == 16 * p.grid_w);
  }
}

TEST_CASE("property: max-clamped grids match the brute-force oracle") {
  SplitMix64 rng(11);
  int checked = 0;
  while (checked < 2000) {
    const auto w = static_cast<std::int64_t>(rng.next_below(16000)) + 16;
    const auto h = static_cast<std::int64_t>(rng.next_below(16000)) + 16;
    // Oracle covers the shrink direction only.
    if ((w / 16.0) * (h / 16.0) <= 13312.0) continue;
    const auto p = plan_image_resolution(w, h);
    const auto o = oracle::brute_force_grid(w, h, 1024, 13312);
    if (o.w * o.h < 1024) continue;
    INFO(w << "x" << h);
    REQUIRE(p.vit_tokens >= o.w * o.h - 2 * std::max(o.w, o.h));
    REQUIRE(p.vit_tokens <= 13312);
    ++checked;
  }
}

TEST_CASE("property: monotone in area at fixed aspect") {
  for (const auto& [aw, ah] : {std::pair{1, 1}, {16, 9}, {4, 3}, {3, 1}, {1, 2}}) {
    std::int64_t prev = 0;
    for (std::int64_t k = 1; k <= 8192 / std::max(aw, ah); ++k) {
      const auto p = plan_image_resolution(k * aw, k * ah);
      INFO(k * aw << "x" << k * ah);
      REQUIRE(p.vit_tokens >= prev);
      prev = p.vit_tokens;
    }
  }
}

TEST_CASE("property: aspect fidelity for in-budget sources") {
  SplitMix64 rng(13);
  int checked = 0;
  while (checked < 5000) {
    const auto w = static_cast<std::int64_t>(rng.next_below(4096)) + 256;
    const auto h = static_cast<std::int64_t>(rng.next_below(4096)) + 256;
    const double area = (w / 16.0) * (h / 16.0);
    if (area < 1024 || area > 13312) continue;
    const auto p = plan_image_resolution(w, h);
    INFO(w << "x" << h);
    REQUIRE(vision::aspect_error(p.grid_w, p.grid_h, w, h) <= std::log(1.25));
    ++checked;
  }
}
