// Copyright 2026 The akira-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <limits>

#include "akira/augment.hpp"
#include "akira/error.hpp"
#include "akira/flow.hpp"
#include "akira/flow_metrics.hpp"
#include "akira/rng.hpp"

using namespace akira;

namespace {

FlowField constant_flow(int w, int h, float u, float v) {
  FlowField f(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      f.du(x, y) = u;
      f.dv(x, y) = v;
    }
  }
  return f;
}

FlowField random_flow(int w, int h, std::uint64_t seed, double min_mag, double max_mag) {
  Rng rng(seed);
  FlowField f(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double a = rng.uniform(0, 2 * M_PI), m = rng.uniform(min_mag, max_mag);
      f.du(x, y) = static_cast<float>(m * std::cos(a));
      f.dv(x, y) = static_cast<float>(m * std::sin(a));
    }
  }
  return f;
}

FlowField subtract(const FlowField& a, const FlowField& b) {
  FlowField out(a.width(), a.height());
  for (std::size_t i = 0; i < a.data().size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

}  // namespace

TEST_SUITE("flow_metrics") {
  TEST_CASE("self similarity, opposite flows and the 45 degree pair") {
    const auto f = random_flow(40, 30, 1, 1.0, 5.0);
    CHECK(flowsim(f, f).score == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(flowsim(f, f.scaled(-1.0f)).score == doctest::Approx(-1.0).epsilon(1e-12));
    const auto a = constant_flow(20, 20, 1, 0), b = constant_flow(20, 20, 1, 1);
    const auto r = flowsim(a, b);
    CHECK(std::abs(r.score - std::sqrt(0.5)) <= 1e-6);
    CHECK(r.valid == 400u);
    CHECK(r.valid_fraction == 1.0);
    CHECK_FALSE(r.empty);
  }

  TEST_CASE("direction-only scale invariance and symmetry") {
    const auto a = random_flow(50, 40, 2, 10.0, 20.0);
    const auto b = random_flow(50, 40, 3, 10.0, 20.0);
    const double base = flowsim(a, b).score;
    for (float lambda : {0.1f, 10.0f}) {
      CHECK(flowsim(a.scaled(lambda), b.scaled(lambda)).score == doctest::Approx(base).epsilon(1e-6));
    }
    CHECK(flowsim(b, a).score == doctest::Approx(base).epsilon(1e-12));
  }

  TEST_CASE("scores stay within bounds and empty masks are flagged") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto r = flowsim(random_flow(16, 16, s, 0, 3), random_flow(16, 16, s + 100, 0, 3));
      CHECK(r.score >= -1.0);
      CHECK(r.score <= 1.0);
    }
    const auto tiny = constant_flow(8, 8, 0.1f, 0);
    const auto r = flowsim(tiny, tiny);
    CHECK(r.empty);
    CHECK(r.valid == 0u);
    CHECK(r.score == 0.0);
    const auto zero = constant_flow(8, 8, 0, 0);
    FlowSimConfig cfg;
    cfg.threshold = 0.0;
    CHECK(flowsim(zero, zero, cfg).empty);  // zero magnitude never counts
  }

  TEST_CASE("pixels without correspondence are skipped") {
    auto a = constant_flow(10, 10, 2, 0);
    auto b = constant_flow(10, 10, 2, 0);
    b.du(3, 3) = std::numeric_limits<float>::quiet_NaN();
    a.dv(5, 5) = std::numeric_limits<float>::infinity();
    const auto r = flowsim(a, b);
    CHECK(r.valid == 98u);
    CHECK(r.score == 1.0);
  }

  TEST_CASE("valid mask shrinks as the threshold grows") {
    const auto a = random_flow(40, 40, 4, 0, 4), b = random_flow(40, 40, 5, 0, 4);
    std::uint64_t prev = ~0ull;
    for (double t : {0.0, 0.5, 1.0, 2.0, 3.0, 4.5}) {
      FlowSimConfig cfg;
      cfg.threshold = t;
      const auto v = flowsim(a, b, cfg).valid;
      CHECK(v <= prev);
      prev = v;
    }
    CHECK(prev == 0u);
  }

  TEST_CASE("result is independent of the worker count") {
    const auto a = random_flow(97, 61, 6, 0, 4), b = random_flow(97, 61, 7, 0, 4);
    FlowSimConfig one, many;
    many.threads = 5;
    const auto r1 = flowsim(a, b, one), r5 = flowsim(a, b, many);
    CHECK(r1.score == r5.score);
    CHECK(r1.valid == r5.valid);
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(flowsim(FlowField(4, 4), FlowField(4, 5)), DimensionMismatch);
    FlowSimConfig bad;
    bad.threshold = -1;
    CHECK_THROWS_AS(flowsim(FlowField(4, 4), FlowField(4, 4), bad), ConfigError);
  }

  TEST_CASE("clip aggregation skips empty frames") {
    FlowSimResult a{0.5, 0.4, 10, false}, b{0, 0, 0, true}, c{1.0, 0.6, 20, false};
    const auto s = aggregate({a, b, c});
    CHECK(s.score == doctest::Approx(0.75));
    CHECK(s.valid_fraction == doctest::Approx(1.0 / 3.0));
    CHECK(s.empty_frames == 1u);
    CHECK_FALSE(s.empty);
    const auto e = aggregate({b, b});
    CHECK(e.empty);
    CHECK(e.score == 0.0);
  }

  TEST_CASE("theoretical zoom flow") {
    CameraIntrinsics k;
    k.fx = k.fy = 201;
    k.cx = k.cy = 100;
    k.width = k.height = 201;
    const auto z = theoretical_zoom_flow(1.5, 1.5, k, 201, 201);
    for (float v : z.data()) CHECK(v == 0.0f);
    const auto f = theoretical_zoom_flow(2.0, 1.5, k, 201, 201);
    CHECK(f.du(110, 100) == 5.0f);
    CHECK(f.dv(110, 100) == 0.0f);
  }

  TEST_CASE("theoretical distortion flow") {
    // 200 x 200 camera, centre (100, 100); the grid is one pixel wider so
    // that (200, 100) is addressable. r^2 = 0.5 there, so the flow is 5 px.
    CameraIntrinsics k;
    k.fx = k.fy = 200;
    k.cx = k.cy = 100;
    k.width = k.height = 200;
    const Distortion d{0.1, 0, 0};
    const auto f = theoretical_distortion_flow(d, {}, k, 201, 201);
    CHECK(f.du(200, 100) == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(f.dv(200, 100) == 0.0f);
    CHECK(f.du(100, 100) == 0.0f);
    CHECK(f.dv(100, 100) == 0.0f);
    const auto g = theoretical_distortion_flow({0.3, -0.2, 0.1}, {0.25, 0.1, -0.1}, k, 201, 201);
    CHECK(g.du(100, 100) == 0.0f);
    CHECK(g.dv(100, 100) == 0.0f);
    const auto z = theoretical_distortion_flow(d, d, k, 200, 200);
    for (float v : z.data()) CHECK(v == 0.0f);
  }

  TEST_CASE("flow from identity and translation warps") {
    const auto id = flow_from_warp(WarpField::identity(30, 20));
    for (float v : id.data()) CHECK(v == 0.0f);
    WarpField w(30, 20);
    for (int y = 0; y < 20; ++y) {
      for (int x = 0; x < 30; ++x) {
        w.src_x[y * 30 + x] = static_cast<float>(x - 3);
        w.src_y[y * 30 + x] = static_cast<float>(y);
      }
    }
    const auto f = flow_from_warp(w);
    for (int y = 0; y < 20; ++y) {
      for (int x = 0; x < 27; ++x) {
        REQUIRE(f.du(x, y) == 3.0f);
        REQUIRE(f.dv(x, y) == 0.0f);
      }
      // These source columns leave the frame: no correspondence.
      for (int x = 27; x < 30; ++x) REQUIRE(std::isnan(f.du(x, y)));
    }
  }

  TEST_CASE("zoomsim of synthetic zoom warps") {
    const auto k = CameraIntrinsics::centered(128, 96);
    for (double s : {1.2, 2.0, 3.0}) {
      const auto gen = flow_from_warp(zoom_warp_field(s, k));
      CHECK(zoomsim(gen, s, 1.0, k).score > 0.99);
      CHECK(zoomsim(gen, 1.0, s, k).score < -0.99);
    }
    CHECK(zoomsim(FlowField(128, 96), 1.5, 1.5, k).empty);
  }

  TEST_CASE("zoomsim on twenty random zoom pairs") {
    const auto k = CameraIntrinsics::centered(128, 128);
    Rng rng(51);
    for (int i = 0; i < 20; ++i) {
      OpticalFrame a, b;
      a.enabled.zoom = b.enabled.zoom = true;
      a.zoom = a.effective_zoom = rng.uniform(1, 3);
      do {
        b.zoom = b.effective_zoom = rng.uniform(1, 3);
      } while (std::abs(b.zoom - a.zoom) < 0.05);
      const auto gen = flow_from_warp(relative_warp(a, b, k));
      CHECK(zoomsim(gen, b.zoom, a.zoom, k).score > 0.99);
      CHECK(zoomsim(gen, a.zoom, b.zoom, k).score < -0.99);
    }
  }

  TEST_CASE("distortsim of a crop-compensated distortion warp") {
    const auto k = CameraIntrinsics::centered(128, 128);
    for (double k1 : {0.1, 0.05, -0.05, -0.1}) {
      const Distortion d{k1, 0, 0};
      const double s = distortion_crop_factor(d, k);
      const auto raw = flow_from_warp(distortion_warp_field(d, k, s));
      const auto comp = subtract(raw, theoretical_zoom_flow(s, 1.0, k, 128, 128));
      CHECK(distortsim(comp, {}, d, k).score > 0.95);
      CHECK(distortsim(comp, d, {}, k).score < -0.95);
    }
    CHECK(distortsim(FlowField(128, 128), {0.05, 0, 0}, {0.05, 0, 0}, k).empty);
  }

  TEST_CASE("distortsim on twenty random k1 deltas") {
    const auto k = CameraIntrinsics::centered(128, 128);
    Rng rng(52);
    for (int i = 0; i < 20; ++i) {
      double delta;
      do {
        delta = rng.uniform(-0.1, 0.1);
      } while (std::abs(delta) < 0.02);
      const double lo = std::max(-0.1, -0.1 - delta), hi = std::min(0.1, 0.1 - delta);
      OpticalFrame a, b;
      a.enabled.distortion = b.enabled.distortion = true;
      a.distortion = {rng.uniform(lo, hi), 0, 0};
      b.distortion = {a.distortion.k1 + delta, 0, 0};
      const auto gen = flow_from_warp(relative_warp(a, b, k));
      CHECK(distortsim(gen, a.distortion, b.distortion, k).score > 0.95);
      CHECK(distortsim(gen, b.distortion, a.distortion, k).score < -0.95);
    }
  }

  TEST_CASE("translation flow is nearly orthogonal to a radial field on average") {
    const auto k = CameraIntrinsics::centered(128, 128);
    const auto gen = constant_flow(128, 128, 5, 0);
    const auto r = distortsim(gen, {}, {0.1, 0, 0}, k);
    CHECK(std::abs(r.score) < 0.2);
  }
}
