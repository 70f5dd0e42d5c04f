// Copyright 2026 The uaslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <limits>

#include "uaslab/ball.hpp"
#include "uaslab/rng.hpp"
#include "uaslab/vec.hpp"

using namespace uaslab;

TEST_CASE("projection scales exterior points onto the sphere") {
  const Ball ball = make_origin_ball(2, 1.0);
  const Vec p = project(ball, Vec{3.0, 4.0});
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(norm(p) <= 1.0 + 1e-12);
}

TEST_CASE("projection fixes interior points and the center") {
  const Ball ball = make_origin_ball(2, 5.0);
  CHECK(project(ball, Vec{3.0, 4.0}) == Vec{3.0, 4.0});
  const Ball unit = make_origin_ball(2, 1.0);
  CHECK(project(unit, Vec{0.0, 0.0}) == Vec{0.0, 0.0});
}

TEST_CASE("projection rejects non-finite input and bad balls") {
  const Ball ball = make_origin_ball(2, 1.0);
  CHECK_THROWS_AS(project(ball, Vec{1.0, std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_origin_ball(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_origin_ball(2, -1.0), std::invalid_argument);
}

TEST_CASE("projection is nonexpansive and idempotent on random pairs") {
  RngStream rng(13, 0);
  for (int c = 0; c < 2000; ++c) {
    const std::size_t d = 1 + rng.uniform_index(6);
    Vec center(d);
    for (double& v : center) v = 4.0 * rng.uniform01() - 2.0;
    const Ball ball{center, 0.05 + 2.0 * rng.uniform01()};
    Vec x(d);
    Vec y(d);
    for (double& v : x) v = 10.0 * rng.uniform01() - 5.0;
    for (double& v : y) v = 10.0 * rng.uniform01() - 5.0;
    const Vec px = project(ball, x);
    const Vec py = project(ball, y);
    CHECK(distance(px, py) <= distance(x, y) + 1e-12);
    CHECK(distance(project(ball, px), px) <= 1e-12);
  }
}

TEST_CASE("gaussian_vector with sigma 0 returns zeros without consuming draws") {
  RngStream a(7, 1);
  RngStream b(7, 1);
  const Vec g = gaussian_vector(a, 3, 0.0);
  CHECK(g == Vec{0.0, 0.0, 0.0});
  // a consumed nothing: streams still aligned
  CHECK(a.next_u64() == b.next_u64());
  CHECK_THROWS_AS(gaussian_vector(a, 3, -1.0), std::invalid_argument);
}

TEST_CASE("equal (seed, stream_id) replays bit-identical sequences") {
  RngStream a(42, 5);
  RngStream b(42, 5);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  const Vec ga = gaussian_vector(a, 33, 2.5);
  const Vec gb = gaussian_vector(b, 33, 2.5);
  CHECK(ga == gb);

  RngStream c(42, 6);  // different stream separates
  bool all_equal = true;
  RngStream a2(42, 5);
  for (int i = 0; i < 16; ++i) all_equal = all_equal && (a2.next_u64() == c.next_u64());
  CHECK_FALSE(all_equal);
}

TEST_CASE("gaussian second moment matches sigma^2 at scale") {
  RngStream rng(2024, 0);
  const std::size_t d = 10000;
  const Vec g = gaussian_vector(rng, d, 2.0);
  const double mean_sq = squared_norm(g) / static_cast<double>(d);
  CHECK(mean_sq >= 3.8);
  CHECK(mean_sq <= 4.2);
}

TEST_CASE("uniform_index is in range and hits every value") {
  RngStream rng(1, 2);
  bool seen[5] = {false, false, false, false, false};
  for (int i = 0; i < 1000; ++i) {
    const std::size_t v = rng.uniform_index(5);
    REQUIRE(v < 5);
    seen[v] = true;
  }
  for (bool s : seen) CHECK(s);
  CHECK_THROWS_AS(rng.uniform_index(0), std::invalid_argument);
}
