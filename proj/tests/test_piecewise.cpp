// Copyright 2026 The eevc Authors
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

#include <algorithm>

#include <stdexcept>

#include "eevc/piecewise.hpp"

using namespace eevc;

TEST_CASE("empty cache has zero size on the envelope") {
  PiecewiseSegments seg = build_piecewise_segments(0.8, 10000, 5);
  CHECK(seg.envelope(0.0) == 0.0);
  CHECK(seg.lines.size() == 5);
}

TEST_CASE("envelope never exceeds the exact curve") {
  for (double s : {0.6, 0.8, 1.1}) {
    for (int segments : {2, 5, 9}) {
      PiecewiseSegments seg = build_piecewise_segments(s, 10000, segments);
      for (int g = 0; g <= 1000; ++g) {
        const double delta = g / 1000.0;
        const double exact = zipf_cache_size_percent(delta, s, 10000);
        CHECK(seg.envelope(delta) <= exact + 1e-9);
      }
    }
  }
}

TEST_CASE("default build reports its worst-case looseness") {
  PiecewiseSegments seg = build_piecewise_segments(0.8, 10000, 5);
  // Frozen from the grid oracle below: the gap concentrates at the steep
  // tail near full hit ratio, where the last anchor (0.9) sits far from
  // delta = 1. Everywhere below 0.95 the envelope is within 5 percent.
  CHECK(seg.max_under_error_percent == doctest::Approx(6.19685).epsilon(1e-4));
  double below_tail = 0.0;
  for (int g = 0; g <= 950; ++g) {
    const double delta = g / 1000.0;
    below_tail = std::max(below_tail,
                          zipf_cache_size_percent(delta, 0.8, 10000) -
                              seg.envelope(delta));
  }
  CHECK(below_tail < 5.0);
}

TEST_CASE("envelope is convex and non-decreasing on the unit interval") {
  PiecewiseSegments seg = build_piecewise_segments(0.8, 10000, 5);
  double prev = seg.envelope(0.0);
  double prev_slope = -1.0;
  for (int g = 1; g <= 100; ++g) {
    const double delta = g / 100.0;
    const double value = seg.envelope(delta);
    CHECK(value >= prev - 1e-12);
    const double slope = (value - prev) * 100.0;
    CHECK(slope >= prev_slope - 1e-9);
    prev = value;
    prev_slope = slope;
  }
  // Slopes of the stored lines increase strictly.
  for (std::size_t k = 1; k < seg.lines.size(); ++k) {
    CHECK(seg.lines[k].a > seg.lines[k - 1].a);
  }
}

TEST_CASE("exact curve endpoints and monotonicity") {
  CHECK(zipf_cache_size_percent(0.0, 0.8, 10000) == 0.0);
  CHECK(zipf_cache_size_percent(1.0, 0.8, 10000) == 100.0);
  double prev = 0.0;
  for (int g = 0; g <= 200; ++g) {
    const double z = zipf_cache_size_percent(g / 200.0, 0.8, 10000);
    CHECK(z >= prev - 1e-12);
    prev = z;
  }
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(build_piecewise_segments(0.0, 10000, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_piecewise_segments(0.8, 50, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_piecewise_segments(0.8, 10000, 1), std::invalid_argument);
}
