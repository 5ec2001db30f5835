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

#pragma once

#include <vector>

namespace eevc {

/// Supporting lines Z >= a_k * delta + b_k under the convex cache-size
/// curve Z(delta): the cache percentage needed to reach hit ratio delta
/// under a Zipf popularity law.
struct PiecewiseSegments {
  struct Line {
    double a = 0.0;  // slope, percent per unit hit ratio
    double b = 0.0;  // intercept, percent
  };
  std::vector<Line> lines;
  double max_under_error_percent = 0.0;  // worst envelope gap on the build grid

  /// Lower envelope max(0, max_k(a_k * delta + b_k)).
  double envelope(double delta) const;
};

/// Exact discrete curve: hit ratio of caching the top k of `catalog_size`
/// objects with popularity ~ 1/i^s, as a function of the cached share
/// z = 100*k/catalog_size (percent). Returns the piecewise-linear
/// interpolation value of the cache size (percent) needed for hit ratio
/// `delta`. Used as the reference the envelope under-approximates.
double zipf_cache_size_percent(double delta, double exponent, int catalog_size);

/// Builds K supporting lines by taking the exact curve's segments at hit
/// ratios (2k-1)/(2K), k=1..K (0.1, 0.3, ... for K=5). Throws
/// std::invalid_argument for degenerate inputs.
PiecewiseSegments build_piecewise_segments(double exponent, int catalog_size,
                                           int segments);

}  // namespace eevc
