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

#include "eevc/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace eevc {
namespace {

// Popularity prefix sums H(k) = sum_{i<=k} i^-s, k = 0..M.
std::vector<double> popularity_prefix(double exponent, int catalog_size) {
  std::vector<double> prefix(catalog_size + 1, 0.0);
  for (int i = 1; i <= catalog_size; ++i) {
    prefix[i] = prefix[i - 1] + std::pow(static_cast<double>(i), -exponent);
  }
  return prefix;
}

void check_inputs(double exponent, int catalog_size) {
  if (!(exponent > 0.0)) {
    throw std::invalid_argument("zipf curve: exponent must be positive");
  }
  if (catalog_size < 100) {
    throw std::invalid_argument("zipf curve: catalog must hold at least 100 objects");
  }
}

}  // namespace

double PiecewiseSegments::envelope(double delta) const {
  double best = 0.0;
  for (const Line& line : lines) {
    best = std::max(best, line.a * delta + line.b);
  }
  return best;
}

double zipf_cache_size_percent(double delta, double exponent, int catalog_size) {
  check_inputs(exponent, catalog_size);
  if (delta <= 0.0) return 0.0;
  if (delta >= 1.0) return 100.0;
  const std::vector<double> prefix = popularity_prefix(exponent, catalog_size);
  const double total = prefix[catalog_size];
  // Find the segment [H(k)/H(M), H(k+1)/H(M)] containing delta.
  const double target = delta * total;
  auto it = std::lower_bound(prefix.begin(), prefix.end(), target);
  int k = static_cast<int>(it - prefix.begin());
  if (k == 0) k = 1;
  const double d0 = prefix[k - 1] / total;
  const double d1 = prefix[k] / total;
  const double z0 = 100.0 * (k - 1) / catalog_size;
  const double z1 = 100.0 * k / catalog_size;
  const double t = (d1 > d0) ? (delta - d0) / (d1 - d0) : 0.0;
  return z0 + t * (z1 - z0);
}

PiecewiseSegments build_piecewise_segments(double exponent, int catalog_size,
                                           int segments) {
  check_inputs(exponent, catalog_size);
  if (segments < 2) {
    throw std::invalid_argument("build_piecewise_segments: need at least 2 lines");
  }
  const std::vector<double> prefix = popularity_prefix(exponent, catalog_size);
  const double total = prefix[catalog_size];

  PiecewiseSegments out;
  double prev_slope = -1.0;
  for (int k = 1; k <= segments; ++k) {
    const double delta_k = (2.0 * k - 1.0) / (2.0 * segments);
    const double target = delta_k * total;
    auto it = std::lower_bound(prefix.begin(), prefix.end(), target);
    int j = static_cast<int>(it - prefix.begin());
    if (j == 0) j = 1;
    const double d0 = prefix[j - 1] / total;
    const double d1 = prefix[j] / total;
    const double z0 = 100.0 * (j - 1) / catalog_size;
    const double z1 = 100.0 * j / catalog_size;
    if (!(d1 > d0)) {
      throw std::runtime_error("build_piecewise_segments: flat popularity segment");
    }
    // The exact curve's own segment is a supporting line of the convex
    // piecewise-linear curve, so the envelope never exceeds it.
    PiecewiseSegments::Line line;
    line.a = (z1 - z0) / (d1 - d0);
    line.b = z0 - line.a * d0;
    if (line.a <= prev_slope) {
      throw std::runtime_error("build_piecewise_segments: curve is not convex");
    }
    prev_slope = line.a;
    out.lines.push_back(line);
  }

  double worst = 0.0;
  for (int g = 0; g <= 1000; ++g) {
    const double delta = g / 1000.0;
    const double exact = zipf_cache_size_percent(delta, exponent, catalog_size);
    const double env = out.envelope(delta);
    worst = std::max(worst, exact - env);
  }
  out.max_under_error_percent = worst;
  return out;
}

}  // namespace eevc
