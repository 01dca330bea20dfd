// SPDX-License-Identifier: Apache-2.0
//
// phaselab: uniqueness and stability analysis for phase retrieval on finite frames
// Copyright (C) 2026 The phaselab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include "phaselab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace phaselab;

namespace {

// #(Lambda in [a, a + r)) scanned over a dense grid of window positions
std::size_t scanned_min_count(const SamplingSet& s, double r, int steps) {
  std::size_t best = s.points.size();
  for (int k = 0; k <= steps; ++k) {
    const double a = s.w0 + (s.w1 - r - s.w0) * k / steps;
    const auto lo = std::lower_bound(s.points.begin(), s.points.end(), a);
    const auto hi = std::lower_bound(s.points.begin(), s.points.end(), a + r);
    best = std::min(best, static_cast<std::size_t>(hi - lo));
  }
  return best;
}

}  // namespace

TEST_CASE("grid sets") {
  const SamplingSet g = grid_set(0.25, -20, 20);
  CHECK(g.points.size() == 161);
  CHECK(g.points.front() == -20.0);
  CHECK(g.points.back() == 20.0);
  CHECK(g.r_cap() == 20.0);
  const auto odd = grid_set(0.3, 0.1, 1.0).points;
  REQUIRE(odd.size() == 3);
  CHECK(odd[0] == doctest::Approx(0.3));
  CHECK(odd[2] == doctest::Approx(0.9));
  CHECK_THROWS_AS(grid_set(0.0, -1, 1), Error);
  CHECK_THROWS_AS(grid_set(1.0, 1, -1), Error);
}

TEST_CASE("sampling set validation") {
  CHECK_THROWS_AS(make_sampling_set({}, 0, 1), Error);
  CHECK_THROWS_AS(make_sampling_set({0.5, 0.2}, 0, 1), Error);
  CHECK_THROWS_AS(make_sampling_set({0.5, 0.5}, 0, 1), Error);
  CHECK_THROWS_AS(make_sampling_set({2.0}, 0, 1), Error);
  CHECK_THROWS_AS(make_sampling_set({0.5}, 0, 1, 0.0), Error);
  CHECK_THROWS_AS(make_sampling_set({0.5}, 0, 1, 1.0, 1.0), Error);
  CHECK_NOTHROW(make_sampling_set({0.5}, 0, 1, 1.0, 4.0));
}

TEST_CASE("normalization sorts and deduplicates") {
  const NormalizedPoints n = normalize_points({3.0, 1.0, 2.0, 1.0});
  CHECK(n.points == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(n.reordered);
  CHECK(n.duplicates == 1);
  const NormalizedPoints m = normalize_points({1.0, 2.0});
  CHECK_FALSE(m.reordered);
  CHECK(m.duplicates == 0);
}

TEST_CASE("window counts match a dense scan") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 30.0);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> pts(60 + k);
    for (double& p : pts) p = u(gen);
    auto np = normalize_points(pts);
    const SamplingSet s = make_sampling_set(np.points, 0.0, 30.0);
    for (double r : {0.7, 2.3, 5.1, 11.0}) {
      const std::size_t exact = min_window_count(s, r);
      const std::size_t scan = scanned_min_count(s, r, 200000);
      CHECK(exact <= scan);
      CHECK(exact == scan);
    }
  }
}

TEST_CASE("uniform grids have density 1/step") {
  for (double step : {0.25, 0.5, 1.0}) {
    const DensityResult d = lower_beurling_density(grid_set(step, -20, 20), 5.0);
    CHECK(d.density == doctest::Approx(1.0 / step));
    CHECK(d.boundary_term == doctest::Approx(1.0 / 20.0));
    CHECK(d.radii.size() >= 2);  // snapped radii are deduplicated
    CHECK(d.radii.size() <= 33);
    CHECK(std::is_sorted(d.radii.begin(), d.radii.end()));
    CHECK(d.radii.front() >= 5.0 - 1e-12);
    CHECK(d.radii.back() <= 20.0 + 1e-12);
  }
  // non-uniform grid points: the finite-window estimate is within 1/r of 1/step
  const DensityResult d = lower_beurling_density(grid_set(0.3, -10, 10), 2.5);
  CHECK(std::abs(d.density - 1.0 / 0.3) <= 1.0 / d.r_at_min + 1e-12);
}

TEST_CASE("integers with every third point removed have density 2/3") {
  std::vector<double> pts;
  for (int k = -60; k <= 60; ++k)
    if (((k % 3) + 3) % 3 != 0) pts.push_back(k);
  const SamplingSet s = make_sampling_set(pts, -60, 60);
  const std::vector<double> radii = {3, 6, 12, 24, 48};
  const DensityResult d = lower_beurling_density(s, radii);
  CHECK(d.density == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("phaseless injectivity verdicts") {
  const auto fine = phaseless_injectivity_verdict(grid_set(0.25, -20, 20));
  CHECK(fine.verdict == PwVerdict::Injective);
  CHECK(fine.threshold == doctest::Approx(2.0));
  CHECK(fine.required == doctest::Approx(2.0 * (1.0 + 1.0 / 20.0)));
  CHECK(phaseless_injectivity_verdict(grid_set(0.25, -40, 40)).verdict == PwVerdict::Injective);
  CHECK(phaseless_injectivity_verdict(grid_set(1.0, -20, 20)).verdict == PwVerdict::NotDecidable);
  CHECK(phaseless_injectivity_verdict(grid_set(1.0, -40, 40)).verdict == PwVerdict::NotDecidable);
  // density 2 equals the threshold: not decidable
  CHECK(phaseless_injectivity_verdict(grid_set(0.5, -20, 20)).verdict == PwVerdict::NotDecidable);
  // bandwidth scales the threshold
  CHECK(phaseless_injectivity_verdict(grid_set(0.25, -20, 20, 2.5)).verdict == PwVerdict::NotDecidable);
  CHECK(to_string(PwVerdict::Injective) == "Injective");
}
