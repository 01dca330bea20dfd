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

// Finite-window lower Beurling density and the density criterion for
// phaseless injectivity on Paley-Wiener spaces.
//
// Fourier convention: f^(xi) = int f(t) exp(-2 pi i t xi) dt, so PW^{p,b}
// (spectrum in [-b/2, b/2]) has Nyquist density b and the phaseless
// criterion reads D^-(Lambda) > 2b. The integer-shifted sinc basis used by
// sinc_frame spans a subspace of PW with b = 1.

#pragma once

#include "phaselab/core.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace phaselab {

struct SamplingSet {
  std::vector<double> points;  ///< strictly increasing
  double w0 = 0.0, w1 = 0.0;   ///< window containing every point
  double bandwidth = 1.0;      ///< b
  double p = 2.0;              ///< PW exponent, in (1, inf)

  double r_cap() const noexcept { return 0.5 * (w1 - w0); }
};

/// Validates ordering, window containment, b > 0 and p in (1, inf).
SamplingSet make_sampling_set(std::vector<double> points, double w0, double w1, double bandwidth = 1.0,
                              double p = 2.0);

/// {k * step : k integer} intersected with [w0, w1].
SamplingSet grid_set(double step, double w0, double w1, double bandwidth = 1.0);

/// Sorts and removes exact duplicates; reports what changed.
struct NormalizedPoints {
  std::vector<double> points;
  bool reordered = false;
  std::size_t duplicates = 0;
};
NormalizedPoints normalize_points(std::vector<double> points);

/// inf over a in [w0, w1 - r] of #(Lambda intersect [a, a + r)), computed
/// exactly from the breakpoints of the counting function.
std::size_t min_window_count(const SamplingSet& set, double r);

struct DensityResult {
  double density = 0.0;
  double r_at_min = 0.0;  ///< radius attaining the minimum
  double r_min = 0.0;
  double r_cap = 0.0;
  double boundary_term = 0.0;  ///< 1 / r_cap
  std::vector<double> radii;
};

/// min over a geometric radius grid in [r_min, r_cap] of
/// min_window_count / r. Radii are snapped to multiples of the smallest
/// gap, which makes the value exact for uniform grids.
DensityResult lower_beurling_density(const SamplingSet& set, double r_min, std::size_t radii = 33);

/// Same with explicit radii (each in (0, r_cap]).
DensityResult lower_beurling_density(const SamplingSet& set, std::span<const double> radii);

enum class PwVerdict { Injective, NotDecidable };

std::string_view to_string(PwVerdict v);

struct InjectivityVerdict {
  PwVerdict verdict = PwVerdict::NotDecidable;
  DensityResult density;
  double threshold = 0.0;  ///< 2b
  double required = 0.0;   ///< 2b (1 + boundary_term)
};

/// Injective when the density exceeds 2b (1 + 1/r_cap); NotDecidable
/// otherwise, since the criterion is only sufficient. r_min defaults to r_cap / 4.
InjectivityVerdict phaseless_injectivity_verdict(const SamplingSet& set, std::optional<double> r_min = std::nullopt);

nlohmann::ordered_json to_json(const InjectivityVerdict& v, const SamplingSet& set);

}  // namespace phaselab
