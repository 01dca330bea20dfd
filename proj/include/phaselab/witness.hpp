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

#pragma once

#include "phaselab/bounds.hpp"
#include "phaselab/core.hpp"
#include "phaselab/frames.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace phaselab {

/// Instability witness from near-kernel vectors of a split (S, S^c).
struct WitnessPair {
  IndexSet subset;
  Vector u, v;  ///< unit; v phase-aligned to u
  Vector x, y;  ///< u + v, u - v
  double u_residual = 0.0;  ///< ||[u, Phi_S]||
  double v_residual = 0.0;  ///< ||[v, Phi_{S^c}]||
  double measurement_gap = 0.0;
  double signal_gap = 0.0;
  double ratio = 0.0;
};

WitnessPair build_witness(const Frame& frame, const MeasurementSpace& mspace, const IndexSet& subset,
                          const BoundsOptions& opts = {});

// -- sweeps --------------------------------------------------------------

struct SweepRow {
  int param = 0;  ///< m for dimension sweeps, q for oversampling sweeps
  int m = 0, q = 1;
  std::size_t d = 0, n = 0;
  double A = 0.0, B = 0.0, sigma = 0.0;
  double alpha_upper = 0.0;
  double tau_lower = 0.0;
  double ratio = 0.0;  ///< witness ratio at S*
  Method sigma_method = Method::Heuristic;
  IndexSet subset;
  // B-normalized constants (frame scaled by 1/B)
  double A_over_B = 0.0, sigma_over_B = 0.0, alpha_over_B = 0.0;
  double tau_lower_normalized = 0.0;  ///< tau_lower of the scaled frame
};

struct SweepResult {
  std::string kind;  ///< "dimension" or "oversample"
  std::vector<SweepRow> rows;
  double slope = 0.0;      ///< least-squares slope of log2(tau_lower) against the parameter
  double intercept = 0.0;  ///< log2 intercept of the same fit
  double tau_spread = 0.0;  ///< max/min - 1 of tau_lower_normalized
  bool tau_increasing = false;
};

struct SweepOptions {
  SincFrameSpec base{};  ///< step, window and oversampling template; m and q are overridden
  SigmaOptions sigma{};
  std::size_t alpha_budget = 4;
  std::uint64_t seed = 0;
};

SweepRow sweep_cell(int m, int q, const MeasurementSpace& mspace, const SweepOptions& opts);

SweepResult dimension_sweep(const std::vector<int>& ms, const MeasurementSpace& mspace,
                            const SweepOptions& opts = {});
SweepResult oversample_sweep(int m, const std::vector<int>& qs, const MeasurementSpace& mspace,
                             const SweepOptions& opts = {});

/// Least-squares line through (x_i, y_i); returns {slope, intercept}.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

std::string to_csv(const SweepResult& result);
nlohmann::ordered_json to_json(const SweepResult& result);
nlohmann::ordered_json to_json(const WitnessPair& pair, Field field);

}  // namespace phaselab
