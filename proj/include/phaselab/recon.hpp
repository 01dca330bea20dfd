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

#include "phaselab/core.hpp"
#include "phaselab/frames.hpp"

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

namespace phaselab {

struct ReconOptions {
  std::size_t restarts = 16;
  std::size_t max_iter = 500;
  double tol = 1e-10;  ///< converged when the residual drops below tol
  std::uint64_t seed = 0;
};

struct ReconResult {
  Vector estimate;
  double residual = 0.0;  ///< || |Phi estimate| - b ||_2
  std::optional<double> quotient_error;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t best_restart = 0;
  std::vector<double> history;           ///< residual per iteration of the best restart
  std::vector<double> restart_residuals;
};

/// Alternating minimization: impute phases from the current estimate, then
/// least-squares back-projection. The l2 residual is non-increasing along
/// each restart. The best restart is chosen by (residual, restart index).
ReconResult solve(const Frame& frame, const RealVector& measurements, const ReconOptions& opts = {},
                  const std::optional<Vector>& truth = std::nullopt);

nlohmann::ordered_json to_json(const ReconResult& r, Field field);

}  // namespace phaselab
