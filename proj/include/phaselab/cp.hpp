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

#include <optional>
#include <utility>

#include <json.hpp>

namespace phaselab {

/// Real frames: injective iff the complement property holds. Complex
/// frames: failure of the property rules injectivity out, but the property
/// alone does not certify it.
enum class Injectivity { Injective, NotInjective, Undetermined };

std::string_view to_string(Injectivity i);

enum class CpCertificate {
  Counting,    ///< N <= 2d - 2: some split has fewer than d rows on each side
  Exhaustive,  ///< every split (S, S^c) checked
  FlatSearch,  ///< closures of row-spanned flats of rank < d
};

std::string_view to_string(CpCertificate c);

struct CpOptions {
  bool heuristic = false;  ///< allow the flat search for N > 24
  bool counting_shortcut = true;
  double rank_rel = 1e-10;
  std::size_t flat_budget = 200000;  ///< flats examined by the flat search
};

struct CpVerdict {
  Field field = Field::Real;
  bool holds = false;
  std::optional<IndexSet> violating_subset;
  /// Unit annihilators: Phi_S u = 0, Phi_{S^c} v = 0 (basis coordinates).
  std::optional<std::pair<Vector, Vector>> witness;
  double u_residual = 0.0;
  double v_residual = 0.0;
  Injectivity injectivity = Injectivity::Undetermined;
  CpCertificate certificate = CpCertificate::Exhaustive;
  bool complete = true;  ///< false when the flat search ran out of budget
};

CpVerdict check_cp(const Frame& frame, const CpOptions& opts = {});

/// x = u + v, y = u - v from a failing verdict: |Phi x| = |Phi y| while
/// d(x, y) = 2.
std::pair<Vector, Vector> nonuniqueness_pair(const CpVerdict& verdict, const Frame& frame);

nlohmann::ordered_json to_json(const CpVerdict& verdict);

}  // namespace phaselab
