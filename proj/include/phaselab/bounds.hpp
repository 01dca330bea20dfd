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
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

namespace phaselab {

/// How a constant was obtained. Only exact-spectral and exhaustive values
/// are exact up to rounding; heuristic values are one-sided bounds.
enum class Method { ExactSpectral, Exhaustive, Heuristic, Oracle };

std::string_view to_string(Method m);

struct BoundsOptions {
  std::uint64_t seed = 0;
  int restarts = 32;     ///< random restarts for p in {1, inf}
  int iterations = 600;  ///< projected (sub)gradient steps per restart
  bool use_grid = true;  ///< sphere-grid cross-check for real d <= 3
  Tolerances tol{};
};

/// A ||x|| <= ||Phi x|| <= B ||x|| with the extremal unit vectors (basis
/// coordinates, unit in the signal norm).
struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
  Method method_A = Method::ExactSpectral;
  Method method_B = Method::ExactSpectral;
  Vector bottom;
  Vector top;
};

FrameBounds frame_bounds(const Frame& frame, const MeasurementSpace& mspace, const BoundsOptions& opts = {});

/// Lower frame bound of the sub-frame Phi_S; 0 for empty S.
double restricted_lower_bound(const Frame& frame, const MeasurementSpace& mspace, const IndexSet& subset,
                              const BoundsOptions& opts = {});

/// Unit minimizer of ||[u, Phi_S]|| (basis coordinates) and the attained value.
struct NearKernel {
  Vector u;
  double residual = 0.0;
};

NearKernel near_kernel_vector(const Frame& frame, const MeasurementSpace& mspace, const IndexSet& subset,
                              const BoundsOptions& opts = {});

/// v times the unimodular factor that makes <v, u> real and nonnegative,
/// so that d(u + v, u - v) = 2 for unit u, v.
Vector align_phase(const Frame& frame, const Vector& u, const Vector& v);

// -- strong complement property ------------------------------------------

enum class SubsetStrategy { Exhaustive, LocalSearch, Auto };

std::string_view to_string(SubsetStrategy s);
SubsetStrategy parse_strategy(std::string_view text);

inline constexpr std::size_t kExhaustiveLimit = 24;

struct SigmaOptions {
  SubsetStrategy strategy = SubsetStrategy::Auto;  ///< Auto: exhaustive when N <= 24
  std::uint64_t seed = 0;
  int random_seeds = 64;  ///< local search: random starting splits
  int prefix_seeds = 4;   ///< local search: best contiguous prefix splits also descended
  BoundsOptions bounds{};
};

struct SigmaResult {
  double sigma = 0.0;
  IndexSet subset;  ///< S*, sorted; never contains index N-1
  Method method = Method::Exhaustive;
  SubsetStrategy strategy = SubsetStrategy::Exhaustive;
  std::size_t evaluations = 0;
};

/// max(A(Phi_S), A(Phi_{S^c})) for one split.
double split_value(const Frame& frame, const MeasurementSpace& mspace, const IndexSet& subset,
                   const BoundsOptions& opts = {});

SigmaResult scp_sigma(const Frame& frame, const MeasurementSpace& mspace, const SigmaOptions& opts = {});

// -- Lipschitz constants -------------------------------------------------

/// ||A(x) - A(y)|| / d(x, y); NaN when d(x, y) = 0.
double lipschitz_ratio(const Frame& frame, const MeasurementSpace& mspace, const Vector& x, const Vector& y);

struct BetaResult {
  double beta = 0.0;  ///< equals B
  double B = 0.0;
  double max_sampled_ratio = 0.0;
  double top_pair_ratio = 0.0;  ///< ratio for (top vector, 0)
  std::size_t samples = 0;
  bool validated = false;  ///< sampled ratios <= B (1 + 1e-9) and top pair >= 0.99 B
};

BetaResult beta(const Frame& frame, const MeasurementSpace& mspace, const FrameBounds& bounds,
                std::uint64_t seed = 0, std::size_t samples = 10000);

struct AlphaOptions {
  std::size_t budget = 16;  ///< random-restart minimizations of the ratio
  bool bruteforce = true;   ///< grid oracle for real d <= 3
  int grid_d2 = 720;
  int grid_d3 = 120;
  int search_evaluations = 4000;
  std::uint64_t seed = 0;
  BoundsOptions bounds{};
};

struct BruteforceAlpha {
  double alpha = 0.0;           ///< grid minimum after local polishing (upper bound on alpha)
  double grid_minimum = 0.0;    ///< raw grid minimum
  double grid_tolerance = 0.0;  ///< max ratio change between adjacent grid cells
  Vector u, v;                  ///< unit minimizers; x = u + v, y = u - v
};

/// Product-sphere grid oracle. Real field only, d <= 3.
BruteforceAlpha alpha_bruteforce(const Frame& frame, const MeasurementSpace& mspace, int grid_d2 = 720,
                                 int grid_d3 = 120);

struct AlphaEstimate {
  double alpha_upper = 0.0;
  std::optional<BruteforceAlpha> bruteforce;
  Vector x, y;         ///< pair attaining alpha_upper
  std::string source;  ///< "witness", "frame-bound" or "search"
};

AlphaEstimate alpha_estimate(const Frame& frame, const MeasurementSpace& mspace, const SigmaResult& sigma,
                             const FrameBounds& bounds, const AlphaOptions& opts = {});

// -- condition number ----------------------------------------------------

struct TauBounds {
  double lower = 0.0;  ///< B/(2 sigma) real, A/(2 sigma) complex
  double upper = std::numeric_limits<double>::infinity();  ///< B/sigma real, unbounded complex
  std::string formula;
  double empirical_lower = 0.0;      ///< beta / alpha_upper
  std::optional<double> empirical;   ///< beta / alpha_bruteforce
  std::optional<bool> empirical_in_interval;  ///< real field, 5% inflation
  bool infinite = false;             ///< sigma = 0
  IndexSet subset;                   ///< S* witnessing sigma
};

struct StabilityReport {
  Field field = Field::Real;
  std::size_t d = 0, n = 0;
  Exponent p = Exponent::Two;
  bool weighted = false;
  FrameBounds bounds;
  SigmaResult sigma;
  BetaResult beta;
  AlphaEstimate alpha;
  TauBounds tau;
  Tolerances tol;
};

inline constexpr double kTauInflation = 0.05;

TauBounds condition_number(const StabilityReport& report);

struct AnalyzeOptions {
  std::uint64_t seed = 0;
  SigmaOptions sigma{};
  AlphaOptions alpha{};
  BoundsOptions bounds{};
  std::size_t beta_samples = 10000;
};

/// frame_bounds, scp_sigma, beta, alpha_estimate and condition_number in one
/// pass, with per-module seeds derived from opts.seed.
StabilityReport analyze_stability(const Frame& frame, const MeasurementSpace& mspace, const AnalyzeOptions& opts = {});

nlohmann::ordered_json to_json(const StabilityReport& report);

}  // namespace phaselab
