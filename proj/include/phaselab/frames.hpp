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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace phaselab {

/// A finite family of measurement functionals. Row i of `rows` realizes
/// x -> <row_i, x> in the coordinates of the signal basis; the optional
/// `gram` is the Gram matrix of that basis. Real frames store complex
/// entries with zero imaginary part.
struct Frame {
  Field field = Field::Real;
  Matrix rows;
  std::vector<double> labels;
  std::optional<Matrix> gram;
  std::vector<std::string> warnings;

  std::size_t d() const noexcept { return static_cast<std::size_t>(rows.cols()); }
  std::size_t n() const noexcept { return static_cast<std::size_t>(rows.rows()); }
  SignalSpace signal_space() const { return SignalSpace{d(), field, SignalNorm::L2, gram}; }
};

/// Validates and assembles a frame. Empty `labels` become 0..N-1.
/// Zero-row frames are only produced by `restrict`.
Frame make_frame(Matrix rows, Field field, std::vector<double> labels = {},
                 std::optional<Matrix> gram = std::nullopt);

Frame identity_frame(std::size_t d, Field field = Field::Real);

/// I.i.d. standard Gaussian rows (real and imaginary parts independent for
/// complex frames), drawn row by row so a frame of N rows is a prefix of
/// the frame with N+1 rows for the same seed. N < d is rejected unless
/// `allow_subspanning` is set.
Frame random_frame(std::size_t d, std::size_t n, Field field, std::uint64_t seed,
                   bool allow_subspanning = false);

/// sin(pi t)/(pi t), exactly 0 at nonzero integers and 1 at 0.
double sinc(double t);

/// Uniform samples of the integer-shifted sinc basis sinc(t - l), l in [-2m, 2m].
struct SincFrameSpec {
  int m = 1;                  ///< basis index range [-2m, 2m], d = 4m + 1
  double step = 0.25;         ///< base sample spacing
  std::optional<int> window;  ///< half-width W in base steps; default 4(2m + 1)
  int oversample = 1;         ///< q: spacing is step / q, N = 2 W q + 1

  int half_width() const { return window.value_or(4 * (2 * m + 1)); }
  std::size_t dimension() const { return static_cast<std::size_t>(4 * m + 1); }
  std::size_t count() const { return static_cast<std::size_t>(2 * half_width() * oversample + 1); }
};

Frame sinc_frame(const SincFrameSpec& spec);

/// The same basis sampled at arbitrary real points.
Frame sinc_frame_at(std::span<const double> points, int m);

/// Sub-frame with the rows of `subset`, in the given order; no renormalization.
Frame restrict(const Frame& frame, const IndexSet& subset);

IndexSet complement(const IndexSet& subset, std::size_t n);
IndexSet all_indices(std::size_t n);

/// Frame coefficients in orthonormal coordinates: Phi L^{-*} with G = L L^*.
Matrix whitened_rows(const Frame& frame);

/// Maps orthonormal coordinates z back to basis coefficients x = L^{-*} z.
Vector from_whitened(const Frame& frame, const Vector& z);

RealVector measure(const Frame& frame, const Vector& x);

// -- serialization -------------------------------------------------------

nlohmann::ordered_json frame_to_json(const Frame& frame);

/// `context` prefixes error messages (usually the file name).
Frame frame_from_json(const nlohmann::json& j, std::optional<Field> expected = std::nullopt,
                      const std::string& context = "frame");

void save_frame(const Frame& frame, const std::filesystem::path& path);
Frame load_frame(const std::filesystem::path& path, std::optional<Field> expected = std::nullopt);

}  // namespace phaselab
