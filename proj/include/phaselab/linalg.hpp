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

// Dense helpers shared by the bounds, cp and witness modules. Everything
// here works in orthonormal signal coordinates (see whitened_rows).

#pragma once

#include "phaselab/core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <type_traits>
#include <vector>

namespace phaselab {

struct SingularPair {
  double value = 0.0;
  Vector vector;  ///< unit right singular vector
};

/// Smallest singular value of `m` as a map K^d -> K^rows; 0 when rows < d.
SingularPair smallest_singular(const Matrix& m, Field field);
SingularPair largest_singular(const Matrix& m, Field field);

/// All singular values, descending (length min(rows, d)).
RealVector singular_values(const Matrix& m, Field field);

std::size_t numerical_rank(const Matrix& m, Field field, double rank_rel);

Matrix select_rows(const Matrix& m, const IndexSet& subset);

/// diag(w) * m for the weights of `mspace` (identity when unweighted).
Matrix weighted_rows(const Matrix& m, const MeasurementSpace& mspace);

IndexSet mask_to_subset(std::uint64_t mask, std::size_t n);

/// Random unit vector, Gaussian direction.
template <class Gen>
Vector random_unit(std::size_t d, Field field, Gen& gen) {
  std::normal_distribution<double> normal;
  Vector x(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x(i) = cplx(normal(gen), field == Field::Complex ? normal(gen) : 0.0);
  const double n = x.norm();
  if (n == 0.0) {
    x.setZero();
    x(0) = 1.0;
    return x;
  }
  return x / n;
}

// -- exhaustive split enumeration ----------------------------------------

/// Extreme eigenvalues of the Gram matrices Phi_S^* Phi_S and of the
/// complement. A side with fewer than d rows reports 0 for both and is
/// flagged deficient without an eigen solve.
struct SplitSpectrum {
  double min_s = 0.0, max_s = 0.0;
  double min_c = 0.0, max_c = 0.0;
  bool deficient_s = true, deficient_c = true;
};

namespace detail {

template <class Scalar>
struct HermitianExtremes {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  explicit HermitianExtremes(Eigen::Index d) : d_(d), solver_(d) {}

  void operator()(const Scalar* g, double& lo, double& hi) {
    if (d_ == 1) {
      lo = hi = std::real(g[0]);
    } else if (d_ == 2) {
      const double a = std::real(g[0]);
      const double c = std::real(g[3]);
      const double mean = 0.5 * (a + c);
      const double r = std::hypot(0.5 * (a - c), std::abs(g[1]));
      hi = mean + r;
      // product of eigenvalues = det; avoids cancellation in mean - r
      const double det = a * c - std::norm(g[1]);
      lo = hi > 0.0 ? det / hi : mean - r;
    } else if constexpr (std::is_same_v<Scalar, double>) {
      if (d_ == 3) {
        Eigen::Matrix3d m = Eigen::Map<const Eigen::Matrix3d>(g);
        fixed_.computeDirect(m, Eigen::EigenvaluesOnly);
        lo = fixed_.eigenvalues()(0);
        hi = fixed_.eigenvalues()(2);
        return;
      }
      general(g, lo, hi);
    } else {
      general(g, lo, hi);
    }
  }

 private:
  void general(const Scalar* g, double& lo, double& hi) {
    solver_.compute(Eigen::Map<const Mat>(g, d_, d_), Eigen::EigenvaluesOnly);
    lo = solver_.eigenvalues()(0);
    hi = solver_.eigenvalues()(d_ - 1);
  }

  Eigen::Index d_;
  Eigen::SelfAdjointEigenSolver<Mat> solver_;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> fixed_;
};

template <class Scalar, class Visit>
void enumerate_splits_impl(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& rows, Visit&& visit) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = rows.rows();
  const Eigen::Index d = rows.cols();
  const Eigen::Index dd = d * d;
  const int bits = static_cast<int>(n) - 1;  // index n-1 always sits in the complement
  const int low_bits = std::min(bits, 12);
  const int high_bits = bits - low_bits;
  const std::uint64_t low_count = 1ULL << low_bits;
  const std::uint64_t high_count = 1ULL << high_bits;
  const std::uint64_t full_low = low_count - 1;

  auto outer = [&](Eigen::Index i) -> Mat { return rows.row(i).adjoint() * rows.row(i); };

  // subset sums of the rank-one terms, built from the entry without the lowest bit
  std::vector<Scalar> t_low(static_cast<std::size_t>(low_count * dd), Scalar(0));
  std::vector<Scalar> t_high(static_cast<std::size_t>(high_count * dd), Scalar(0));
  std::vector<Mat> rank_one(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) rank_one[static_cast<std::size_t>(i)] = outer(i);
  for (std::uint64_t k = 1; k < low_count; ++k) {
    const int b = std::countr_zero(k);
    Eigen::Map<Mat>(t_low.data() + k * dd, d, d) =
        Eigen::Map<const Mat>(t_low.data() + (k & (k - 1)) * dd, d, d) + rank_one[static_cast<std::size_t>(b)];
  }
  for (std::uint64_t k = 1; k < high_count; ++k) {
    const int b = std::countr_zero(k);
    Eigen::Map<Mat>(t_high.data() + k * dd, d, d) =
        Eigen::Map<const Mat>(t_high.data() + (k & (k - 1)) * dd, d, d) +
        rank_one[static_cast<std::size_t>(low_bits + b)];
  }
  // complement high parts, including the fixed last row
  std::vector<Scalar> t_high_c(static_cast<std::size_t>(high_count * dd));
  const std::uint64_t full_high = high_count - 1;
  for (std::uint64_t k = 0; k < high_count; ++k) {
    Eigen::Map<Mat>(t_high_c.data() + k * dd, d, d) =
        Eigen::Map<const Mat>(t_high.data() + (k ^ full_high) * dd, d, d) + rank_one[static_cast<std::size_t>(n - 1)];
  }

  HermitianExtremes<Scalar> extremes(d);
  Mat gs(d, d), gc(d, d);
  SplitSpectrum sp;
  for (std::uint64_t hi = 0; hi < high_count; ++hi) {
    const int pop_hi = std::popcount(hi);
    const auto th = Eigen::Map<const Mat>(t_high.data() + hi * dd, d, d);
    const auto thc = Eigen::Map<const Mat>(t_high_c.data() + hi * dd, d, d);
    for (std::uint64_t lo = 0; lo < low_count; ++lo) {
      const std::uint64_t mask = (hi << low_bits) | lo;
      const Eigen::Index size_s = pop_hi + std::popcount(lo);
      sp.deficient_s = size_s < d;
      sp.deficient_c = n - size_s < d;
      if (sp.deficient_s) {
        sp.min_s = sp.max_s = 0.0;
      } else {
        gs.noalias() = Eigen::Map<const Mat>(t_low.data() + lo * dd, d, d) + th;
        extremes(gs.data(), sp.min_s, sp.max_s);
      }
      if (sp.deficient_c) {
        sp.min_c = sp.max_c = 0.0;
      } else {
        gc.noalias() = Eigen::Map<const Mat>(t_low.data() + (lo ^ full_low) * dd, d, d) + thc;
        extremes(gc.data(), sp.min_c, sp.max_c);
      }
      if (!visit(mask, sp)) return;
    }
  }
}

}  // namespace detail

/// Visits every split (S, S^c) with index N-1 in S^c, in increasing mask
/// order (bit i set means i in S), passing the Gram spectra of both sides.
/// `visit(mask, spectrum)` returns false to stop early. Requires N <= 25.
template <class Visit>
void enumerate_splits(const Matrix& rows, Field field, Visit&& visit) {
  if (rows.rows() < 1) return;
  if (rows.rows() > 25) throw Error(ErrorKind::Infeasible, "split enumeration is limited to N <= 25");
  if (field == Field::Real) {
    const RealMatrix r = rows.real();
    detail::enumerate_splits_impl<double>(r, visit);
  } else {
    detail::enumerate_splits_impl<cplx>(rows, visit);
  }
}

}  // namespace phaselab
