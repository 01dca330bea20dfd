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

#include "phaselab/linalg.hpp"

#include <Eigen/SVD>

namespace phaselab {

namespace {

template <class Mat>
SingularPair extreme_pair(const Mat& m, bool smallest) {
  const Eigen::Index d = m.cols();
  SingularPair out;
  out.vector = Vector::Zero(d);
  if (m.rows() == 0) {
    out.vector(0) = 1.0;
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const auto& v = svd.matrixV();
  if (smallest) {
    // V is d x d; its last column spans the smallest direction, or the
    // null space when rows < d
    out.value = m.rows() < d ? 0.0 : s(s.size() - 1);
    out.vector = v.col(d - 1).template cast<cplx>();
  } else {
    out.value = s(0);
    out.vector = v.col(0).template cast<cplx>();
  }
  return out;
}

}  // namespace

SingularPair smallest_singular(const Matrix& m, Field field) {
  if (field == Field::Real) return extreme_pair<RealMatrix>(m.real(), true);
  return extreme_pair<Matrix>(m, true);
}

SingularPair largest_singular(const Matrix& m, Field field) {
  if (field == Field::Real) return extreme_pair<RealMatrix>(m.real(), false);
  return extreme_pair<Matrix>(m, false);
}

RealVector singular_values(const Matrix& m, Field field) {
  if (m.rows() == 0 || m.cols() == 0) return RealVector();
  if (field == Field::Real) return Eigen::JacobiSVD<RealMatrix>(m.real()).singularValues();
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

std::size_t numerical_rank(const Matrix& m, Field field, double rank_rel) {
  const RealVector s = singular_values(m, field);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_rel * s(0)) ++r;
  return r;
}

Matrix select_rows(const Matrix& m, const IndexSet& subset) {
  Matrix out(static_cast<Eigen::Index>(subset.size()), m.cols());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset[k] >= static_cast<std::size_t>(m.rows()))
      throw Error(ErrorKind::IndexOutOfRange, "row index " + std::to_string(subset[k]) + " out of range");
    out.row(static_cast<Eigen::Index>(k)) = m.row(static_cast<Eigen::Index>(subset[k]));
  }
  return out;
}

Matrix weighted_rows(const Matrix& m, const MeasurementSpace& mspace) {
  mspace.check_size(static_cast<std::size_t>(m.rows()));
  if (mspace.unweighted()) return m;
  Matrix out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.row(i) *= mspace.weight(static_cast<std::size_t>(i));
  return out;
}

IndexSet mask_to_subset(std::uint64_t mask, std::size_t n) {
  IndexSet s;
  for (std::size_t i = 0; i < n && i < 64; ++i)
    if ((mask >> i) & 1ULL) s.push_back(i);
  return s;
}

}  // namespace phaselab
