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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace phaselab {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Sorted, duplicate-free list of 0-based measurement indices.
using IndexSet = std::vector<std::size_t>;

enum class Field { Real, Complex };

std::string_view to_string(Field field);
Field parse_field(std::string_view text);

enum class ErrorKind {
  DimensionMismatch,
  InvalidArgument,
  IndexOutOfRange,
  Parse,
  Schema,
  Infeasible,
  SubSpanning,
  Precondition,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Every numerical threshold used by the library. Modules take a copy of
/// this record instead of hard-coding their own constants.
struct Tolerances {
  double linalg_rel = 1e-9;     ///< relative accuracy expected of dense linear algebra
  double optimization = 1e-6;   ///< accuracy of optimization-derived quantities
  double rank_rel = 1e-10;      ///< singular values below rank_rel * s_max count as zero
  double phase_search = 1e-10;  ///< golden-section tolerance on the phase angle
  double kernel_abs = 1e-9;     ///< ||Phi_S u|| below this certifies an annihilator
};

// -- signal space --------------------------------------------------------

enum class SignalNorm { L2 };

/// K^d with the L2 norm of a (possibly non-orthonormal) coefficient basis.
/// When `gram` is set, ||x||^2 = x^* G x; otherwise the coordinates are
/// orthonormal and the norm is the Euclidean one.
struct SignalSpace {
  std::size_t dimension = 1;
  Field field = Field::Real;
  SignalNorm norm_kind = SignalNorm::L2;
  std::optional<Matrix> gram;

  double norm(const Vector& x) const;
  /// <x, y> = y^* G x
  cplx inner(const Vector& x, const Vector& y) const;
};

// -- measurement space ---------------------------------------------------

enum class Exponent { One, Two, Infinity };

std::string_view to_string(Exponent p);
Exponent parse_exponent(std::string_view text);

/// Weighted l^p on a finite index set: ||z|| = (sum_i (w_i |z_i|)^p)^(1/p),
/// and max_i w_i |z_i| for p = infinity. An empty weight vector means unit
/// weights for any length. The norm depends only on |z|, hence it is solid.
class MeasurementSpace {
 public:
  explicit MeasurementSpace(Exponent p = Exponent::Two, std::vector<double> weights = {});

  Exponent exponent() const noexcept { return p_; }
  bool unweighted() const noexcept { return weights_.empty(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double weight(std::size_t i) const { return weights_.empty() ? 1.0 : weights_[i]; }

  /// Throws DimensionMismatch when explicit weights do not have length n.
  void check_size(std::size_t n) const;

  double norm(std::span<const double> w) const;
  double norm(const Vector& z) const;
  double norm(const RealVector& z) const;

  /// ||chi_S|| for an index set of a length-n sequence.
  double indicator_norm(const IndexSet& subset, std::size_t n) const;

  MeasurementSpace restrict(const IndexSet& subset) const;

  /// Exact spectral path applies: frame bounds are singular values of diag(w) Phi.
  bool spectral() const noexcept { return p_ == Exponent::Two; }

 private:
  Exponent p_;
  std::vector<double> weights_;
};

// -- quotient metric and phaseless measurements --------------------------

/// |Phi x| for a row matrix Phi (N x d).
RealVector measure(const Matrix& rows, Field field, const Vector& x);

/// d(x, y) = min_{|t| = 1} ||x - t y|| in the Euclidean norm.
double quotient_distance(const Vector& x, const Vector& y, Field field);

/// Same, for the Gram norm of `space`.
double quotient_distance(const Vector& x, const Vector& y, const SignalSpace& space);

/// Generic fallback for an arbitrary signal norm: coarse scan of the phase
/// angle followed by golden-section refinement to `theta_tol`.
double quotient_distance(const Vector& x, const Vector& y, Field field,
                         const std::function<double(const Vector&)>& norm,
                         double theta_tol = 1e-10);

/// Unimodular t minimizing ||x - t y|| (Gram norm). Returns 1 when y ⟂ x.
cplx optimal_phase(const Vector& x, const Vector& y, const SignalSpace& space);

/// A point of the quotient space K^d / {|t| = 1}.
struct QuotientPoint {
  Vector representative;
  Field field = Field::Real;
};

double distance(const QuotientPoint& a, const QuotientPoint& b);

/// Componentwise phase z/|z| (sign for real data); 1 where z == 0.
cplx unit_phase(cplx z);

/// Named random substream: a seed for module `name` derived from the run seed.
std::uint64_t substream(std::uint64_t seed, std::string_view name);

}  // namespace phaselab
