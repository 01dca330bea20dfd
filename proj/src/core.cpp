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

#include "phaselab/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace phaselab {

std::string_view to_string(Field field) {
  return field == Field::Real ? "real" : "complex";
}

Field parse_field(std::string_view text) {
  if (text == "real") return Field::Real;
  if (text == "complex") return Field::Complex;
  throw Error(ErrorKind::Parse, "unknown field '" + std::string(text) + "' (expected real|complex)");
}

std::string_view to_string(Exponent p) {
  switch (p) {
    case Exponent::One: return "1";
    case Exponent::Two: return "2";
    case Exponent::Infinity: return "inf";
  }
  return "?";
}

Exponent parse_exponent(std::string_view text) {
  if (text == "1") return Exponent::One;
  if (text == "2") return Exponent::Two;
  if (text == "inf" || text == "infinity") return Exponent::Infinity;
  throw Error(ErrorKind::Parse, "unknown exponent '" + std::string(text) + "' (expected 1|2|inf)");
}

double SignalSpace::norm(const Vector& x) const {
  if (!gram) return x.norm();
  return std::sqrt(std::max(0.0, inner(x, x).real()));
}

cplx SignalSpace::inner(const Vector& x, const Vector& y) const {
  if (!gram) return y.dot(x);  // Eigen's dot conjugates the left operand
  return y.dot(*gram * x);
}

MeasurementSpace::MeasurementSpace(Exponent p, std::vector<double> weights)
    : p_(p), weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::InvalidArgument, "measurement weights must be positive and finite");
  }
}

void MeasurementSpace::check_size(std::size_t n) const {
  if (!weights_.empty() && weights_.size() != n) {
    std::ostringstream msg;
    msg << "measurement space has " << weights_.size() << " weights but the sequence has length " << n;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

double MeasurementSpace::norm(std::span<const double> w) const {
  check_size(w.size());
  double acc = 0.0;
  switch (p_) {
    case Exponent::One:
      for (std::size_t i = 0; i < w.size(); ++i) acc += weight(i) * std::abs(w[i]);
      return acc;
    case Exponent::Two: {
      // scaled sum of squares, avoids overflow for large entries
      double scale = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) scale = std::max(scale, weight(i) * std::abs(w[i]));
      if (scale == 0.0) return 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double t = weight(i) * std::abs(w[i]) / scale;
        acc += t * t;
      }
      return scale * std::sqrt(acc);
    }
    case Exponent::Infinity:
      for (std::size_t i = 0; i < w.size(); ++i) acc = std::max(acc, weight(i) * std::abs(w[i]));
      return acc;
  }
  return acc;
}

double MeasurementSpace::norm(const RealVector& z) const {
  return norm(std::span<const double>(z.data(), static_cast<std::size_t>(z.size())));
}

double MeasurementSpace::norm(const Vector& z) const {
  RealVector a = z.cwiseAbs();
  return norm(a);
}

double MeasurementSpace::indicator_norm(const IndexSet& subset, std::size_t n) const {
  std::vector<double> chi(n, 0.0);
  for (std::size_t i : subset) {
    if (i >= n) throw Error(ErrorKind::IndexOutOfRange, "indicator index out of range");
    chi[i] = 1.0;
  }
  return norm(chi);
}

MeasurementSpace MeasurementSpace::restrict(const IndexSet& subset) const {
  if (weights_.empty()) return MeasurementSpace(p_);
  std::vector<double> w;
  w.reserve(subset.size());
  for (std::size_t i : subset) {
    if (i >= weights_.size()) throw Error(ErrorKind::IndexOutOfRange, "weight index out of range");
    w.push_back(weights_[i]);
  }
  return MeasurementSpace(p_, std::move(w));
}

namespace {

void check_same_dimension(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    std::ostringstream msg;
    msg << "dimension mismatch: x has dimension " << x.size() << ", y has dimension " << y.size();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

}  // namespace

cplx unit_phase(cplx z) {
  const double r = std::abs(z);
  return r == 0.0 ? cplx(1.0, 0.0) : z / r;
}

RealVector measure(const Matrix& rows, Field field, const Vector& x) {
  if (rows.cols() != x.size()) {
    std::ostringstream msg;
    msg << "dimension mismatch: frame has signal dimension d=" << rows.cols()
        << ", vector has dimension " << x.size();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  if (field == Field::Real && x.imag().cwiseAbs().maxCoeff() > 0.0)
    throw Error(ErrorKind::InvalidArgument, "complex-valued vector passed to a real frame");
  if (field == Field::Real) {
    const RealVector c = rows.real() * x.real();
    return c.cwiseAbs();
  }
  return (rows * x).cwiseAbs();
}

double quotient_distance(const Vector& x, const Vector& y, Field field) {
  return quotient_distance(x, y, SignalSpace{static_cast<std::size_t>(x.size()), field, SignalNorm::L2, {}});
}

cplx optimal_phase(const Vector& x, const Vector& y, const SignalSpace& space) {
  // ||x - t y||^2 = ||x||^2 + ||y||^2 - 2 Re(conj(t) <x, y>), maximized by t = phase(<x, y>)
  const cplx c = space.inner(x, y);
  if (space.field == Field::Real) return c.real() >= 0.0 ? cplx(1.0) : cplx(-1.0);
  return unit_phase(c);
}

double quotient_distance(const Vector& x, const Vector& y, const SignalSpace& space) {
  check_same_dimension(x, y);
  if (space.field == Field::Real) {
    return std::min(space.norm(x - y), space.norm(x + y));
  }
  const cplx t = optimal_phase(x, y, space);
  return space.norm(x - t * y);
}

double quotient_distance(const Vector& x, const Vector& y, Field field,
                         const std::function<double(const Vector&)>& norm, double theta_tol) {
  check_same_dimension(x, y);
  if (field == Field::Real) return std::min(norm(x - y), norm(x + y));

  const auto f = [&](double theta) { return norm(x - std::polar(1.0, theta) * y); };
  constexpr int kScan = 256;
  const double h = 2.0 * std::numbers::pi / kScan;
  int best = 0;
  double best_val = f(0.0);
  for (int k = 1; k < kScan; ++k) {
    const double v = f(k * h);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  // golden section on the bracket around the best scan point
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = (best - 1) * h;
  double b = (best + 1) * h;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > theta_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::min({best_val, fc, fd, f(0.5 * (a + b))});
}

double distance(const QuotientPoint& a, const QuotientPoint& b) {
  if (a.field != b.field) throw Error(ErrorKind::InvalidArgument, "quotient points over different fields");
  return quotient_distance(a.representative, b.representative, a.field);
}

std::uint64_t substream(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the name
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  // splitmix64 finalizer
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace phaselab
