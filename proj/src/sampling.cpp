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

#include "phaselab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace phaselab {

SamplingSet make_sampling_set(std::vector<double> points, double w0, double w1, double bandwidth, double p) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "sampling set is empty");
  if (!(w1 > w0) || !std::isfinite(w0) || !std::isfinite(w1))
    throw Error(ErrorKind::InvalidArgument, "sampling window needs finite w0 < w1");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw Error(ErrorKind::InvalidArgument, "bandwidth b must be positive");
  if (!(p > 1.0) || std::isinf(p)) throw Error(ErrorKind::InvalidArgument, "Paley-Wiener exponent p must lie in (1, inf)");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw Error(ErrorKind::InvalidArgument, "sampling points must be finite");
    if (i > 0 && !(points[i] > points[i - 1])) {
      std::ostringstream msg;
      msg << "sampling points must be strictly increasing (position " << i << ": " << points[i - 1] << ", "
          << points[i] << ")";
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
  }
  if (points.front() < w0 || points.back() > w1)
    throw Error(ErrorKind::InvalidArgument, "sampling points must lie inside the window");
  SamplingSet s;
  s.points = std::move(points);
  s.w0 = w0;
  s.w1 = w1;
  s.bandwidth = bandwidth;
  s.p = p;
  return s;
}

SamplingSet grid_set(double step, double w0, double w1, double bandwidth) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
  if (!(w1 > w0)) throw Error(ErrorKind::InvalidArgument, "grid window needs w0 < w1");
  std::vector<double> pts;
  const auto k0 = static_cast<long long>(std::ceil(w0 / step - 1e-12));
  const auto k1 = static_cast<long long>(std::floor(w1 / step + 1e-12));
  for (long long k = k0; k <= k1; ++k) {
    const double t = static_cast<double>(k) * step;
    if (t >= w0 && t <= w1) pts.push_back(t);
  }
  return make_sampling_set(std::move(pts), w0, w1, bandwidth);
}

NormalizedPoints normalize_points(std::vector<double> points) {
  NormalizedPoints out;
  out.reordered = !std::is_sorted(points.begin(), points.end());
  std::sort(points.begin(), points.end());
  const auto end = std::unique(points.begin(), points.end());
  out.duplicates = static_cast<std::size_t>(points.end() - end);
  points.erase(end, points.end());
  out.points = std::move(points);
  return out;
}

std::size_t min_window_count(const SamplingSet& set, double r) {
  const auto& pts = set.points;
  const double lo = set.w0;
  const double hi = set.w1 - r;
  if (r <= 0.0 || hi < lo) throw Error(ErrorKind::InvalidArgument, "window radius must lie in (0, w1 - w0]");
  // #[a, a + r)
  auto count_at = [&](double a) {
    const auto first = std::lower_bound(pts.begin(), pts.end(), a);
    const auto last = std::lower_bound(pts.begin(), pts.end(), a + r);
    return static_cast<std::size_t>(last - first);
  };
  // right limit at a = lambda: #(lambda, lambda + r]
  auto count_after = [&](double lambda) {
    const auto first = std::upper_bound(pts.begin(), pts.end(), lambda);
    const auto last = std::upper_bound(pts.begin(), pts.end(), lambda + r);
    return static_cast<std::size_t>(last - first);
  };
  // the count only changes at a = lambda (a point leaves) and a = lambda - r
  // (a point enters), so the infimum is attained at an endpoint, at one of
  // those breakpoints, or as a right limit at a = lambda
  std::size_t best = std::min(count_at(lo), count_at(hi));
  for (double lambda : pts) {
    if (lambda >= lo && lambda < hi) best = std::min(best, count_after(lambda));
    const double a = lambda - r;
    if (a >= lo && a <= hi) best = std::min(best, count_at(a));
  }
  return best;
}

DensityResult lower_beurling_density(const SamplingSet& set, std::span<const double> radii) {
  if (set.points.empty()) throw Error(ErrorKind::InvalidArgument, "sampling set is empty");
  if (radii.empty()) throw Error(ErrorKind::InvalidArgument, "density needs at least one radius");
  DensityResult out;
  out.r_cap = set.r_cap();
  out.boundary_term = 1.0 / out.r_cap;
  out.density = std::numeric_limits<double>::infinity();
  out.r_min = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    if (!(r > 0.0) || r > out.r_cap * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "density radius " << r << " outside (0, r_cap = " << out.r_cap << "]";
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
    const double v = static_cast<double>(min_window_count(set, std::min(r, out.r_cap))) / r;
    out.radii.push_back(r);
    out.r_min = std::min(out.r_min, r);
    if (v < out.density) {
      out.density = v;
      out.r_at_min = r;
    }
  }
  return out;
}

DensityResult lower_beurling_density(const SamplingSet& set, double r_min, std::size_t count) {
  if (set.points.empty()) throw Error(ErrorKind::InvalidArgument, "sampling set is empty");
  const double cap = set.r_cap();
  if (!(r_min > 0.0) || r_min > cap) {
    std::ostringstream msg;
    msg << "r_min must lie in (0, r_cap = " << cap << "], got " << r_min;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  count = std::max<std::size_t>(count, 1);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < set.points.size(); ++i) gap = std::min(gap, set.points[i] - set.points[i - 1]);
  std::vector<double> radii;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = count == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    double r = r_min * std::pow(cap / r_min, t);
    if (std::isfinite(gap)) {
      double snapped = gap * std::round(r / gap);
      if (snapped > cap * (1.0 + 1e-12)) snapped -= gap;
      if (snapped > 0.0) r = snapped;
    }
    if (radii.empty() || std::abs(r - radii.back()) > 1e-12 * cap) radii.push_back(r);
  }
  DensityResult out = lower_beurling_density(set, radii);
  out.r_min = r_min;
  return out;
}

std::string_view to_string(PwVerdict v) { return v == PwVerdict::Injective ? "Injective" : "NotDecidable"; }

InjectivityVerdict phaseless_injectivity_verdict(const SamplingSet& set, std::optional<double> r_min) {
  InjectivityVerdict v;
  v.density = lower_beurling_density(set, r_min.value_or(set.r_cap() / 4.0));
  v.threshold = 2.0 * set.bandwidth;
  v.required = v.threshold * (1.0 + v.density.boundary_term);
  v.verdict = v.density.density > v.required ? PwVerdict::Injective : PwVerdict::NotDecidable;
  return v;
}

}  // namespace phaselab
