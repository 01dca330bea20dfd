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

#include "phaselab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace phaselab {

WitnessPair build_witness(const Frame& frame, const MeasurementSpace& mspace, const IndexSet& subset,
                          const BoundsOptions& opts) {
  const std::size_t n = frame.n();
  const IndexSet sc = complement(subset, n);
  if (subset.empty() || sc.empty())
    throw Error(ErrorKind::InvalidArgument, "witness split needs S and its complement to be nonempty");
  const NearKernel ku = near_kernel_vector(frame, mspace, subset, opts);
  const NearKernel kv = near_kernel_vector(frame, mspace, sc, opts);
  WitnessPair w;
  w.subset = subset;
  w.u = ku.u;
  w.v = align_phase(frame, ku.u, kv.u);
  w.u_residual = ku.residual;
  w.v_residual = kv.residual;
  w.x = w.u + w.v;
  w.y = w.u - w.v;
  w.measurement_gap = mspace.norm(RealVector(measure(frame, w.x) - measure(frame, w.y)));
  w.signal_gap = quotient_distance(w.x, w.y, frame.signal_space());
  w.ratio = w.signal_gap > 0.0 ? w.measurement_gap / w.signal_gap : std::numeric_limits<double>::quiet_NaN();
  return w;
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return {0.0, n == 1 ? y[0] : 0.0};
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return {slope, my - slope * mx};
}

SweepRow sweep_cell(int m, int q, const MeasurementSpace& mspace, const SweepOptions& opts) {
  if (!mspace.unweighted())
    throw Error(ErrorKind::InvalidArgument, "sweeps change N per cell and accept unweighted measurement norms only");
  SincFrameSpec spec = opts.base;
  spec.m = m;
  spec.oversample = q;
  const Frame frame = sinc_frame(spec);
  const std::uint64_t seed = substream(opts.seed, "sweep-m" + std::to_string(m) + "-q" + std::to_string(q));

  StabilityReport rep;
  rep.field = frame.field;
  rep.d = frame.d();
  rep.n = frame.n();
  rep.p = mspace.exponent();
  BoundsOptions bo = opts.sigma.bounds;
  bo.seed = substream(seed, "bounds");
  rep.tol = bo.tol;
  rep.bounds = frame_bounds(frame, mspace, bo);
  SigmaOptions so = opts.sigma;
  so.seed = substream(seed, "sigma");
  so.bounds = bo;
  rep.sigma = scp_sigma(frame, mspace, so);
  rep.beta.B = rep.beta.beta = rep.bounds.B;
  AlphaOptions ao;
  ao.budget = std::max<std::size_t>(opts.alpha_budget, 1);
  ao.bruteforce = false;
  ao.seed = substream(seed, "alpha");
  ao.bounds = bo;
  rep.alpha = alpha_estimate(frame, mspace, rep.sigma, rep.bounds, ao);
  rep.tau = condition_number(rep);

  SweepRow row;
  row.m = m;
  row.q = q;
  row.d = frame.d();
  row.n = frame.n();
  row.A = rep.bounds.A;
  row.B = rep.bounds.B;
  row.sigma = rep.sigma.sigma;
  row.sigma_method = rep.sigma.method;
  row.subset = rep.sigma.subset;
  row.alpha_upper = rep.alpha.alpha_upper;
  row.tau_lower = rep.tau.lower;
  if (!rep.sigma.subset.empty()) {
    row.ratio = build_witness(frame, mspace, rep.sigma.subset, bo).ratio;
  } else {
    row.ratio = std::numeric_limits<double>::quiet_NaN();
  }
  if (row.B > 0.0) {
    row.A_over_B = row.A / row.B;
    row.sigma_over_B = row.sigma / row.B;
    row.alpha_over_B = row.alpha_upper / row.B;
    row.tau_lower_normalized =
        row.sigma_over_B > 0.0 ? 1.0 / (2.0 * row.sigma_over_B) : std::numeric_limits<double>::infinity();
  }
  return row;
}

namespace {

void summarize(SweepResult& res) {
  std::sort(res.rows.begin(), res.rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.param < b.param; });
  std::vector<double> xs, ys;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  res.tau_increasing = true;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const auto& r = res.rows[i];
    if (std::isfinite(r.tau_lower) && r.tau_lower > 0.0) {
      xs.push_back(r.param);
      ys.push_back(std::log2(r.tau_lower));
    }
    lo = std::min(lo, r.tau_lower_normalized);
    hi = std::max(hi, r.tau_lower_normalized);
    if (i > 0 && !(r.tau_lower > res.rows[i - 1].tau_lower)) res.tau_increasing = false;
  }
  std::tie(res.slope, res.intercept) = fit_line(xs, ys);
  res.tau_spread = lo > 0.0 && std::isfinite(hi) ? hi / lo - 1.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

SweepResult dimension_sweep(const std::vector<int>& ms, const MeasurementSpace& mspace, const SweepOptions& opts) {
  if (ms.empty()) throw Error(ErrorKind::InvalidArgument, "dimension sweep needs a nonempty range of m");
  SweepResult res;
  res.kind = "dimension";
  for (int m : ms) {
    if (m < 1) throw Error(ErrorKind::Infeasible, "dimension sweep: m must be >= 1 (got " + std::to_string(m) + ")");
    SweepRow row = sweep_cell(m, opts.base.oversample, mspace, opts);
    row.param = m;
    res.rows.push_back(std::move(row));
  }
  summarize(res);
  return res;
}

SweepResult oversample_sweep(int m, const std::vector<int>& qs, const MeasurementSpace& mspace,
                             const SweepOptions& opts) {
  if (qs.empty()) throw Error(ErrorKind::InvalidArgument, "oversampling sweep needs a nonempty range of q");
  SweepResult res;
  res.kind = "oversample";
  for (int q : qs) {
    if (q < 1) throw Error(ErrorKind::InvalidArgument, "oversampling factor must be >= 1 (got " + std::to_string(q) + ")");
    SweepRow row = sweep_cell(m, q, mspace, opts);
    row.param = q;
    res.rows.push_back(std::move(row));
  }
  summarize(res);
  return res;
}

}  // namespace phaselab
