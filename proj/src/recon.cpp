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

#include "phaselab/recon.hpp"

#include "phaselab/linalg.hpp"

#include <Eigen/QR>

#include <random>
#include <sstream>

namespace phaselab {

namespace {

template <class Mat, class Vec>
struct Runner {
  const Mat& phi;
  const Eigen::CompleteOrthogonalDecomposition<Mat>& cod;
  const RealVector& b;
  const ReconOptions& opts;

  double residual(const Vec& x) const { return (RealVector((phi * x).cwiseAbs()) - b).norm(); }

  // one restart; returns the final iterate and fills the residual history
  Vec run(Vec x, std::vector<double>& hist) const {
    double r = residual(x);
    hist.assign(1, r);
    std::size_t stalls = 0;
    for (std::size_t k = 0; k < opts.max_iter && r >= opts.tol; ++k) {
      Vec c = phi * x;
      for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double a = std::abs(c(i));
        // sign/phase of the current coefficient, 1 where it vanishes
        c(i) = a > 0.0 ? c(i) * (b(i) / a) : b(i);
      }
      const Vec next = cod.solve(c);
      const double nr = residual(next);
      x = next;
      stalls = nr > r * (1.0 - 1e-12) ? stalls + 1 : 0;
      r = nr;
      hist.push_back(r);
      if (stalls >= 5) break;
    }
    return x;
  }
};

}  // namespace

ReconResult solve(const Frame& frame, const RealVector& b, const ReconOptions& opts, const std::optional<Vector>& truth) {
  const std::size_t n = frame.n();
  const std::size_t d = frame.d();
  if (static_cast<std::size_t>(b.size()) != n) {
    std::ostringstream msg;
    msg << "measurement vector has length " << b.size() << " but the frame has N=" << n;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (!(b(i) >= 0.0) || !std::isfinite(b(i)))
      throw Error(ErrorKind::InvalidArgument, "measurements must be finite and nonnegative");
  if (truth && static_cast<std::size_t>(truth->size()) != d)
    throw Error(ErrorKind::DimensionMismatch, "truth vector has the wrong dimension");
  if (opts.restarts == 0) throw Error(ErrorKind::InvalidArgument, "recon needs at least one restart");

  ReconResult out;
  auto finish = [&] {
    if (truth) out.quotient_error = quotient_distance(out.estimate, *truth, frame.signal_space());
    return out;
  };
  if (b.isZero(0.0)) {
    out.estimate = Vector::Zero(static_cast<Eigen::Index>(d));
    out.converged = true;
    out.history = {0.0};
    out.restart_residuals = {0.0};
    return finish();
  }

  double best = std::numeric_limits<double>::infinity();
  if (frame.field == Field::Real) {
    const RealMatrix phi = frame.rows.real();
    Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(phi);
    Runner<RealMatrix, RealVector> run{phi, cod, b, opts};
    for (std::size_t k = 0; k < opts.restarts; ++k) {
      std::mt19937_64 gen(substream(opts.seed, "recon-restart-" + std::to_string(k)));
      const RealVector x0 = random_unit(d, Field::Real, gen).real() * b.norm();
      std::vector<double> hist;
      const RealVector x = run.run(x0, hist);
      out.restart_residuals.push_back(hist.back());
      if (hist.back() < best) {
        best = hist.back();
        out.estimate = x.cast<cplx>();
        out.history = std::move(hist);
        out.best_restart = k;
      }
    }
  } else {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(frame.rows);
    Runner<Matrix, Vector> run{frame.rows, cod, b, opts};
    for (std::size_t k = 0; k < opts.restarts; ++k) {
      std::mt19937_64 gen(substream(opts.seed, "recon-restart-" + std::to_string(k)));
      const Vector x0 = random_unit(d, Field::Complex, gen) * b.norm();
      std::vector<double> hist;
      const Vector x = run.run(x0, hist);
      out.restart_residuals.push_back(hist.back());
      if (hist.back() < best) {
        best = hist.back();
        out.estimate = x;
        out.history = std::move(hist);
        out.best_restart = k;
      }
    }
  }
  out.residual = best;
  out.iterations = out.history.size() - 1;
  out.converged = best < opts.tol;
  return finish();
}

}  // namespace phaselab
