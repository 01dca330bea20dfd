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

#include "phaselab/cp.hpp"

#include "phaselab/bounds.hpp"
#include "phaselab/linalg.hpp"

#include <Eigen/QR>

#include <sstream>

namespace phaselab {

std::string_view to_string(Injectivity i) {
  switch (i) {
    case Injectivity::Injective: return "injective";
    case Injectivity::NotInjective: return "not-injective";
    case Injectivity::Undetermined: return "undetermined";
  }
  return "?";
}

std::string_view to_string(CpCertificate c) {
  switch (c) {
    case CpCertificate::Counting: return "counting";
    case CpCertificate::Exhaustive: return "exhaustive";
    case CpCertificate::FlatSearch: return "flat-search";
  }
  return "?";
}

namespace {

// unit annihilator of the rows in whitened coordinates, mapped to the basis
std::pair<Vector, double> annihilator(const Frame& frame, const Matrix& w, const IndexSet& rows) {
  const SingularPair sp = smallest_singular(select_rows(w, rows), frame.field);
  Vector u = from_whitened(frame, sp.vector);
  if (frame.field == Field::Real) u = u.real().cast<cplx>();
  u /= frame.signal_space().norm(u);
  const Vector image = select_rows(frame.rows, rows) * u;
  return {u, image.norm()};
}

bool rank_deficient(const Matrix& w, Field field, const IndexSet& rows, double rank_rel) {
  if (rows.size() < static_cast<std::size_t>(w.cols())) return true;
  return numerical_rank(select_rows(w, rows), field, rank_rel) < static_cast<std::size_t>(w.cols());
}

void fail_with(CpVerdict& v, const Frame& frame, const Matrix& w, IndexSet s) {
  const IndexSet sc = complement(s, frame.n());
  auto [u, ru] = annihilator(frame, w, s);
  auto [x, rv] = annihilator(frame, w, sc);
  v.holds = false;
  v.violating_subset = std::move(s);
  v.witness = std::make_pair(u, x);
  v.u_residual = ru;
  v.v_residual = rv;
  v.injectivity = Injectivity::NotInjective;
}

// closure of span(rows of `basis`) among all rows
IndexSet closure(const Matrix& w, const IndexSet& basis, Field field) {
  const std::size_t n = static_cast<std::size_t>(w.rows());
  IndexSet out;
  if (basis.empty()) {
    const double scale = w.rowwise().norm().maxCoeff();
    for (std::size_t i = 0; i < n; ++i)
      if (w.row(static_cast<Eigen::Index>(i)).norm() <= 1e-10 * scale) out.push_back(i);
    return out;
  }
  // orthonormal basis Q of the row span (as columns of conj rows)
  Matrix b = select_rows(w, basis).adjoint();
  if (field == Field::Real) b = b.real().cast<cplx>();
  Eigen::HouseholderQR<Matrix> qr(b);
  const Matrix q = qr.householderQ() * Matrix::Identity(b.rows(), b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const Vector r = w.row(static_cast<Eigen::Index>(i)).adjoint();
    const Vector res = r - q * (q.adjoint() * r);
    if (res.norm() <= 1e-9 * std::max(r.norm(), 1e-300)) out.push_back(i);
  }
  return out;
}

}  // namespace

CpVerdict check_cp(const Frame& frame, const CpOptions& opts) {
  const std::size_t n = frame.n();
  const std::size_t d = frame.d();
  const Matrix w = whitened_rows(frame);
  CpVerdict v;
  v.field = frame.field;

  if (opts.counting_shortcut && n + 2 <= 2 * d) {
    v.certificate = CpCertificate::Counting;
    fail_with(v, frame, w, all_indices(std::min(n, d - 1)));
    return v;
  }

  if (n <= kExhaustiveLimit) {
    v.certificate = CpCertificate::Exhaustive;
    std::optional<std::uint64_t> bad;
    enumerate_splits(w, frame.field, [&](std::uint64_t mask, const SplitSpectrum& sp) {
      // screen with the Gram spectrum, confirm ambiguous sides by SVD rank
      const bool span_s = !sp.deficient_s && sp.min_s > 1e-8 * sp.max_s;
      const bool span_c = !sp.deficient_c && sp.min_c > 1e-8 * sp.max_c;
      if (span_s || span_c) return true;
      const IndexSet s = mask_to_subset(mask, n);
      if (rank_deficient(w, frame.field, s, opts.rank_rel) &&
          rank_deficient(w, frame.field, complement(s, n), opts.rank_rel)) {
        bad = mask;
        return false;
      }
      return true;
    });
    if (bad) {
      fail_with(v, frame, w, mask_to_subset(*bad, n));
      return v;
    }
    v.holds = true;
    v.injectivity = frame.field == Field::Real ? Injectivity::Injective : Injectivity::Undetermined;
    return v;
  }

  if (!opts.heuristic) {
    std::ostringstream msg;
    msg << "complement-property check enumerates 2^(N-1) splits and is limited to N <= " << kExhaustiveLimit
        << " (frame has N=" << n << "); enable the heuristic flat search to proceed";
    throw Error(ErrorKind::Infeasible, msg.str());
  }

  // A failing S can be enlarged to the closure of a row-spanned flat of rank
  // < d, so it suffices to test those closures.
  v.certificate = CpCertificate::FlatSearch;
  std::size_t examined = 0;
  v.complete = true;
  for (std::size_t r = 0; r < d && r <= n && v.complete; ++r) {
    std::vector<std::size_t> idx(r);
    for (std::size_t k = 0; k < r; ++k) idx[k] = k;
    while (true) {
      if (examined >= opts.flat_budget) {
        v.complete = false;
        break;
      }
      ++examined;
      // dependent generators give a flat already reached with fewer rows
      if (r == 0 || numerical_rank(select_rows(w, idx), frame.field, opts.rank_rel) == r) {
        const IndexSet s = closure(w, idx, frame.field);
        if (rank_deficient(w, frame.field, s, opts.rank_rel) &&
            rank_deficient(w, frame.field, complement(s, n), opts.rank_rel)) {
          fail_with(v, frame, w, s);
          return v;
        }
      }
      // next r-combination of [0, n)
      std::size_t k = r;
      while (k > 0 && idx[k - 1] == n - r + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  v.holds = true;
  if (frame.field == Field::Real && v.complete)
    v.injectivity = Injectivity::Injective;
  else
    v.injectivity = Injectivity::Undetermined;
  return v;
}

std::pair<Vector, Vector> nonuniqueness_pair(const CpVerdict& verdict, const Frame& frame) {
  if (verdict.holds || !verdict.witness)
    throw Error(ErrorKind::Precondition, "nonuniqueness_pair needs a verdict in which the complement property fails");
  const Vector& u = verdict.witness->first;
  const Vector v = align_phase(frame, u, verdict.witness->second);
  return {u + v, u - v};
}

}  // namespace phaselab
