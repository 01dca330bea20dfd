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

#include "phaselab/bounds.hpp"

#include "phaselab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace phaselab {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ExactSpectral: return "exact-spectral";
    case Method::Exhaustive: return "exhaustive";
    case Method::Heuristic: return "heuristic";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

std::string_view to_string(SubsetStrategy s) {
  switch (s) {
    case SubsetStrategy::Exhaustive: return "exhaustive";
    case SubsetStrategy::LocalSearch: return "local-search";
    case SubsetStrategy::Auto: return "auto";
  }
  return "?";
}

SubsetStrategy parse_strategy(std::string_view text) {
  if (text == "exhaustive") return SubsetStrategy::Exhaustive;
  if (text == "local-search" || text == "local") return SubsetStrategy::LocalSearch;
  if (text == "auto") return SubsetStrategy::Auto;
  throw Error(ErrorKind::Parse, "unknown subset strategy '" + std::string(text) +
                                    "' (expected exhaustive|local-search|auto)");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// whitened coordinates z -> basis coordinates, kept exactly real for real frames
Vector to_basis(const Frame& frame, const Vector& z) {
  Vector x = from_whitened(frame, z);
  if (frame.field == Field::Real) x = x.real().cast<cplx>();
  return x;
}

Vector first_axis(Eigen::Index d) {
  Vector e = Vector::Zero(d);
  e(0) = 1.0;
  return e;
}

RealVector abs_image(const Matrix& w, Field field, const Vector& z) {
  if (field == Field::Real) return (w.real() * z.real()).cwiseAbs();
  return (w * z).cwiseAbs();
}

// ||W z|| in the measurement norm
double image_norm(const Matrix& w, Field field, const MeasurementSpace& ms, const Vector& z) {
  return ms.norm(abs_image(w, field, z));
}

// A subgradient of z -> ||W z|| for p in {1, inf}
Vector subgradient(const Matrix& w, Field field, const MeasurementSpace& ms, const Vector& z) {
  const Vector c = w * z;
  Vector g = Vector::Zero(w.cols());
  if (ms.exponent() == Exponent::Infinity) {
    Eigen::Index k = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const double v = ms.weight(static_cast<std::size_t>(i)) * std::abs(c(i));
      if (v > best) {
        best = v;
        k = i;
      }
    }
    g = w.row(k).adjoint() * (ms.weight(static_cast<std::size_t>(k)) * unit_phase(c(k)));
  } else if (ms.exponent() == Exponent::One) {
    Vector s(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i)
      s(i) = ms.weight(static_cast<std::size_t>(i)) * (c(i) == 0.0 ? cplx(0.0) : unit_phase(c(i)));
    g = w.adjoint() * s;
  } else {
    // gradient of the weighted l2 norm
    Vector s(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const double wi = ms.weight(static_cast<std::size_t>(i));
      s(i) = wi * wi * c(i);
    }
    const double n = ms.norm(c);
    g = n > 0.0 ? Vector(w.adjoint() * s / n) : Vector::Zero(w.cols());
  }
  if (field == Field::Real) g = g.real().cast<cplx>();
  return g;
}

// projected subgradient descent of ||W z|| on the unit sphere
Vector descend(const Matrix& w, Field field, const MeasurementSpace& ms, Vector z, int iterations, double eta0,
               double& best) {
  z.normalize();
  Vector best_z = z;
  best = image_norm(w, field, ms, z);
  double eta = eta0;
  for (int k = 0; k < iterations; ++k, eta *= 0.975) {
    Vector g = subgradient(w, field, ms, z);
    g -= z * z.dot(g);  // tangent component
    if (field == Field::Real) g = g.real().cast<cplx>();
    const double gn = g.norm();
    if (!(gn > 0.0)) break;
    z -= (eta / gn) * g;
    z.normalize();
    const double v = image_norm(w, field, ms, z);
    if (v < best) {
      best = v;
      best_z = z;
    }
  }
  return best_z;
}

// points of the unit sphere of R^d (d = 2, 3) modulo sign
std::vector<Vector> sphere_grid(Eigen::Index d, int k2, int k3) {
  std::vector<Vector> pts;
  if (d == 2) {
    pts.reserve(static_cast<std::size_t>(k2));
    for (int k = 0; k < k2; ++k) {
      const double t = k * std::numbers::pi / k2;
      Vector u(2);
      u << std::cos(t), std::sin(t);
      pts.push_back(u);
    }
  } else if (d == 3) {
    pts.reserve(static_cast<std::size_t>(k3 * k3));
    for (int a = 0; a < k3; ++a) {
      const double th = a * (std::numbers::pi / 2) / (k3 - 1);
      for (int b = 0; b < k3; ++b) {
        const double ph = b * 2.0 * std::numbers::pi / k3;
        Vector u(3);
        u << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
        pts.push_back(u);
      }
    }
  }
  return pts;
}

struct Extremum {
  double value = 0.0;
  Vector z;  // whitened coordinates
  Method method = Method::Heuristic;
};

// min of ||W z|| over the unit sphere, W in whitened coordinates
Extremum lower_extremum(const Matrix& w, Field field, const MeasurementSpace& ms, const BoundsOptions& opts) {
  const Eigen::Index d = w.cols();
  Extremum out;
  if (w.rows() == 0) {
    out.z = first_axis(d);
    out.method = Method::Exhaustive;
    return out;
  }
  if (ms.spectral()) {
    const SingularPair sp = smallest_singular(weighted_rows(w, ms), field);
    out.value = sp.value;
    out.z = sp.vector;
    out.method = Method::ExactSpectral;
    return out;
  }
  if (d == 1) {
    out.z = first_axis(1);
    out.value = image_norm(w, field, ms, out.z);
    out.method = Method::Exhaustive;
    return out;
  }
  std::mt19937_64 gen(opts.seed);
  out.value = kInf;
  auto consider = [&](const Vector& z0, double eta0, int iters) {
    double v = 0.0;
    Vector z = descend(w, field, ms, z0, iters, eta0, v);
    if (v < out.value) {
      out.value = v;
      out.z = z;
    }
  };
  consider(smallest_singular(weighted_rows(w, ms), field).vector, 0.5, opts.iterations);
  for (int r = 0; r < opts.restarts; ++r) consider(random_unit(static_cast<std::size_t>(d), field, gen), 0.5, opts.iterations);
  out.method = Method::Heuristic;
  if (opts.use_grid && field == Field::Real && d <= 3) {
    const auto pts = sphere_grid(d, 720, 120);
    double best = kInf;
    const Vector* arg = nullptr;
    for (const auto& p : pts) {
      const double v = image_norm(w, field, ms, p);
      if (v < best) {
        best = v;
        arg = &p;
      }
    }
    consider(*arg, 0.02, opts.iterations);
    out.method = Method::Oracle;
  }
  return out;
}

Extremum upper_extremum(const Matrix& w, Field field, const MeasurementSpace& ms, const BoundsOptions& opts) {
  const Eigen::Index d = w.cols();
  const Eigen::Index n = w.rows();
  Extremum out;
  out.z = first_axis(d);
  if (n == 0) {
    out.method = Method::Exhaustive;
    return out;
  }
  if (ms.spectral()) {
    const SingularPair sp = largest_singular(weighted_rows(w, ms), field);
    out.value = sp.value;
    out.z = sp.vector;
    out.method = Method::ExactSpectral;
    return out;
  }
  if (d == 1) {
    out.value = image_norm(w, field, ms, out.z);
    out.method = Method::Exhaustive;
    return out;
  }
  if (ms.exponent() == Exponent::Infinity) {
    // max_i w_i ||row_i||, attained at the normalized row
    Eigen::Index k = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = ms.weight(static_cast<std::size_t>(i)) * w.row(i).norm();
      if (v > best) {
        best = v;
        k = i;
      }
    }
    if (best > 0.0) out.z = w.row(k).adjoint() / w.row(k).norm();
    out.value = image_norm(w, field, ms, out.z);
    out.method = Method::Exhaustive;
    return out;
  }
  // p = 1
  if (field == Field::Real && n <= 20) {
    // max over sign patterns s of ||W^T (w .* s)||, last sign fixed by symmetry
    const RealMatrix wr = w.real();
    RealMatrix scaled = wr;
    for (Eigen::Index i = 0; i < n; ++i) scaled.row(i) *= ms.weight(static_cast<std::size_t>(i));
    RealVector acc = scaled.colwise().sum().transpose();
    std::uint64_t best_code = 0;
    double best = acc.squaredNorm();
    const std::uint64_t count = 1ULL << (n - 1);
    std::uint64_t code = 0;  // Gray code: bit i set means s_i = -1
    for (std::uint64_t k = 1; k < count; ++k) {
      const int bit = std::countr_zero(k);
      code ^= 1ULL << bit;
      const double sgn = (code >> bit) & 1ULL ? -2.0 : 2.0;
      acc += sgn * scaled.row(bit).transpose();
      const double v = acc.squaredNorm();
      if (v > best) {
        best = v;
        best_code = code;
      }
    }
    RealVector g = RealVector::Zero(d);
    for (Eigen::Index i = 0; i < n; ++i)
      g += ((best_code >> i) & 1ULL ? -1.0 : 1.0) * scaled.row(i).transpose();
    if (g.norm() > 0.0) out.z = (g / g.norm()).cast<cplx>();
    out.value = image_norm(w, field, ms, out.z);
    out.method = Method::Exhaustive;
    return out;
  }
  // monotone fixed-point ascent z <- normalize(subgradient)
  std::mt19937_64 gen(opts.seed);
  out.value = -1.0;
  auto ascend = [&](Vector z) {
    if (!(z.norm() > 0.0)) return;
    z.normalize();
    double v = image_norm(w, field, ms, z);
    for (int k = 0; k < opts.iterations; ++k) {
      Vector g = subgradient(w, field, ms, z);
      if (!(g.norm() > 0.0)) break;
      g.normalize();
      const double nv = image_norm(w, field, ms, g);
      if (!(nv > v * (1.0 + 1e-15))) {
        if (nv > v) {
          v = nv;
          z = g;
        }
        break;
      }
      v = nv;
      z = g;
    }
    if (v > out.value) {
      out.value = v;
      out.z = z;
    }
  };
  ascend(largest_singular(weighted_rows(w, ms), field).vector);
  for (Eigen::Index i = 0; i < n; ++i) ascend(w.row(i).adjoint());
  for (int r = 0; r < opts.restarts; ++r) ascend(random_unit(static_cast<std::size_t>(d), field, gen));
  out.method = Method::Heuristic;
  return out;
}

}  // namespace

FrameBounds frame_bounds(const Frame& frame, const MeasurementSpace& mspace, const BoundsOptions& opts) {
  mspace.check_size(frame.n());
  const Matrix w = whitened_rows(frame);
  const Extremum lo = lower_extremum(w, frame.field, mspace, opts);
  const Extremum hi = upper_extremum(w, frame.field, mspace, opts);
  FrameBounds fb;
  fb.A = lo.value;
  fb.B = hi.value;
  fb.method_A = lo.method;
  fb.method_B = hi.method;
  fb.bottom = to_basis(frame, lo.z);
  fb.top = to_basis(frame, hi.z);
  return fb;
}

double restricted_lower_bound(const Frame& frame, const MeasurementSpace& mspace, const IndexSet& subset,
                              const BoundsOptions& opts) {
  mspace.check_size(frame.n());
  if (subset.empty()) return 0.0;
  const Matrix w = select_rows(whitened_rows(frame), subset);
  return lower_extremum(w, frame.field, mspace.restrict(subset), opts).value;
}

NearKernel near_kernel_vector(const Frame& frame, const MeasurementSpace& mspace, const IndexSet& subset,
                              const BoundsOptions& opts) {
  mspace.check_size(frame.n());
  const Matrix w = select_rows(whitened_rows(frame), subset);
  const Extremum e = lower_extremum(w, frame.field, mspace.restrict(subset), opts);
  NearKernel out;
  out.u = to_basis(frame, e.z);
  out.residual = e.value;
  return out;
}

Vector align_phase(const Frame& frame, const Vector& u, const Vector& v) {
  const cplx c = frame.signal_space().inner(v, u);  // u^* G v
  if (frame.field == Field::Real) return c.real() < 0.0 ? Vector(-v) : v;
  return v * std::conj(unit_phase(c));
}

// -- sigma ---------------------------------------------------------------

namespace {

struct SplitEvaluator {
  const Matrix& w;  // whitened, and weighted when spectral
  Field field;
  const MeasurementSpace& ms;
  BoundsOptions opts;
  std::size_t evaluations = 0;

  double side(const IndexSet& s) {
    if (s.empty()) return 0.0;
    if (ms.spectral()) return smallest_singular(select_rows(w, s), field).value;
    return lower_extremum(select_rows(w, s), field, ms.restrict(s), opts).value;
  }

  // max of both sides; skips the second side once the first reaches `cutoff`
  double operator()(const std::vector<char>& in_s, double cutoff = kInf) {
    ++evaluations;
    IndexSet s, c;
    for (std::size_t i = 0; i < in_s.size(); ++i) (in_s[i] ? s : c).push_back(i);
    const double a = side(s);
    if (a >= cutoff) return a;
    return std::max(a, side(c));
  }
};

IndexSet canonical(const std::vector<char>& in_s) {
  const std::size_t n = in_s.size();
  const bool flip = n > 0 && in_s[n - 1];
  IndexSet s;
  for (std::size_t i = 0; i < n; ++i)
    if (static_cast<bool>(in_s[i]) != flip) s.push_back(i);
  return s;
}

SigmaResult sigma_exhaustive_spectral(const Matrix& w, Field field, std::size_t n) {
  // Gram spectra are accurate to ~eps * ||G|| only, so every split within
  // that slack of the best is re-evaluated with an SVD.
  const double slack = 1e-13 * std::max(w.squaredNorm(), 1e-300);
  constexpr std::size_t kMaxCandidates = 4096;
  std::vector<std::pair<double, std::uint64_t>> cand;
  double best = kInf;
  auto prune = [&] {
    std::erase_if(cand, [&](const auto& c) { return c.first > best + slack; });
    if (cand.size() > kMaxCandidates) {
      std::stable_sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      cand.resize(kMaxCandidates);
    }
  };
  std::size_t evaluations = 0;
  enumerate_splits(w, field, [&](std::uint64_t mask, const SplitSpectrum& sp) {
    ++evaluations;
    const double v = std::max({sp.min_s, sp.min_c, 0.0});
    if (v <= best + slack) {
      best = std::min(best, v);
      cand.emplace_back(v, mask);
      if (cand.size() > 2 * kMaxCandidates) prune();
    }
    return true;
  });
  prune();
  std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return a.second < b.second; });

  SigmaResult out;
  out.method = Method::Exhaustive;
  out.strategy = SubsetStrategy::Exhaustive;
  out.evaluations = evaluations;
  std::vector<std::pair<double, std::uint64_t>> exact;
  double min_exact = kInf;
  for (const auto& c : cand) {
    const IndexSet s = mask_to_subset(c.second, n);
    const IndexSet sc = complement(s, n);
    const double a = s.empty() ? 0.0 : smallest_singular(select_rows(w, s), field).value;
    const double b = smallest_singular(select_rows(w, sc), field).value;
    exact.emplace_back(std::max(a, b), c.second);
    min_exact = std::min(min_exact, std::max(a, b));
  }
  // lowest mask among values equal to the minimum up to rounding
  for (const auto& e : exact) {
    if (e.first <= min_exact * (1.0 + 1e-12)) {
      out.sigma = e.first;
      out.subset = mask_to_subset(e.second, n);
      break;
    }
  }
  return out;
}

}  // namespace

double split_value(const Frame& frame, const MeasurementSpace& mspace, const IndexSet& subset,
                   const BoundsOptions& opts) {
  const IndexSet sc = complement(subset, frame.n());
  return std::max(restricted_lower_bound(frame, mspace, subset, opts),
                  restricted_lower_bound(frame, mspace, sc, opts));
}

SigmaResult scp_sigma(const Frame& frame, const MeasurementSpace& mspace, const SigmaOptions& opts) {
  const std::size_t n = frame.n();
  mspace.check_size(n);
  SubsetStrategy strategy = opts.strategy;
  if (strategy == SubsetStrategy::Auto)
    strategy = n <= kExhaustiveLimit ? SubsetStrategy::Exhaustive : SubsetStrategy::LocalSearch;
  if (strategy == SubsetStrategy::Exhaustive && n > kExhaustiveLimit) {
    std::ostringstream msg;
    msg << "exhaustive subset search is limited to N <= " << kExhaustiveLimit << " (frame has N=" << n
        << "); use the local-search strategy";
    throw Error(ErrorKind::Infeasible, msg.str());
  }
  const Matrix whitened = whitened_rows(frame);
  const Matrix w = mspace.spectral() ? weighted_rows(whitened, mspace) : whitened;

  if (strategy == SubsetStrategy::Exhaustive && mspace.spectral()) {
    return sigma_exhaustive_spectral(w, frame.field, n);
  }

  BoundsOptions inner = opts.bounds;
  inner.restarts = std::min(inner.restarts, 4);
  inner.iterations = std::min(inner.iterations, 300);
  SplitEvaluator eval{w, frame.field, mspace, inner};
  SigmaResult out;
  out.strategy = strategy;
  out.method = Method::Heuristic;  // optimized side values or non-exhaustive search

  if (strategy == SubsetStrategy::Exhaustive) {
    // non-spectral norms: plain enumeration with optimized side values
    std::vector<char> in_s(n, 0);
    double best = kInf;
    std::uint64_t best_mask = 0;
    const std::uint64_t count = n == 0 ? 0 : 1ULL << (n - 1);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      for (std::size_t i = 0; i + 1 < n; ++i) in_s[i] = static_cast<char>((mask >> i) & 1ULL);
      const double v = eval(in_s, best);
      if (v < best) {
        best = v;
        best_mask = mask;
      }
    }
    out.sigma = best;
    out.subset = mask_to_subset(best_mask, n);
    out.evaluations = eval.evaluations;
    return out;
  }

  // local search: steepest single-index moves from random and prefix splits
  std::mt19937_64 gen(substream(opts.seed, "sigma-local-search"));
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<char>> starts;
  {
    std::vector<std::pair<double, std::size_t>> prefix;
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<char> in_s(n, 0);
      std::fill(in_s.begin(), in_s.begin() + static_cast<std::ptrdiff_t>(k), 1);
      prefix.emplace_back(eval(in_s), k);
    }
    std::stable_sort(prefix.begin(), prefix.end());
    for (int j = 0; j < opts.prefix_seeds && j < static_cast<int>(prefix.size()); ++j) {
      std::vector<char> in_s(n, 0);
      std::fill(in_s.begin(), in_s.begin() + static_cast<std::ptrdiff_t>(prefix[static_cast<std::size_t>(j)].second), 1);
      starts.push_back(std::move(in_s));
    }
  }
  for (int r = 0; r < opts.random_seeds; ++r) {
    std::vector<char> in_s(n);
    for (auto& b : in_s) b = coin(gen) ? 1 : 0;
    starts.push_back(std::move(in_s));
  }
  double best = kInf;
  std::vector<char> best_split;
  for (auto& in_s : starts) {
    double cur = eval(in_s);
    for (std::size_t pass = 0; pass < 4 * n + 4; ++pass) {
      double step_best = cur;
      std::size_t step_i = n;
      for (std::size_t i = 0; i < n; ++i) {
        in_s[i] ^= 1;
        const double v = eval(in_s, step_best);
        in_s[i] ^= 1;
        if (v < step_best) {
          step_best = v;
          step_i = i;
        }
      }
      if (step_i == n) break;
      in_s[step_i] ^= 1;
      cur = step_best;
    }
    if (cur < best) {
      best = cur;
      best_split = in_s;
    }
  }
  out.sigma = best;
  out.subset = canonical(best_split);
  out.evaluations = eval.evaluations;
  return out;
}

// -- beta ----------------------------------------------------------------

double lipschitz_ratio(const Frame& frame, const MeasurementSpace& mspace, const Vector& x, const Vector& y) {
  const RealVector gap = measure(frame, x) - measure(frame, y);
  const double dist = quotient_distance(x, y, frame.signal_space());
  if (!(dist > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return mspace.norm(gap) / dist;
}

BetaResult beta(const Frame& frame, const MeasurementSpace& mspace, const FrameBounds& bounds, std::uint64_t seed,
                std::size_t samples) {
  BetaResult out;
  out.B = bounds.B;
  out.beta = bounds.B;
  out.samples = samples;
  const std::size_t d = frame.d();
  const Vector zero = Vector::Zero(static_cast<Eigen::Index>(d));
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  auto draw = [&] { return to_basis(frame, random_unit(d, frame.field, gen) * std::exp(normal(gen))); };
  double max_ratio = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Vector x = draw();
    Vector y;
    switch (k % 4) {
      case 0: y = zero; break;
      case 1: y = draw(); break;
      case 2: y = x + 1e-3 * draw(); break;
      default: {
        const double th = 2.0 * std::numbers::pi * (normal(gen));
        const cplx t = frame.field == Field::Real ? cplx(-1.0) : std::polar(1.0, th);
        y = t * x + 0.1 * draw();
      }
    }
    const double r = lipschitz_ratio(frame, mspace, x, y);
    if (std::isfinite(r)) max_ratio = std::max(max_ratio, r);
  }
  out.max_sampled_ratio = max_ratio;
  const double top = lipschitz_ratio(frame, mspace, bounds.top, zero);
  out.top_pair_ratio = std::isfinite(top) ? top : 0.0;
  out.validated = out.max_sampled_ratio <= out.B * (1.0 + 1e-9) && out.top_pair_ratio >= 0.99 * out.B;
  return out;
}

// -- alpha ---------------------------------------------------------------

namespace {

// Coordinate pattern search; stops when the step falls below min_step or
// the evaluation budget is spent.
template <class F>
double pattern_search(F&& f, std::vector<double>& theta, double step, double min_step, int max_evals) {
  double fx = f(theta);
  int evals = 1;
  while (step > min_step && evals < max_evals) {
    bool improved = false;
    for (std::size_t i = 0; i < theta.size() && evals < max_evals; ++i) {
      for (double sgn : {1.0, -1.0}) {
        theta[i] += sgn * step;
        const double v = f(theta);
        ++evals;
        if (v < fx) {
          fx = v;
          improved = true;
          break;
        }
        theta[i] -= sgn * step;
      }
    }
    if (!improved) step *= 0.5;
  }
  return fx;
}

// min(|W u|, |W v|) in the measurement norm; the real-field ratio for unit u, v
double min_image_norm(const MeasurementSpace& ms, const RealVector& a, const RealVector& b) {
  return ms.norm(RealVector(a.cwiseMin(b)));
}

Vector angles_to_unit(Eigen::Index d, double a, double b) {
  Vector u(d);
  if (d == 2) {
    u << std::cos(a), std::sin(a);
  } else {
    u << std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a);
  }
  return u;
}

}  // namespace

BruteforceAlpha alpha_bruteforce(const Frame& frame, const MeasurementSpace& mspace, int grid_d2, int grid_d3) {
  if (frame.field != Field::Real)
    throw Error(ErrorKind::Precondition, "brute-force alpha is implemented for the real field only");
  const Eigen::Index d = static_cast<Eigen::Index>(frame.d());
  if (d > 3) throw Error(ErrorKind::Precondition, "brute-force alpha needs d <= 3");
  if (grid_d2 < 4 || grid_d3 < 4) throw Error(ErrorKind::InvalidArgument, "grid resolution must be >= 4");
  mspace.check_size(frame.n());
  const RealMatrix w = whitened_rows(frame).real();
  BruteforceAlpha out;
  if (d == 1) {
    // u, v in {+-1}: the ratio is ||W||
    out.alpha = out.grid_minimum = mspace.norm(RealVector(w.col(0).cwiseAbs()));
    out.u = out.v = to_basis(frame, first_axis(1));
    return out;
  }
  const auto pts = sphere_grid(d, grid_d2, grid_d3);
  const std::size_t k = pts.size();
  RealMatrix img(w.rows(), static_cast<Eigen::Index>(k));  // |W u_k| by column
  for (std::size_t i = 0; i < k; ++i) img.col(static_cast<Eigen::Index>(i)) = (w * pts[i].real()).cwiseAbs();
  auto ratio = [&](std::size_t i, std::size_t j) {
    return min_image_norm(mspace, img.col(static_cast<Eigen::Index>(i)), img.col(static_cast<Eigen::Index>(j)));
  };

  double best = kInf;
  std::size_t bi = 0, bj = 0;
  if (d == 2) {
    // full table; neighbours wrap since theta and theta + pi are the same class
    RealMatrix r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) {
        const double v = ratio(i, j);
        r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        r(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    double tol = 0.0;
    const Eigen::Index kk = static_cast<Eigen::Index>(k);
    for (Eigen::Index i = 0; i < kk; ++i) {
      for (Eigen::Index j = 0; j < kk; ++j) {
        tol = std::max(tol, std::abs(r(i, j) - r((i + 1) % kk, j)));
        tol = std::max(tol, std::abs(r(i, j) - r(i, (j + 1) % kk)));
      }
    }
    out.grid_tolerance = tol;
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      const auto ci = img.col(static_cast<Eigen::Index>(i));
      for (std::size_t j = i; j < k; ++j) {
        const double v = min_image_norm(mspace, ci, img.col(static_cast<Eigen::Index>(j)));
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    // adjacent-cell variation: sampled cells plus every move out of the argmin
    const std::size_t kt = static_cast<std::size_t>(grid_d3);
    auto neighbours = [&](std::size_t p) {
      const std::size_t a = p / kt, b = p % kt;
      std::vector<std::size_t> nb;
      if (a > 0) nb.push_back((a - 1) * kt + b);
      if (a + 1 < kt) nb.push_back((a + 1) * kt + b);
      nb.push_back(a * kt + (b + 1) % kt);
      nb.push_back(a * kt + (b + kt - 1) % kt);
      return nb;
    };
    double tol = 0.0;
    auto probe = [&](std::size_t i, std::size_t j) {
      const double v = ratio(i, j);
      for (std::size_t q : neighbours(i)) tol = std::max(tol, std::abs(v - ratio(q, j)));
      for (std::size_t q : neighbours(j)) tol = std::max(tol, std::abs(v - ratio(i, q)));
    };
    std::mt19937_64 gen(0);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    for (int s = 0; s < 200000; ++s) probe(pick(gen), pick(gen));
    probe(bi, bj);
    out.grid_tolerance = tol;
  }
  out.grid_minimum = best;

  // polish the grid minimizer in angle coordinates
  auto angles_of = [&](std::size_t p) -> std::pair<double, double> {
    if (d == 2) return {static_cast<double>(p) * std::numbers::pi / grid_d2, 0.0};
    const std::size_t kt = static_cast<std::size_t>(grid_d3);
    return {static_cast<double>(p / kt) * (std::numbers::pi / 2) / (grid_d3 - 1),
            static_cast<double>(p % kt) * 2.0 * std::numbers::pi / grid_d3};
  };
  const auto [a1, b1] = angles_of(bi);
  const auto [a2, b2] = angles_of(bj);
  std::vector<double> theta = d == 2 ? std::vector<double>{a1, a2} : std::vector<double>{a1, b1, a2, b2};
  auto f = [&](const std::vector<double>& t) {
    const Vector u = d == 2 ? angles_to_unit(2, t[0], 0.0) : angles_to_unit(3, t[0], t[1]);
    const Vector v = d == 2 ? angles_to_unit(2, t[1], 0.0) : angles_to_unit(3, t[2], t[3]);
    return min_image_norm(mspace, (w * u.real()).cwiseAbs(), (w * v.real()).cwiseAbs());
  };
  const double step = d == 2 ? std::numbers::pi / grid_d2 : std::numbers::pi / grid_d3;
  const double polished = pattern_search(f, theta, step, 1e-12, 20000);
  Vector u, v;
  if (polished < best) {
    out.alpha = polished;
    u = d == 2 ? angles_to_unit(2, theta[0], 0.0) : angles_to_unit(3, theta[0], theta[1]);
    v = d == 2 ? angles_to_unit(2, theta[1], 0.0) : angles_to_unit(3, theta[2], theta[3]);
  } else {
    out.alpha = best;
    u = pts[bi];
    v = pts[bj];
  }
  out.u = to_basis(frame, u);
  out.v = to_basis(frame, v);
  return out;
}

AlphaEstimate alpha_estimate(const Frame& frame, const MeasurementSpace& mspace, const SigmaResult& sigma,
                             const FrameBounds& bounds, const AlphaOptions& opts) {
  if (opts.budget == 0) throw Error(ErrorKind::InvalidArgument, "alpha_estimate needs a positive search budget");
  mspace.check_size(frame.n());
  const std::size_t n = frame.n();
  const Eigen::Index d = static_cast<Eigen::Index>(frame.d());
  AlphaEstimate out;
  out.alpha_upper = kInf;
  auto offer = [&](const Vector& x, const Vector& y, const char* source) {
    const double r = lipschitz_ratio(frame, mspace, x, y);
    if (std::isfinite(r) && r < out.alpha_upper) {
      out.alpha_upper = r;
      out.x = x;
      out.y = y;
      out.source = source;
    }
  };

  // (bottom vector, 0): the ratio is the lower frame bound
  offer(bounds.bottom, Vector::Zero(d), "frame-bound");

  std::vector<std::pair<Vector, Vector>> seeds;
  if (!sigma.subset.empty() && sigma.subset.size() < n) {
    const NearKernel u = near_kernel_vector(frame, mspace, sigma.subset, opts.bounds);
    const NearKernel v = near_kernel_vector(frame, mspace, complement(sigma.subset, n), opts.bounds);
    const Vector va = align_phase(frame, u.u, v.u);
    offer(u.u + va, u.u - va, "witness");
    seeds.emplace_back(u.u + va, u.u - va);
  }

  // random-restart pattern searches over (x, y) in whitened coordinates
  const bool cx = frame.field == Field::Complex;
  const std::size_t per = static_cast<std::size_t>(d) * (cx ? 2 : 1);
  auto unpack = [&](const std::vector<double>& t, std::size_t off) {
    Vector z(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      const std::size_t b = off + static_cast<std::size_t>(j) * (cx ? 2 : 1);
      z(j) = cplx(t[b], cx ? t[b + 1] : 0.0);
    }
    return to_basis(frame, z);
  };
  auto objective = [&](const std::vector<double>& t) {
    const double r = lipschitz_ratio(frame, mspace, unpack(t, 0), unpack(t, per));
    return std::isfinite(r) ? r : kInf;
  };
  // basis coordinates -> whitened parameter vector
  Eigen::LLT<Matrix> llt;
  if (frame.gram) llt.compute(*frame.gram);
  auto pack = [&](const Vector& x, const Vector& y) {
    std::vector<double> t(2 * per);
    for (int s = 0; s < 2; ++s) {
      Vector z = s == 0 ? x : y;
      if (frame.gram) z = llt.matrixU() * z;
      for (Eigen::Index j = 0; j < d; ++j) {
        const std::size_t b = static_cast<std::size_t>(s) * per + static_cast<std::size_t>(j) * (cx ? 2 : 1);
        t[b] = z(j).real();
        if (cx) t[b + 1] = z(j).imag();
      }
    }
    return t;
  };
  std::mt19937_64 gen(substream(opts.seed, "alpha-search"));
  for (std::size_t r = 0; r < opts.budget; ++r) {
    std::vector<double> theta;
    if (r < seeds.size()) {
      theta = pack(seeds[r].first, seeds[r].second);
    } else {
      const Vector x = random_unit(static_cast<std::size_t>(d), frame.field, gen);
      const Vector y = random_unit(static_cast<std::size_t>(d), frame.field, gen);
      theta = pack(to_basis(frame, x), to_basis(frame, y));
    }
    pattern_search(objective, theta, 0.25, 1e-9, opts.search_evaluations);
    offer(unpack(theta, 0), unpack(theta, per), "search");
  }

  if (opts.bruteforce && frame.field == Field::Real && d <= 3) {
    out.bruteforce = alpha_bruteforce(frame, mspace, opts.grid_d2, opts.grid_d3);
  }
  if (!std::isfinite(out.alpha_upper)) out.alpha_upper = 0.0;
  return out;
}

// -- condition number ----------------------------------------------------

TauBounds condition_number(const StabilityReport& report) {
  TauBounds t;
  t.subset = report.sigma.subset;
  const double A = report.bounds.A;
  const double B = report.bounds.B;
  const double s = report.sigma.sigma;
  const double beta_v = report.beta.beta;
  const double au = report.alpha.alpha_upper;
  t.empirical_lower = au > 0.0 ? beta_v / au : kInf;
  if (!(s > report.tol.rank_rel * B)) {
    t.infinite = true;
    t.lower = t.upper = kInf;
    t.formula = "sigma = 0: tau = +inf";
    return t;
  }
  if (report.field == Field::Real) {
    t.lower = B / (2.0 * s);
    t.upper = B / s;
    t.formula = "B/(2 sigma) <= tau <= B/sigma";
  } else {
    t.lower = A / (2.0 * s);
    t.upper = kInf;
    t.formula = "A/(2 sigma) <= tau";
  }
  if (report.alpha.bruteforce && report.alpha.bruteforce->alpha > 0.0) {
    t.empirical = beta_v / report.alpha.bruteforce->alpha;
    if (report.field == Field::Real) {
      t.empirical_in_interval =
          *t.empirical >= t.lower * (1.0 - kTauInflation) && *t.empirical <= t.upper * (1.0 + kTauInflation);
    }
  }
  return t;
}

StabilityReport analyze_stability(const Frame& frame, const MeasurementSpace& mspace, const AnalyzeOptions& opts) {
  StabilityReport rep;
  rep.field = frame.field;
  rep.d = frame.d();
  rep.n = frame.n();
  rep.p = mspace.exponent();
  rep.weighted = !mspace.unweighted();
  rep.tol = opts.bounds.tol;

  BoundsOptions bo = opts.bounds;
  bo.seed = substream(opts.seed, "bounds");
  rep.bounds = frame_bounds(frame, mspace, bo);

  SigmaOptions so = opts.sigma;
  so.seed = substream(opts.seed, "sigma");
  so.bounds = bo;
  rep.sigma = scp_sigma(frame, mspace, so);

  rep.beta = beta(frame, mspace, rep.bounds, substream(opts.seed, "beta"), opts.beta_samples);

  AlphaOptions ao = opts.alpha;
  ao.seed = substream(opts.seed, "alpha");
  ao.bounds = bo;
  rep.alpha = alpha_estimate(frame, mspace, rep.sigma, rep.bounds, ao);

  rep.tau = condition_number(rep);
  return rep;
}

}  // namespace phaselab
