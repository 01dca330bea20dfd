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

#include "phaselab/report.hpp"

#include "phaselab/bounds.hpp"
#include "phaselab/cp.hpp"
#include "phaselab/recon.hpp"
#include "phaselab/sampling.hpp"
#include "phaselab/witness.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace phaselab {

using ojson = nlohmann::ordered_json;

ojson json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ojson json_vector(const Vector& v, Field field) {
  ojson out = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (field == Field::Real)
      out.push_back(json_number(v(i).real()));
    else
      out.push_back({json_number(v(i).real()), json_number(v(i).imag())});
  }
  return out;
}

ojson json_indices(const IndexSet& s) {
  ojson out = ojson::array();
  for (std::size_t i : s) out.push_back(i);
  return out;
}

ojson json_tolerances(const Tolerances& t) {
  ojson j;
  j["linalg_rel"] = t.linalg_rel;
  j["optimization"] = t.optimization;
  j["rank_rel"] = t.rank_rel;
  j["phase_search"] = t.phase_search;
  j["kernel_abs"] = t.kernel_abs;
  return j;
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorKind::Schema, "expected a number or \"inf\"/\"-inf\"/\"nan\"");
}

// -- bounds --------------------------------------------------------------

ojson to_json(const StabilityReport& r) {
  ojson j;
  j["field"] = std::string(to_string(r.field));
  j["d"] = r.d;
  j["n"] = r.n;
  j["measurement_norm"] = {{"p", std::string(to_string(r.p))}, {"weighted", r.weighted}};

  ojson a;
  a["value"] = json_number(r.bounds.A);
  a["method"] = std::string(to_string(r.bounds.method_A));
  a["vector"] = json_vector(r.bounds.bottom, r.field);
  j["A"] = a;
  ojson b;
  b["value"] = json_number(r.bounds.B);
  b["method"] = std::string(to_string(r.bounds.method_B));
  b["vector"] = json_vector(r.bounds.top, r.field);
  j["B"] = b;

  ojson s;
  s["value"] = json_number(r.sigma.sigma);
  s["method"] = std::string(to_string(r.sigma.method));
  s["strategy"] = std::string(to_string(r.sigma.strategy));
  s["subset"] = json_indices(r.sigma.subset);
  s["evaluations"] = r.sigma.evaluations;
  j["sigma"] = s;

  ojson be;
  be["value"] = json_number(r.beta.beta);
  be["method"] = "equals-B";
  be["B_method"] = std::string(to_string(r.bounds.method_B));
  be["max_sampled_ratio"] = json_number(r.beta.max_sampled_ratio);
  be["top_pair_ratio"] = json_number(r.beta.top_pair_ratio);
  be["samples"] = r.beta.samples;
  be["validated"] = r.beta.validated;
  j["beta"] = be;

  ojson al;
  al["upper"] = json_number(r.alpha.alpha_upper);
  al["upper_method"] = "heuristic";
  al["upper_source"] = r.alpha.source;
  al["pair"] = {{"x", json_vector(r.alpha.x, r.field)}, {"y", json_vector(r.alpha.y, r.field)}};
  if (r.alpha.bruteforce) {
    const auto& bf = *r.alpha.bruteforce;
    al["bruteforce"] = {{"value", json_number(bf.alpha)},
                        {"method", "oracle"},
                        {"grid_minimum", json_number(bf.grid_minimum)},
                        {"grid_tolerance", json_number(bf.grid_tolerance)}};
  } else {
    al["bruteforce"] = nullptr;
  }
  j["alpha"] = al;

  ojson t;
  t["lower"] = json_number(r.tau.lower);
  t["upper"] = json_number(r.tau.upper);
  t["formula"] = r.tau.formula;
  t["empirical_lower"] = json_number(r.tau.empirical_lower);
  t["empirical"] = r.tau.empirical ? json_number(*r.tau.empirical) : ojson(nullptr);
  t["empirical_in_interval"] = r.tau.empirical_in_interval ? ojson(*r.tau.empirical_in_interval) : ojson(nullptr);
  t["inflation"] = kTauInflation;
  t["infinite"] = r.tau.infinite;
  t["subset"] = json_indices(r.tau.subset);
  j["tau"] = t;
  j["tolerances"] = json_tolerances(r.tol);
  return j;
}

// -- cp ------------------------------------------------------------------

ojson to_json(const CpVerdict& v) {
  ojson j;
  j["holds"] = v.holds;
  j["violating_subset"] = v.violating_subset ? json_indices(*v.violating_subset) : ojson(nullptr);
  j["injectivity"] = std::string(to_string(v.injectivity));
  if (v.witness) {
    j["witness"] = {{"u", json_vector(v.witness->first, v.field)},
                    {"v", json_vector(v.witness->second, v.field)},
                    {"u_residual", json_number(v.u_residual)},
                    {"v_residual", json_number(v.v_residual)}};
  } else {
    j["witness"] = nullptr;
  }
  j["certificate"] = std::string(to_string(v.certificate));
  j["complete"] = v.complete;
  return j;
}

// -- witness -------------------------------------------------------------

ojson to_json(const WitnessPair& w, Field field) {
  ojson j;
  j["subset"] = json_indices(w.subset);
  j["u"] = json_vector(w.u, field);
  j["v"] = json_vector(w.v, field);
  j["x"] = json_vector(w.x, field);
  j["y"] = json_vector(w.y, field);
  j["u_residual"] = json_number(w.u_residual);
  j["v_residual"] = json_number(w.v_residual);
  j["measurement_gap"] = json_number(w.measurement_gap);
  j["signal_gap"] = json_number(w.signal_gap);
  j["ratio"] = json_number(w.ratio);
  return j;
}

namespace {

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

std::string to_csv(const SweepResult& r) {
  std::ostringstream out;
  out << "param,d,N,A,B,sigma,alpha_upper,tau_lower,ratio\n";
  for (const auto& row : r.rows) {
    out << row.param << ',' << row.d << ',' << row.n << ',' << csv_number(row.A) << ',' << csv_number(row.B) << ','
        << csv_number(row.sigma) << ',' << csv_number(row.alpha_upper) << ',' << csv_number(row.tau_lower) << ','
        << csv_number(row.ratio) << '\n';
  }
  return out.str();
}

ojson to_json(const SweepResult& r) {
  ojson j;
  j["kind"] = r.kind;
  ojson rows = ojson::array();
  for (const auto& row : r.rows) {
    ojson c;
    c["param"] = row.param;
    c["m"] = row.m;
    c["q"] = row.q;
    c["d"] = row.d;
    c["N"] = row.n;
    c["A"] = json_number(row.A);
    c["B"] = json_number(row.B);
    c["sigma"] = json_number(row.sigma);
    c["sigma_method"] = std::string(to_string(row.sigma_method));
    c["subset"] = json_indices(row.subset);
    c["alpha_upper"] = json_number(row.alpha_upper);
    c["tau_lower"] = json_number(row.tau_lower);
    c["ratio"] = json_number(row.ratio);
    c["normalized"] = {{"A", json_number(row.A_over_B)},
                       {"sigma", json_number(row.sigma_over_B)},
                       {"alpha_upper", json_number(row.alpha_over_B)},
                       {"tau_lower", json_number(row.tau_lower_normalized)}};
    rows.push_back(std::move(c));
  }
  j["rows"] = std::move(rows);
  j["growth_fit"] = {{"slope", json_number(r.slope)},
                     {"intercept_log2", json_number(r.intercept)},
                     {"quantity", "log2(tau_lower) vs param"}};
  j["tau_spread"] = json_number(r.tau_spread);
  j["tau_increasing"] = r.tau_increasing;
  return j;
}

// -- sampling ------------------------------------------------------------

ojson to_json(const InjectivityVerdict& v, const SamplingSet& set) {
  ojson j;
  j["verdict"] = std::string(to_string(v.verdict));
  j["density"] = json_number(v.density.density);
  j["r_at_min"] = json_number(v.density.r_at_min);
  j["r_min"] = json_number(v.density.r_min);
  j["r_cap"] = json_number(v.density.r_cap);
  j["margin"] = json_number(v.density.boundary_term);
  j["threshold"] = json_number(v.threshold);
  j["required"] = json_number(v.required);
  j["bandwidth"] = json_number(set.bandwidth);
  j["points"] = set.points.size();
  j["window"] = {json_number(set.w0), json_number(set.w1)};
  j["criterion"] = "lower Beurling density > 2b is sufficient for phaseless injectivity on PW (real signals)";
  j["fourier_convention"] = "f^(xi) = int f(t) exp(-2 pi i t xi) dt; spectrum in [-b/2, b/2]";
  return j;
}

// -- recon ---------------------------------------------------------------

ojson to_json(const ReconResult& r, Field field) {
  ojson j;
  j["estimate"] = json_vector(r.estimate, field);
  j["residual"] = json_number(r.residual);
  j["quotient_error"] = r.quotient_error ? json_number(*r.quotient_error) : ojson(nullptr);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["best_restart"] = r.best_restart;
  ojson rr = ojson::array();
  for (double v : r.restart_residuals) rr.push_back(json_number(v));
  j["restart_residuals"] = std::move(rr);
  return j;
}

}  // namespace phaselab
