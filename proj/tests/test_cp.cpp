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

#include <doctest.h>

#include "phaselab/cp.hpp"

#include <cmath>
#include <set>

using namespace phaselab;

namespace {

// Real d = 2: CP fails iff the nonzero rows lie on at most two lines.
bool cp_by_directions(const Frame& f) {
  std::vector<Eigen::Vector2d> dirs;
  for (Eigen::Index i = 0; i < f.rows.rows(); ++i) {
    Eigen::Vector2d r = f.rows.row(i).real().transpose();
    if (r.norm() < 1e-12) continue;
    r.normalize();
    bool seen = false;
    for (const auto& q : dirs) seen = seen || std::abs(q.x() * r.y() - q.y() * r.x()) < 1e-9;
    if (!seen) dirs.push_back(r);
  }
  return dirs.size() >= 3;
}

}  // namespace

TEST_CASE("identity and full-spark frames in R^2") {
  const CpVerdict id = check_cp(identity_frame(2));
  CHECK_FALSE(id.holds);
  CHECK(id.injectivity == Injectivity::NotInjective);
  CHECK(id.certificate == CpCertificate::Counting);
  REQUIRE(id.witness.has_value());

  Matrix rows(3, 2);
  rows << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
  const CpVerdict fs = check_cp(make_frame(rows, Field::Real));
  CHECK(fs.holds);
  CHECK(fs.injectivity == Injectivity::Injective);
  CHECK(fs.certificate == CpCertificate::Exhaustive);
  CHECK(fs.complete);
}

TEST_CASE("real d=2 verdict agrees with a direction count") {
  for (int k = 0; k < 60; ++k) {
    Frame f = random_frame(2, 2 + k % 5, Field::Real, 300 + k);
    if (k % 2 == 0 && f.n() >= 3) {
      Matrix rows = f.rows;
      rows.row(0) = 2.5 * rows.row(f.n() - 1);
      if (k % 4 == 0 && f.n() >= 4) rows.row(1) = -rows.row(2);
      f = make_frame(rows, Field::Real);
    }
    CHECK(check_cp(f).holds == cp_by_directions(f));
  }
}

TEST_CASE("counting shortcut below 2d - 1 rows") {
  for (Field field : {Field::Real, Field::Complex}) {
    const CpVerdict v = check_cp(random_frame(4, 6, field, 9));
    CHECK_FALSE(v.holds);
    CHECK(v.certificate == CpCertificate::Counting);
    CpOptions o;
    o.counting_shortcut = false;
    const CpVerdict w = check_cp(random_frame(4, 6, field, 9), o);
    CHECK_FALSE(w.holds);
    CHECK(w.certificate == CpCertificate::Exhaustive);
  }
}

TEST_CASE("complex frames: failure rules injectivity out, success is undetermined") {
  const CpVerdict holds = check_cp(random_frame(2, 4, Field::Complex, 1));
  CHECK(holds.holds);
  CHECK(holds.injectivity == Injectivity::Undetermined);
  const CpVerdict fails = check_cp(identity_frame(2, Field::Complex));
  CHECK(fails.injectivity == Injectivity::NotInjective);
}

TEST_CASE("violating subset and witness are consistent") {
  Matrix rows(4, 3);
  rows << 1, 0, 0, 2, 0, 0, 0, 1, 0, 0, 1, 1;  // rows 0, 1 parallel
  const Frame f = make_frame(rows, Field::Real);
  const CpVerdict v = check_cp(f);
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.violating_subset.has_value());
  const IndexSet s = *v.violating_subset;
  const IndexSet c = complement(s, f.n());
  const auto& [u, w] = *v.witness;
  CHECK(u.norm() == doctest::Approx(1.0));
  CHECK(w.norm() == doctest::Approx(1.0));
  CHECK(Vector(restrict(f, s).rows * u).norm() < 1e-9);
  CHECK(Vector(restrict(f, c).rows * w).norm() < 1e-9);
  CHECK(v.u_residual < 1e-9);
}

TEST_CASE("nonuniqueness pair has equal magnitudes and distance 2") {
  for (int k = 0; k < 10; ++k) {
    const Field field = k % 2 ? Field::Complex : Field::Real;
    const Frame f = random_frame(3, 3 + k % 2, field, 40 + k);
    const CpVerdict v = check_cp(f);
    REQUIRE_FALSE(v.holds);
    const auto [x, y] = nonuniqueness_pair(v, f);
    CHECK((measure(f, x) - measure(f, y)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(quotient_distance(x, y, f.signal_space()) == doctest::Approx(2.0));
  }
  Matrix rows(3, 2);
  rows << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
  const Frame fs = make_frame(rows, Field::Real);
  CHECK_THROWS_AS(nonuniqueness_pair(check_cp(fs), fs), Error);
}

TEST_CASE("large frames need the heuristic flag") {
  const Frame f = random_frame(3, 26, Field::Real, 2);
  try {
    check_cp(f);
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
  CpOptions o;
  o.heuristic = true;
  const CpVerdict v = check_cp(f, o);
  CHECK(v.holds);
  CHECK(v.certificate == CpCertificate::FlatSearch);

  // rows confined to two planes: the flat search finds the split
  Matrix rows = f.rows;
  for (Eigen::Index i = 0; i < 13; ++i) rows(i, 2) = 0.0;
  for (Eigen::Index i = 13; i < 26; ++i) rows(i, 0) = 0.0;
  const Frame g = make_frame(rows, Field::Real);
  const CpVerdict w = check_cp(g, o);
  REQUIRE_FALSE(w.holds);
  const auto [x, y] = nonuniqueness_pair(w, g);
  CHECK((measure(g, x) - measure(g, y)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("verdict JSON") {
  const auto j = to_json(check_cp(identity_frame(2)));
  CHECK(j["holds"] == false);
  CHECK(j["certificate"] == "counting");
  CHECK(j["injectivity"] == "not-injective");
  CHECK(j["violating_subset"].is_array());
}
