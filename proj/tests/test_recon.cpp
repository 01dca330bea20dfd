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

#include "phaselab/recon.hpp"

#include <cmath>

using namespace phaselab;

TEST_CASE("recovers generic signals from redundant frames") {
  for (Field field : {Field::Real, Field::Complex}) {
    for (int k = 0; k < 6; ++k) {
      const std::size_t d = 2 + k % 3;
      const Frame f = random_frame(d, (field == Field::Real ? 3 : 6) * d, field, 70 + k);
      const Frame sig = random_frame(d, 1, field, 170 + k, true);
      const Vector x = sig.rows.row(0).transpose();
      ReconOptions o;
      o.seed = k;
      const ReconResult r = solve(f, measure(f, x), o, x);
      CHECK(r.residual < 1e-8);
      CHECK(r.converged);
      REQUIRE(r.quotient_error.has_value());
      CHECK(*r.quotient_error < 1e-6 * x.norm());
    }
  }
}

TEST_CASE("residual history is non-increasing") {
  const Frame f = random_frame(4, 10, Field::Complex, 3);
  const Vector x = random_frame(4, 1, Field::Complex, 4, true).rows.row(0).transpose();
  ReconOptions o;
  o.restarts = 3;
  o.tol = 0.0;
  o.max_iter = 60;
  const ReconResult r = solve(f, measure(f, x), o);
  REQUIRE(r.history.size() >= 2);
  for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] <= r.history[i - 1] * (1.0 + 1e-12) + 1e-15);
  CHECK(r.restart_residuals.size() == 3);
  CHECK(r.residual == *std::min_element(r.restart_residuals.begin(), r.restart_residuals.end()));
}

TEST_CASE("zero measurements give the zero signal") {
  const Frame f = random_frame(3, 9, Field::Real, 1);
  const ReconResult r = solve(f, RealVector::Zero(9));
  CHECK(r.estimate.norm() == 0.0);
  CHECK(r.converged);
}

TEST_CASE("same seed, same answer") {
  const Frame f = random_frame(3, 8, Field::Complex, 5);
  const RealVector b = measure(f, Vector::Ones(3));
  ReconOptions o;
  o.seed = 99;
  const ReconResult a = solve(f, b, o), c = solve(f, b, o);
  CHECK(a.estimate == c.estimate);
  CHECK(a.best_restart == c.best_restart);
}

TEST_CASE("input validation") {
  const Frame f = random_frame(2, 5, Field::Real, 1);
  CHECK_THROWS_AS(solve(f, RealVector::Ones(4)), Error);
  CHECK_THROWS_AS(solve(f, -RealVector::Ones(5)), Error);
  CHECK_THROWS_AS(solve(f, RealVector::Ones(5), {}, Vector::Ones(3)), Error);
  ReconOptions o;
  o.restarts = 0;
  CHECK_THROWS_AS(solve(f, RealVector::Ones(5), o), Error);
}
