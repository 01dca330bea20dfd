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

#include "phaselab/frames.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace phaselab;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected phaselab::Error");
  return ErrorKind::InvalidArgument;
}

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("phaselab_test_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("sinc kernel") {
  CHECK(sinc(0.0) == 1.0);
  for (int k = 1; k <= 40; ++k) {
    CHECK(sinc(k) == 0.0);
    CHECK(sinc(-k) == 0.0);
  }
  CHECK(sinc(0.5) == doctest::Approx(2.0 / std::numbers::pi));
  CHECK(sinc(1e-9) == doctest::Approx(1.0));
  CHECK(sinc(2.25) == doctest::Approx(std::sin(std::numbers::pi * 2.25) / (std::numbers::pi * 2.25)));
}

TEST_CASE("sinc frame layout") {
  const Frame f = sinc_frame(SincFrameSpec{});
  CHECK(f.d() == 5);
  CHECK(f.n() == 25);
  CHECK(f.field == Field::Real);
  CHECK_FALSE(f.gram.has_value());  // integer shifts of sinc are orthonormal
  CHECK(f.labels.front() == doctest::Approx(-3.0));
  CHECK(f.labels.back() == doctest::Approx(3.0));
  for (std::size_t n = 0; n < f.n(); ++n) {
    const double t = -3.0 + 0.25 * static_cast<double>(n);
    CHECK(f.labels[n] == doctest::Approx(t));
    for (int l = -2; l <= 2; ++l) {
      const double want = t == l ? 1.0 : std::sin(std::numbers::pi * (t - l)) / (std::numbers::pi * (t - l));
      CHECK(f.rows(static_cast<Eigen::Index>(n), l + 2).real() == doctest::Approx(want).epsilon(1e-12));
    }
  }
  SincFrameSpec s;
  s.m = 2;
  s.oversample = 2;
  const Frame g = sinc_frame(s);
  CHECK(g.d() == 9);
  CHECK(g.n() == 81);
  CHECK(g.labels[1] - g.labels[0] == doctest::Approx(0.125));
}

TEST_CASE("sinc frame warns when the window misses the basis support") {
  SincFrameSpec s;
  s.m = 2;
  s.window = 4;
  const Frame f = sinc_frame(s);
  CHECK_FALSE(f.warnings.empty());
  CHECK(sinc_frame(SincFrameSpec{}).warnings.empty());
  s.step = -1.0;
  CHECK(kind_of([&] { sinc_frame(s); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("make_frame validation") {
  Matrix rows(2, 2);
  rows << 1.0, cplx(0.0, 1.0), 0.0, 1.0;
  CHECK(kind_of([&] { make_frame(rows, Field::Real); }) == ErrorKind::Schema);
  CHECK_NOTHROW(make_frame(rows, Field::Complex));
  CHECK(kind_of([&] { make_frame(rows, Field::Complex, {1.0}); }) == ErrorKind::DimensionMismatch);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = NAN;
  CHECK(kind_of([&] { make_frame(bad, Field::Real); }) == ErrorKind::InvalidArgument);
  Matrix g(2, 2);
  g << 1.0, 2.0, 2.0, 1.0;  // indefinite
  CHECK(kind_of([&] { make_frame(Matrix::Identity(2, 2), Field::Real, {}, g); }) == ErrorKind::InvalidArgument);
  const Frame f = make_frame(Matrix::Identity(2, 2), Field::Real, {}, Matrix::Identity(2, 2));
  CHECK_FALSE(f.gram.has_value());
  CHECK(f.labels == std::vector<double>{0.0, 1.0});
}

TEST_CASE("random frames are prefix-nested and reject sub-spanning sizes") {
  const Frame a = random_frame(3, 5, Field::Complex, 11);
  const Frame b = random_frame(3, 8, Field::Complex, 11);
  CHECK(b.rows.topRows(5).isApprox(a.rows, 0.0));
  CHECK(random_frame(3, 5, Field::Complex, 12).rows != a.rows);
  CHECK(random_frame(2, 4, Field::Real, 1).rows.imag().isZero(0.0));
  CHECK(kind_of([] { random_frame(4, 3, Field::Real, 0); }) == ErrorKind::SubSpanning);
  CHECK(random_frame(4, 3, Field::Real, 0, true).n() == 3);
}

TEST_CASE("restrict and complement partition the rows") {
  const Frame f = sinc_frame(SincFrameSpec{});
  const IndexSet s = {0, 3, 4, 10, 24};
  const IndexSet c = complement(s, f.n());
  CHECK(s.size() + c.size() == f.n());
  const Frame fs = restrict(f, s), fc = restrict(f, c);
  std::vector<double> labels = fs.labels;
  labels.insert(labels.end(), fc.labels.begin(), fc.labels.end());
  std::sort(labels.begin(), labels.end());
  CHECK(labels == f.labels);
  CHECK(fs.rows.row(3) == f.rows.row(10));
  CHECK(restrict(f, {}).n() == 0);
  CHECK(restrict(f, {}).d() == 5);
  CHECK(kind_of([&] { restrict(f, {25}); }) == ErrorKind::IndexOutOfRange);
  CHECK(all_indices(3) == IndexSet{0, 1, 2});
}

TEST_CASE("whitening preserves frame norms under a Gram basis") {
  Matrix m = Matrix::Random(3, 3);
  const Matrix gram = m.adjoint() * m + 0.5 * Matrix::Identity(3, 3);
  const Frame f = make_frame(Matrix::Random(6, 3), Field::Complex, {}, gram);
  const Matrix w = whitened_rows(f);
  const Vector z = Vector::Random(3);
  const Vector x = from_whitened(f, z);
  // ||x||_G = ||z|| and Phi x = W z
  CHECK(std::sqrt((x.adjoint() * gram * x)(0).real()) == doctest::Approx(z.norm()));
  CHECK((f.rows * x - w * z).norm() < 1e-12);
  CHECK(f.signal_space().norm(x) == doctest::Approx(z.norm()));
}

TEST_CASE("frame JSON round trip") {
  for (Field field : {Field::Real, Field::Complex}) {
    const Frame f = random_frame(2, 3, field, 7);
    const auto p = std::filesystem::temp_directory_path() / "phaselab_test_roundtrip.json";
    save_frame(f, p);
    const Frame g = load_frame(p);
    CHECK(g.field == f.field);
    CHECK(g.rows == f.rows);
    CHECK(g.labels == f.labels);
    std::filesystem::remove(p);
  }
  const auto j = frame_to_json(random_frame(2, 3, Field::Real, 7));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"field", "d", "n", "labels", "rows"});
  CHECK(j["labels"][1].is_number_integer());
}

TEST_CASE("frame JSON schema errors carry context") {
  const auto complex_in_real =
      temp_file("cr.json", R"({"field":"real","d":2,"n":1,"labels":[0],"rows":[[[1,2],0]]})");
  const std::string msg = message_of([&] { load_frame(complex_in_real); });
  CHECK(msg.find("complex entry in a frame declared \"real\"") != std::string::npos);
  CHECK(msg.find("cr.json") != std::string::npos);
  CHECK(kind_of([&] { load_frame(complex_in_real); }) == ErrorKind::Schema);

  const auto missing = temp_file("missing.json", R"({"field":"real","d":2,"n":1,"rows":[[1,0]]})");
  CHECK(message_of([&] { load_frame(missing); }).find("labels") != std::string::npos);

  const auto wrong_n = temp_file("n.json", R"({"field":"real","d":2,"n":2,"labels":[0],"rows":[[1,0]]})");
  CHECK(kind_of([&] { load_frame(wrong_n); }) == ErrorKind::Schema);

  const auto malformed = temp_file("bad.json", "{\n  \"field\": \"real\",\n  oops\n}\n");
  const std::string pm = message_of([&] { load_frame(malformed); });
  CHECK(kind_of([&] { load_frame(malformed); }) == ErrorKind::Parse);
  CHECK(pm.find("bad.json:3") != std::string::npos);

  const auto complex_ok =
      temp_file("c.json", R"({"rows":[[[1,2],0]],"labels":[0],"n":1,"d":2,"field":"complex"})");
  const Frame c = load_frame(complex_ok);
  CHECK(c.rows(0, 0) == cplx(1.0, 2.0));
  CHECK(kind_of([&] { load_frame(complex_ok, Field::Real); }) == ErrorKind::Schema);
}

TEST_CASE("frame measurement") {
  const Frame f = identity_frame(2, Field::Real);
  Vector x(2);
  x << -3.0, 4.0;
  CHECK(measure(f, x) == RealVector((RealVector(2) << 3.0, 4.0).finished()));
}
