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

#include "phaselab/frames.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace phaselab {

namespace {

bool is_identity(const Matrix& g, double tol) {
  return g.rows() == g.cols() && (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

Frame make_frame(Matrix rows, Field field, std::vector<double> labels, std::optional<Matrix> gram) {
  if (rows.cols() < 1) throw Error(ErrorKind::InvalidArgument, "frame needs signal dimension d >= 1");
  if (!rows.allFinite()) throw Error(ErrorKind::InvalidArgument, "frame rows must be finite");
  if (field == Field::Real && rows.size() > 0 && rows.imag().cwiseAbs().maxCoeff() > 0.0)
    throw Error(ErrorKind::Schema, "real frame has entries with nonzero imaginary part");
  if (labels.empty()) {
    labels.resize(static_cast<std::size_t>(rows.rows()));
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<double>(i);
  }
  if (labels.size() != static_cast<std::size_t>(rows.rows())) {
    std::ostringstream msg;
    msg << "frame has " << rows.rows() << " rows but " << labels.size() << " labels";
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  if (gram) {
    if (gram->rows() != rows.cols() || gram->cols() != rows.cols())
      throw Error(ErrorKind::DimensionMismatch, "basis Gram matrix must be d x d");
    if ((*gram - gram->adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, gram->cwiseAbs().maxCoeff()))
      throw Error(ErrorKind::InvalidArgument, "basis Gram matrix must be Hermitian");
    Eigen::LLT<Matrix> llt(*gram);
    if (llt.info() != Eigen::Success)
      throw Error(ErrorKind::InvalidArgument, "basis Gram matrix must be positive definite");
    if (is_identity(*gram, 0.0)) gram.reset();
  }
  Frame f;
  f.field = field;
  f.rows = std::move(rows);
  f.labels = std::move(labels);
  f.gram = std::move(gram);
  return f;
}

Frame identity_frame(std::size_t d, Field field) {
  return make_frame(Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)), field);
}

Frame random_frame(std::size_t d, std::size_t n, Field field, std::uint64_t seed, bool allow_subspanning) {
  if (d < 1 || n < 1) throw Error(ErrorKind::InvalidArgument, "random_frame needs d >= 1 and N >= 1");
  if (n < d && !allow_subspanning) {
    std::ostringstream msg;
    msg << "random_frame: N=" << n << " < d=" << d
        << " cannot span the signal space; set allow_subspanning to build it anyway";
    throw Error(ErrorKind::SubSpanning, msg.str());
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Matrix rows(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      const double re = normal(gen);
      const double im = field == Field::Complex ? normal(gen) : 0.0;
      rows(i, j) = cplx(re, im);
    }
  }
  return make_frame(std::move(rows), field);
}

namespace {

// sin(pi t) with exact zeros at the integers
double sin_pi(double t) {
  const double r = std::remainder(t, 2.0);  // exact, in [-1, 1]
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  const double a = std::abs(r);
  const double s = std::sin(std::numbers::pi * (a > 0.5 ? 1.0 - a : a));
  return r < 0.0 ? -s : s;
}

}  // namespace

double sinc(double t) {
  if (t == 0.0) return 1.0;
  return sin_pi(t) / (std::numbers::pi * t);
}

Frame sinc_frame_at(std::span<const double> points, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "sinc frame needs m >= 1");
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "sinc frame needs at least one sample point");
  const int d = 4 * m + 1;
  Matrix rows(static_cast<Eigen::Index>(points.size()), d);
  for (std::size_t n = 0; n < points.size(); ++n) {
    for (int l = -2 * m; l <= 2 * m; ++l) rows(static_cast<Eigen::Index>(n), l + 2 * m) = sinc(points[n] - l);
  }
  // Gram of the integer-shifted sinc family: <sinc(.-k), sinc(.-l)> = sinc(k - l)
  Matrix gram(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) gram(k, l) = sinc(static_cast<double>(k - l));
  return make_frame(std::move(rows), Field::Real, std::vector<double>(points.begin(), points.end()),
                    std::move(gram));
}

Frame sinc_frame(const SincFrameSpec& spec) {
  if (spec.m < 1) throw Error(ErrorKind::InvalidArgument, "sinc frame needs m >= 1");
  if (!(spec.step > 0.0)) throw Error(ErrorKind::InvalidArgument, "sinc frame needs a positive step");
  if (spec.oversample < 1) throw Error(ErrorKind::InvalidArgument, "oversample factor must be >= 1");
  const int w = spec.half_width();
  if (w < 0) throw Error(ErrorKind::InvalidArgument, "window half-width must be >= 0");
  const int q = spec.oversample;
  std::vector<double> points;
  points.reserve(spec.count());
  for (int n = -w * q; n <= w * q; ++n) points.push_back(n * spec.step / q);
  Frame f = sinc_frame_at(points, spec.m);
  if (w * spec.step < 2 * spec.m) {
    std::ostringstream msg;
    msg << "sample window W*step = " << w * spec.step << " does not reach the outermost basis centers +-"
        << 2 * spec.m;
    f.warnings.push_back(msg.str());
  }
  return f;
}

Frame restrict(const Frame& frame, const IndexSet& subset) {
  Matrix rows(static_cast<Eigen::Index>(subset.size()), frame.rows.cols());
  std::vector<double> labels;
  labels.reserve(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const std::size_t i = subset[k];
    if (i >= frame.n()) {
      std::ostringstream msg;
      msg << "restrict: index " << i << " out of range for a frame with N=" << frame.n();
      throw Error(ErrorKind::IndexOutOfRange, msg.str());
    }
    rows.row(static_cast<Eigen::Index>(k)) = frame.rows.row(static_cast<Eigen::Index>(i));
    labels.push_back(frame.labels[i]);
  }
  Frame f;
  f.field = frame.field;
  f.rows = std::move(rows);
  f.labels = std::move(labels);
  f.gram = frame.gram;
  return f;
}

IndexSet complement(const IndexSet& subset, std::size_t n) {
  std::vector<char> in(n, 0);
  for (std::size_t i : subset) {
    if (i >= n) throw Error(ErrorKind::IndexOutOfRange, "complement: index out of range");
    in[i] = 1;
  }
  IndexSet out;
  for (std::size_t i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

IndexSet all_indices(std::size_t n) {
  IndexSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

Matrix whitened_rows(const Frame& frame) {
  if (!frame.gram) return frame.rows;
  Eigen::LLT<Matrix> llt(*frame.gram);
  const Matrix y = llt.matrixL().solve(frame.rows.adjoint());
  return y.adjoint();
}

Vector from_whitened(const Frame& frame, const Vector& z) {
  if (!frame.gram) return z;
  Eigen::LLT<Matrix> llt(*frame.gram);
  return llt.matrixU().solve(z);
}

RealVector measure(const Frame& frame, const Vector& x) { return measure(frame.rows, frame.field, x); }

// -- serialization -------------------------------------------------------

namespace {

nlohmann::ordered_json number_or_integer(double v) {
  if (std::isfinite(v) && std::floor(v) == v && std::abs(v) < 9007199254740992.0)
    return static_cast<std::int64_t>(v);
  return v;
}

nlohmann::ordered_json matrix_to_json(const Matrix& m, Field field) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (field == Field::Real)
        row.push_back(m(i, j).real());
      else
        row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    out.push_back(std::move(row));
  }
  return out;
}

[[noreturn]] void schema_error(const std::string& context, const std::string& what) {
  throw Error(ErrorKind::Schema, context + ": " + what);
}

const nlohmann::json& require(const nlohmann::json& j, const char* key, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(context, std::string("missing key '") + key + "'");
  return *it;
}

double read_number(const nlohmann::json& v, const std::string& where, const std::string& context) {
  if (!v.is_number()) schema_error(context, where + ": expected a number");
  return v.get<double>();
}

cplx read_entry(const nlohmann::json& v, Field field, const std::string& where, const std::string& context) {
  if (v.is_array()) {
    if (field == Field::Real) schema_error(context, where + ": complex entry in a frame declared \"real\"");
    if (v.size() != 2) schema_error(context, where + ": complex entries are [re, im] pairs");
    return {read_number(v[0], where + "[0]", context), read_number(v[1], where + "[1]", context)};
  }
  return {read_number(v, where, context), 0.0};
}

Matrix read_matrix(const nlohmann::json& j, std::size_t rows, std::size_t cols, Field field, const char* key,
                   const std::string& context) {
  if (!j.is_array()) schema_error(context, std::string("'") + key + "' must be an array");
  if (j.size() != rows) {
    std::ostringstream msg;
    msg << "'" << key << "' has " << j.size() << " rows, expected " << rows;
    schema_error(context, msg.str());
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    const std::string where_row = std::string(key) + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != cols) {
      std::ostringstream msg;
      msg << where_row << ": expected an array of " << cols << " entries";
      schema_error(context, msg.str());
    }
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          read_entry(row[k], field, where_row + "[" + std::to_string(k) + "]", context);
  }
  return m;
}

std::size_t read_count(const nlohmann::json& j, const char* key, const std::string& context) {
  const auto& v = require(j, key, context);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    schema_error(context, std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

nlohmann::ordered_json frame_to_json(const Frame& frame) {
  nlohmann::ordered_json j;
  j["field"] = std::string(to_string(frame.field));
  j["d"] = frame.d();
  j["n"] = frame.n();
  nlohmann::ordered_json labels = nlohmann::ordered_json::array();
  for (double l : frame.labels) labels.push_back(number_or_integer(l));
  j["labels"] = std::move(labels);
  j["rows"] = matrix_to_json(frame.rows, frame.field);
  if (frame.gram) j["gram"] = matrix_to_json(*frame.gram, frame.field);
  return j;
}

Frame frame_from_json(const nlohmann::json& j, std::optional<Field> expected, const std::string& context) {
  if (!j.is_object()) schema_error(context, "top-level value must be an object");
  const auto& field_j = require(j, "field", context);
  if (!field_j.is_string()) schema_error(context, "'field' must be \"real\" or \"complex\"");
  Field field;
  try {
    field = parse_field(field_j.get<std::string>());
  } catch (const Error& e) {
    schema_error(context, e.what());
  }
  if (expected && *expected != field) {
    schema_error(context, "field is \"" + std::string(to_string(field)) + "\" but a " +
                              std::string(to_string(*expected)) + " frame was expected");
  }
  const std::size_t d = read_count(j, "d", context);
  const std::size_t n = read_count(j, "n", context);
  if (d < 1) schema_error(context, "'d' must be >= 1");
  const auto& labels_j = require(j, "labels", context);
  if (!labels_j.is_array() || labels_j.size() != n) schema_error(context, "'labels' must be an array of n numbers");
  std::vector<double> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(read_number(labels_j[i], "labels[" + std::to_string(i) + "]", context));
  Matrix rows = read_matrix(require(j, "rows", context), n, d, field, "rows", context);
  std::optional<Matrix> gram;
  if (auto it = j.find("gram"); it != j.end()) gram = read_matrix(*it, d, d, field, "gram", context);
  try {
    return make_frame(std::move(rows), field, std::move(labels), std::move(gram));
  } catch (const Error& e) {
    schema_error(context, e.what());
  }
}

void save_frame(const Frame& frame, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path.string() + "' for writing");
  out << frame_to_json(frame).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::InvalidArgument, "failed writing '" + path.string() + "'");
}

Frame load_frame(const std::filesystem::path& path, std::optional<Field> expected) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open frame file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": malformed JSON (" << e.what() << ")";
    throw Error(ErrorKind::Parse, msg.str());
  }
  return frame_from_json(j, expected, path.string());
}

}  // namespace phaselab
