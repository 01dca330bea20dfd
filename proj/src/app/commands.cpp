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

#include "phaselab/app.hpp"

#include "config.hpp"

#include "phaselab/bounds.hpp"
#include "phaselab/cp.hpp"
#include "phaselab/frames.hpp"
#include "phaselab/recon.hpp"
#include "phaselab/report.hpp"
#include "phaselab/sampling.hpp"
#include "phaselab/witness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <regex>
#include <sstream>

namespace phaselab {

namespace {

using ojson = nlohmann::ordered_json;
using app::Config;
using app::UsageError;

// Everything a subcommand hands back to the driver.
struct Outcome {
  ojson result;
  std::vector<std::string> notices;  // printed to stderr, also embedded in the JSON
  std::string csv;                   // native CSV view when the command has one
  std::map<std::string, std::string> files;
  int exit_code = kExitOk;
};

// -- frame and measurement space from config ------------------------------

std::string default_kind(const Config& c) { return c.has("frame.path") ? "file" : "sinc"; }

void resolve_frame_defaults(Config& c) {
  c.set_default("frame.kind", default_kind(c));
  const std::string kind = c.str("frame.kind", "sinc");
  if (kind == "sinc") {
    c.set_default("frame.m", "1");
    c.set_default("frame.step", "0.25");
    c.set_default("frame.oversample", "1");
  } else if (kind == "random") {
    c.set_default("frame.d", "2");
    c.set_default("frame.n", "4");
    c.set_default("frame.field", "real");
    c.set_default("frame.seed", "0");
  } else if (kind == "identity") {
    c.set_default("frame.d", "2");
    c.set_default("frame.field", "real");
  }
  c.set_default("mspace.p", "2");
}

std::size_t positive(const Config& c, const std::string& key, long long fallback) {
  const long long v = c.integer(key, fallback);
  if (v <= 0) throw UsageError("config key '" + key + "': must be positive, got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

Field field_of(const Config& c, const std::string& key) {
  try {
    return parse_field(c.str(key, "real"));
  } catch (const Error& e) {
    throw UsageError("config key '" + key + "': " + e.what());
  }
}

Frame build_frame(const Config& c) {
  const std::string kind = c.str("frame.kind", default_kind(c));
  if (kind == "file") {
    const auto path = c.get("frame.path");
    if (!path) throw UsageError("frame.kind = file needs --frame PATH (config key 'frame.path')");
    std::optional<Field> expected;
    if (c.has("frame.field")) expected = field_of(c, "frame.field");
    return load_frame(*path, expected);
  }
  if (kind == "sinc") {
    SincFrameSpec spec;
    spec.m = static_cast<int>(positive(c, "frame.m", 1));
    spec.step = c.real("frame.step", 0.25);
    if (c.has("frame.window")) spec.window = static_cast<int>(positive(c, "frame.window", 1));
    spec.oversample = static_cast<int>(positive(c, "frame.oversample", 1));
    return sinc_frame(spec);
  }
  if (kind == "random") {
    return random_frame(positive(c, "frame.d", 2), positive(c, "frame.n", 4), field_of(c, "frame.field"),
                        c.seed("frame.seed", 0));
  }
  if (kind == "identity") return identity_frame(positive(c, "frame.d", 2), field_of(c, "frame.field"));
  throw UsageError("config key 'frame.kind': unknown frame kind '" + kind + "' (file|sinc|random|identity)");
}

MeasurementSpace build_mspace(const Config& c) {
  Exponent p;
  try {
    p = parse_exponent(c.str("mspace.p", "2"));
  } catch (const Error& e) {
    throw UsageError("config key 'mspace.p': " + std::string(e.what()));
  }
  return MeasurementSpace(p, c.real_list("mspace.weights"));
}

ojson frame_summary(const Frame& f, const Config& c) {
  ojson j;
  j["kind"] = c.str("frame.kind", default_kind(c));
  j["field"] = std::string(to_string(f.field));
  j["d"] = f.d();
  j["n"] = f.n();
  j["orthonormal_basis"] = !f.gram.has_value();
  return j;
}

void add_frame_warnings(const Frame& f, Outcome& out) {
  for (const auto& w : f.warnings) out.notices.push_back(w);
}

// -- subcommands -----------------------------------------------------------

Outcome cmd_analyze(Config& c) {
  resolve_frame_defaults(c);
  c.set_default("analyze.strategy", "auto");
  c.set_default("analyze.alpha_budget", "16");
  c.set_default("analyze.beta_samples", "10000");
  c.set_default("cp.heuristic", "false");

  const Frame frame = build_frame(c);
  const MeasurementSpace mspace = build_mspace(c);
  mspace.check_size(frame.n());

  AnalyzeOptions opts;
  opts.seed = c.seed("run.seed", 0);
  opts.sigma.strategy = parse_strategy(c.str("analyze.strategy", "auto"));
  opts.alpha.budget = positive(c, "analyze.alpha_budget", 16);
  opts.beta_samples = positive(c, "analyze.beta_samples", 10000);

  Outcome out;
  add_frame_warnings(frame, out);
  const StabilityReport report = analyze_stability(frame, mspace, opts);

  CpOptions cpo;
  cpo.heuristic = c.flag("cp.heuristic", false);
  ojson cp;
  std::optional<CpVerdict> verdict;
  try {
    verdict = check_cp(frame, cpo);
    cp = to_json(*verdict);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Infeasible) throw;
    cp = {{"error", e.what()}};
  }

  out.result["frame"] = frame_summary(frame, c);
  out.result["stability"] = to_json(report);
  out.result["complement_property"] = cp;
  if (verdict && !verdict->holds) {
    const auto [x, y] = nonuniqueness_pair(*verdict, frame);
    const RealVector gap = measure(frame, x) - measure(frame, y);
    out.result["counterexample"] = {{"x", json_vector(x, frame.field)},
                                    {"y", json_vector(y, frame.field)},
                                    {"measurement_gap_inf", json_number(gap.cwiseAbs().maxCoeff())},
                                    {"signal_distance", json_number(quotient_distance(x, y, frame.signal_space()))}};
  } else {
    out.result["counterexample"] = nullptr;
  }
  return out;
}

ojson check(const std::string& name, double value, const std::string& op, double threshold, bool passed) {
  return {{"name", name}, {"value", json_number(value)}, {"op", op}, {"threshold", json_number(threshold)},
          {"passed", passed}};
}

Outcome cmd_sweep(Config& c) {
  c.set_default("sweep.kind", "dimension");
  const std::string kind = c.str("sweep.kind", "dimension");
  if (kind != "dimension" && kind != "oversample")
    throw UsageError("config key 'sweep.kind': unknown sweep kind '" + kind + "' (dimension|oversample)");
  if (kind == "dimension") {
    c.set_default("sweep.m", "1..4");
    c.set_default("sweep.min_slope", "2.5");
  } else {
    c.set_default("sweep.m", "2");
    c.set_default("sweep.q", "1,2,4");
    c.set_default("sweep.max_spread", "0.10");
  }
  c.set_default("sweep.step", "0.25");
  c.set_default("sweep.alpha_budget", "4");
  c.set_default("sweep.strategy", "auto");
  c.set_default("mspace.p", "2");

  const MeasurementSpace mspace = build_mspace(c);
  SweepOptions opts;
  opts.base.step = c.real("sweep.step", 0.25);
  if (c.has("sweep.window")) opts.base.window = static_cast<int>(positive(c, "sweep.window", 1));
  opts.alpha_budget = positive(c, "sweep.alpha_budget", 4);
  opts.sigma.strategy = parse_strategy(c.str("sweep.strategy", "auto"));
  opts.seed = c.seed("run.seed", 0);

  const std::vector<int> ms = c.int_range("sweep.m");
  for (int m : ms)
    if (m < 1) throw UsageError("config key 'sweep.m': m must be >= 1, got " + std::to_string(m));

  Outcome out;
  SweepResult res;
  ojson checks = ojson::array();
  if (kind == "dimension") {
    res = dimension_sweep(ms, mspace, opts);
    const double min_slope = c.real("sweep.min_slope", 2.5);
    if (ms.size() >= 2) {
      checks.push_back(check("growth_slope", res.slope, ">=", min_slope, res.slope >= min_slope));
    }
  } else {
    if (ms.size() != 1) throw UsageError("config key 'sweep.m': an oversampling sweep takes a single m");
    const std::vector<int> qs = c.int_range("sweep.q");
    for (int q : qs)
      if (q < 1) throw UsageError("config key 'sweep.q': q must be >= 1, got " + std::to_string(q));
    res = oversample_sweep(ms.front(), qs, mspace, opts);
    const double max_spread = c.real("sweep.max_spread", 0.10);
    checks.push_back(check("normalized_tau_spread", res.tau_spread, "<", max_spread, res.tau_spread < max_spread));
  }

  bool all = true;
  for (const auto& ch : checks) all = all && ch["passed"].get<bool>();
  out.result["sweep"] = to_json(res);
  out.result["checks"] = checks;
  out.result["passed"] = all;
  out.exit_code = all ? kExitOk : kExitThreshold;
  out.csv = to_csv(res);
  out.files["sweep.csv"] = out.csv;
  return out;
}

// grid(step, W) | grid(step, [w0, w1]) | grid(step, w0, w1)
SamplingSet parse_grid(const std::string& text, double bandwidth) {
  static const std::regex num(R"([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)");
  const std::string t = std::regex_replace(text, std::regex(R"(\s+)"), "");
  if (t.rfind("grid(", 0) != 0 || t.back() != ')')
    throw UsageError("density set '" + text + "': expected grid(step, window)");
  std::vector<double> args;
  const std::string body = t.substr(5, t.size() - 6);
  for (std::sregex_iterator it(body.begin(), body.end(), num), end; it != end; ++it)
    args.push_back(std::stod(it->str()));
  double w0 = 0.0, w1 = 0.0;
  if (args.size() == 2) {
    w0 = -std::abs(args[1]);
    w1 = std::abs(args[1]);
  } else if (args.size() == 3) {
    w0 = args[1];
    w1 = args[2];
  } else {
    throw UsageError("density set '" + text + "': expected grid(step, W), grid(step, [w0, w1]) or grid(step, w0, w1)");
  }
  if (!(args[0] > 0.0)) throw UsageError("density set '" + text + "': step must be positive");
  return grid_set(args[0], w0, w1, bandwidth);
}

std::vector<double> read_reals(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw UsageError(what + ": cannot open '" + path + "'");
  std::vector<double> v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": invalid number '" + tok + "'");
      }
    }
  }
  return v;
}

Outcome cmd_density(Config& c) {
  c.set_default("density.bandwidth", "1");
  if (!c.has("density.points")) c.set_default("density.set", "grid(0.25,[-20,20])");
  const double b = c.real("density.bandwidth", 1.0);
  if (!(b > 0.0)) throw UsageError("config key 'density.bandwidth': must be positive");

  Outcome out;
  SamplingSet set;
  if (const auto path = c.get("density.points"); path && !c.has("density.set")) {
    NormalizedPoints np = normalize_points(read_reals(*path, "density.points"));
    if (np.points.empty()) throw UsageError("density.points: no points in '" + *path + "'");
    if (np.reordered) out.notices.push_back("points in '" + *path + "' were not sorted; sorted on load");
    if (np.duplicates > 0)
      out.notices.push_back(std::to_string(np.duplicates) + " duplicate point(s) removed from '" + *path + "'");
    double w0 = np.points.front(), w1 = np.points.back();
    if (c.has("density.window")) {
      const auto w = c.real_list("density.window");
      if (w.size() != 2) throw UsageError("config key 'density.window': expected 'w0,w1'");
      w0 = w[0];
      w1 = w[1];
    }
    set = make_sampling_set(std::move(np.points), w0, w1, b);
  } else {
    set = parse_grid(c.str("density.set", ""), b);
  }
  std::optional<double> r_min;
  if (c.has("density.r_min")) r_min = c.real("density.r_min", 0.0);
  const InjectivityVerdict v = phaseless_injectivity_verdict(set, r_min);
  out.result = to_json(v, set);
  return out;
}

Vector read_signal(const std::string& path, std::size_t d, Field field) {
  std::ifstream in(path);
  if (!in) throw UsageError("recon.truth: cannot open '" + path + "'");
  std::vector<cplx> vals;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::vector<double> tok;
    double x = 0.0;
    while (ss >> x) tok.push_back(x);
    if (!ss.eof()) throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": invalid number");
    if (tok.empty()) continue;
    if (tok.size() > 2 || (tok.size() == 2 && field == Field::Real))
      throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": expected 1 (real) or 2 (complex) numbers");
    vals.emplace_back(tok[0], tok.size() == 2 ? tok[1] : 0.0);
  }
  if (vals.size() != d)
    throw Error(ErrorKind::DimensionMismatch,
                path + ": signal has " + std::to_string(vals.size()) + " entries, frame dimension is " + std::to_string(d));
  Vector v(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

Outcome cmd_recon(Config& c) {
  c.set_default("frame.kind", "file");
  resolve_frame_defaults(c);
  c.set_default("recon.restarts", "16");
  c.set_default("recon.max_iter", "500");
  c.set_default("recon.tol", "1e-10");
  const Frame frame = build_frame(c);
  const auto mpath = c.get("recon.measurements");
  if (!mpath) throw UsageError("recon needs --measurements PATH (config key 'recon.measurements')");
  const std::vector<double> b = read_reals(*mpath, "recon.measurements");
  if (b.size() != frame.n())
    throw Error(ErrorKind::DimensionMismatch, *mpath + ": " + std::to_string(b.size()) +
                                                  " measurements for a frame with " + std::to_string(frame.n()) + " rows");
  RealVector meas = Eigen::Map<const RealVector>(b.data(), static_cast<Eigen::Index>(b.size()));
  std::optional<Vector> truth;
  if (const auto t = c.get("recon.truth")) truth = read_signal(*t, frame.d(), frame.field);

  ReconOptions opts;
  opts.restarts = positive(c, "recon.restarts", 16);
  opts.max_iter = positive(c, "recon.max_iter", 500);
  opts.tol = c.real("recon.tol", 1e-10);
  opts.seed = substream(c.seed("run.seed", 0), "recon");

  Outcome out;
  add_frame_warnings(frame, out);
  out.result["frame"] = frame_summary(frame, c);
  out.result["recon"] = to_json(solve(frame, meas, opts, truth), frame.field);
  return out;
}

Outcome cmd_cp(Config& c) {
  resolve_frame_defaults(c);
  c.set_default("cp.heuristic", "false");
  const Frame frame = build_frame(c);
  CpOptions opts;
  opts.heuristic = c.flag("cp.heuristic", false);
  const CpVerdict v = check_cp(frame, opts);
  Outcome out;
  add_frame_warnings(frame, out);
  out.result["frame"] = frame_summary(frame, c);
  out.result["complement_property"] = to_json(v);
  if (!v.holds) {
    const auto [x, y] = nonuniqueness_pair(v, frame);
    out.result["counterexample"] = {{"x", json_vector(x, frame.field)}, {"y", json_vector(y, frame.field)}};
  } else {
    out.result["counterexample"] = nullptr;
  }
  return out;
}

Outcome cmd_witness(Config& c) {
  resolve_frame_defaults(c);
  const Frame frame = build_frame(c);
  const MeasurementSpace mspace = build_mspace(c);
  mspace.check_size(frame.n());
  Outcome out;
  add_frame_warnings(frame, out);
  IndexSet subset;
  std::optional<SigmaResult> sigma;
  if (const auto s = c.get("witness.subset")) {
    for (int i : app::parse_int_range(*s, "config key 'witness.subset'")) {
      if (i < 0 || static_cast<std::size_t>(i) >= frame.n())
        throw Error(ErrorKind::IndexOutOfRange, "config key 'witness.subset': index " + std::to_string(i) +
                                                    " outside [0, " + std::to_string(frame.n()) + ")");
      subset.push_back(static_cast<std::size_t>(i));
    }
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  } else {
    c.set_default("analyze.strategy", "auto");
    SigmaOptions so;
    so.strategy = parse_strategy(c.str("analyze.strategy", "auto"));
    so.seed = substream(c.seed("run.seed", 0), "sigma");
    sigma = scp_sigma(frame, mspace, so);
    subset = sigma->subset;
  }
  const WitnessPair w = build_witness(frame, mspace, subset);
  out.result["frame"] = frame_summary(frame, c);
  out.result["sigma"] = sigma ? ojson{{"value", json_number(sigma->sigma)},
                                      {"method", std::string(to_string(sigma->method))},
                                      {"subset", json_indices(sigma->subset)}}
                              : ojson(nullptr);
  out.result["witness"] = to_json(w, frame.field);
  return out;
}

Outcome cmd_frame(Config& c) {
  resolve_frame_defaults(c);
  const Frame frame = build_frame(c);
  Outcome out;
  add_frame_warnings(frame, out);
  out.result = frame_to_json(frame);
  out.files["frame.json"] = out.result.dump(2) + "\n";
  return out;
}

// -- rendering -------------------------------------------------------------

void flatten(const ojson& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const ojson& e) { return e.is_primitive(); });
    if (scalars && j.size() <= 12) {
      rows.emplace_back(prefix, j.dump());
    } else if (j.size() <= 12 && std::all_of(j.begin(), j.end(), [](const ojson& e) { return e.is_object(); })) {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
      rows.emplace_back(prefix, "[" + std::to_string(j.size()) + " entries]");
    }
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

std::string render_table(const ojson& result) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(result, "", rows);
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  std::ostringstream s;
  for (const auto& [k, v] : rows) s << std::left << std::setw(static_cast<int>(w) + 2) << k << v << '\n';
  return s.str();
}

std::string render_sweep_table(const ojson& sweep) {
  std::ostringstream s;
  s << std::left << std::setw(6) << "param" << std::setw(5) << "d" << std::setw(6) << "N" << std::setw(14) << "B"
    << std::setw(14) << "sigma" << std::setw(14) << "alpha_upper" << std::setw(14) << "tau_lower" << "tau/B-norm\n";
  auto cell = [](const ojson& v) {
    if (v.is_string()) return v.get<std::string>();
    std::ostringstream o;
    o << std::setprecision(6) << v.get<double>();
    return o.str();
  };
  for (const auto& r : sweep["rows"]) {
    s << std::left << std::setw(6) << r["param"].get<int>() << std::setw(5) << r["d"].get<std::size_t>() << std::setw(6)
      << r["N"].get<std::size_t>() << std::setw(14) << cell(r["B"]) << std::setw(14) << cell(r["sigma"])
      << std::setw(14) << cell(r["alpha_upper"]) << std::setw(14) << cell(r["tau_lower"])
      << cell(r["normalized"]["tau_lower"]) << '\n';
  }
  s << "growth slope (log2 tau_lower per step): " << cell(sweep["growth_fit"]["slope"]) << '\n';
  s << "normalized tau spread: " << cell(sweep["tau_spread"]) << '\n';
  return s.str();
}

std::string render_csv(const ojson& result) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(result, "", rows);
  std::ostringstream s;
  s << "key,value\n";
  for (const auto& [k, v] : rows) {
    if (v.find_first_of(",\"") != std::string::npos) {
      std::string q;
      for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      s << k << ",\"" << q << "\"\n";
    } else {
      s << k << ',' << v << '\n';
    }
  }
  return s.str();
}

void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& body) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("--out: cannot create directory '" + dir.string() + "': " + ec.message());
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw UsageError("--out: cannot write '" + (dir / name).string() + "'");
  f << body;
}

// Registers `--flag` on `sub`, recording its value under `key`.
void bind_option(CLI::App* sub, std::map<std::string, std::string>& overrides, const std::string& flag,
          const std::string& key, const std::string& help) {
  sub->add_option_function<std::string>(
      flag, [&overrides, key](const std::string& v) { overrides[key] = v; }, help);
}

void bind_switch(CLI::App* sub, std::map<std::string, std::string>& overrides, const std::string& flag,
                 const std::string& key, const std::string& help) {
  sub->add_flag_callback(flag, [&overrides, key]() { overrides[key] = "true"; }, help);
}

void bind_frame(CLI::App* sub, std::map<std::string, std::string>& o) {
  bind_option(sub, o, "--frame", "frame.path", "frame JSON file");
  bind_option(sub, o, "--kind", "frame.kind", "frame source: file|sinc|random|identity");
  bind_option(sub, o, "--m", "frame.m", "sinc basis index range [-2m, 2m]");
  bind_option(sub, o, "--step", "frame.step", "sinc sample spacing");
  bind_option(sub, o, "--window", "frame.window", "sinc half-width in steps");
  bind_option(sub, o, "--oversample", "frame.oversample", "sinc oversampling factor q");
  bind_option(sub, o, "--d", "frame.d", "dimension (random, identity)");
  bind_option(sub, o, "--n", "frame.n", "number of rows (random)");
  bind_option(sub, o, "--field", "frame.field", "real|complex");
  bind_option(sub, o, "--frame-seed", "frame.seed", "seed of a random frame");
}

void bind_mspace(CLI::App* sub, std::map<std::string, std::string>& o) {
  bind_option(sub, o, "--p", "mspace.p", "measurement exponent: 1|2|inf");
  bind_option(sub, o, "--weights", "mspace.weights", "comma-separated positive weights");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App cli{"phaselab: uniqueness and stability analysis for phase retrieval on finite frames", "phaselab"};
  cli.require_subcommand(1);
  cli.fallthrough();

  std::map<std::string, std::string> o;
  std::string config_path;
  cli.add_option("--config", config_path, "INI-style config file");
  bind_option(&cli, o, "--seed", "run.seed", "run seed; module seeds are derived from it");
  bind_option(&cli, o, "--out", "run.out", "directory for report files");
  bind_option(&cli, o, "--format", "run.format", "stdout format: json|csv|table");

  auto* analyze = cli.add_subcommand("analyze", "frame bounds, complement property, sigma, alpha, beta, tau");
  bind_frame(analyze, o);
  bind_mspace(analyze, o);
  bind_option(analyze, o, "--strategy", "analyze.strategy", "subset search: auto|exhaustive|local-search");
  bind_option(analyze, o, "--alpha-budget", "analyze.alpha_budget", "alpha search restarts");
  bind_option(analyze, o, "--beta-samples", "analyze.beta_samples", "random pairs checked against B");
  bind_switch(analyze, o, "--heuristic", "cp.heuristic", "allow the flat search for N > 24");

  auto* sweep = cli.add_subcommand("sweep", "sinc-frame sweeps over m or oversampling");
  bind_mspace(sweep, o);
  bind_option(sweep, o, "--kind", "sweep.kind", "dimension|oversample");
  bind_option(sweep, o, "--m", "sweep.m", "m values: a..b, a,b,c or a single value");
  bind_option(sweep, o, "--q", "sweep.q", "oversampling factors");
  bind_option(sweep, o, "--step", "sweep.step", "base sample spacing");
  bind_option(sweep, o, "--window", "sweep.window", "half-width in base steps");
  bind_option(sweep, o, "--strategy", "sweep.strategy", "subset search: auto|exhaustive|local-search");
  bind_option(sweep, o, "--alpha-budget", "sweep.alpha_budget", "alpha search restarts per cell");
  bind_option(sweep, o, "--min-slope", "sweep.min_slope", "threshold on the log2 growth slope");
  bind_option(sweep, o, "--max-spread", "sweep.max_spread", "threshold on the normalized tau spread");

  auto* density = cli.add_subcommand("density", "density criterion for phaseless injectivity on PW");
  bind_option(density, o, "--set", "density.set", "grid(step, W) | grid(step, [w0, w1])");
  bind_option(density, o, "--points", "density.points", "file with one real per line");
  bind_option(density, o, "--window", "density.window", "w0,w1 for a points file");
  bind_option(density, o, "--bandwidth", "density.bandwidth", "b");
  bind_option(density, o, "--r-min", "density.r_min", "smallest radius");

  auto* recon = cli.add_subcommand("recon", "alternating-minimization reconstruction");
  bind_frame(recon, o);
  bind_option(recon, o, "--measurements", "recon.measurements", "file with |<phi_i, x>| per line");
  bind_option(recon, o, "--truth", "recon.truth", "optional true signal (1 or 2 numbers per line)");
  bind_option(recon, o, "--restarts", "recon.restarts", "random restarts");
  bind_option(recon, o, "--max-iter", "recon.max_iter", "iterations per restart");
  bind_option(recon, o, "--tol", "recon.tol", "residual tolerance");

  auto* cp = cli.add_subcommand("cp", "complement property and injectivity");
  bind_frame(cp, o);
  bind_switch(cp, o, "--heuristic", "cp.heuristic", "allow the flat search for N > 24");

  auto* witness = cli.add_subcommand("witness", "instability witness pair for a split");
  bind_frame(witness, o);
  bind_mspace(witness, o);
  bind_option(witness, o, "--subset", "witness.subset", "0-based indices of S (default: the sigma minimizer)");
  bind_option(witness, o, "--strategy", "analyze.strategy", "subset search when --subset is absent");

  auto* frame = cli.add_subcommand("frame", "write a generated frame as JSON");
  bind_frame(frame, o);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << cli.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "phaselab: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string command = cli.get_subcommands().front()->get_name();
  try {
    Config cfg = config_path.empty() ? Config{} : Config::from_file(config_path);
    for (const auto& [k, v] : o) cfg.set(k, v);
    cfg.set_default("run.seed", "0");
    cfg.set_default("run.format", "json");
    const std::string format = cfg.str("run.format", "json");
    if (format != "json" && format != "csv" && format != "table")
      throw UsageError("config key 'run.format': unknown format '" + format + "' (json|csv|table)");
    cfg.seed("run.seed", 0);

    Outcome res;
    if (command == "analyze") res = cmd_analyze(cfg);
    else if (command == "sweep") res = cmd_sweep(cfg);
    else if (command == "density") res = cmd_density(cfg);
    else if (command == "recon") res = cmd_recon(cfg);
    else if (command == "cp") res = cmd_cp(cfg);
    else if (command == "witness") res = cmd_witness(cfg);
    else res = cmd_frame(cfg);

    // run.out and run.format do not change results, so they stay out of the hash.
    Config hashed;
    for (const auto& [k, v] : cfg.values())
      if (k != "run.out" && k != "run.format") hashed.set(k, v);

    ojson envelope;
    if (command == "frame") {
      envelope = res.result;
    } else {
      envelope["command"] = command;
      envelope["config"] = hashed.to_json();
      envelope["config_hash"] = hashed.hash();
      envelope["notices"] = res.notices;
      envelope["result"] = res.result;
    }
    for (const auto& n : res.notices) err << "phaselab: notice: " << n << "\n";

    const std::string json_text = envelope.dump(2) + "\n";
    std::string text;
    if (format == "json") {
      text = json_text;
    } else if (format == "csv") {
      text = res.csv.empty() ? render_csv(res.result) : res.csv;
    } else {
      text = command == "sweep" ? render_sweep_table(res.result["sweep"]) : render_table(res.result);
      if (command == "sweep")
        for (const auto& ch : res.result["checks"])
          text += "check " + ch["name"].get<std::string>() + ": " + (ch["passed"].get<bool>() ? "pass" : "FAIL") + "\n";
    }
    out << text;

    if (const auto dir = cfg.get("run.out")) {
      if (command != "frame") {
        const std::string base = command == "analyze" ? "report" : command;
        write_file(*dir, base + ".json", json_text);
        write_file(*dir, base + ".txt",
                   command == "sweep" ? render_sweep_table(res.result["sweep"]) : render_table(res.result));
      }
      for (const auto& [name, body] : res.files) write_file(*dir, name, body);
    }
    return res.exit_code;
  } catch (const UsageError& e) {
    err << "phaselab " << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "phaselab " << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "phaselab " << command << ": internal error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace phaselab
