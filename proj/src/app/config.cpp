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

#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace phaselab::app {

namespace {

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

std::string strip_comment(const std::string& s) {
  const auto pos = s.find_first_of("#;");
  return pos == std::string::npos ? s : s.substr(0, pos);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw UsageError("config key '" + key + "': invalid value '" + value + "' (expected " + expected + ")");
}

}  // namespace

Config Config::from_file(const std::filesystem::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    std::ostringstream msg;
    msg << "config file " << e.filename() << ":" << e.line() << ": " << e.message();
    throw UsageError(msg.str());
  }
  Config cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      const std::string v = trim(strip_comment(body.data()));
      if (!v.empty()) cfg.set(section, v);
      continue;
    }
    for (const auto& [key, node] : body) {
      const std::string v = trim(strip_comment(node.data()));
      if (!v.empty()) cfg.set(section + "." + trim(key), v);
    }
  }
  return cfg;
}

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::str(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double Config::real(const std::string& key, double fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double x = std::stod(*v, &used);
    if (trim(v->substr(used)).empty()) return x;
  } catch (const std::exception&) {
  }
  if (*v == "inf") return std::numeric_limits<double>::infinity();
  bad_value(key, *v, "a real number");
}

long long Config::integer(const std::string& key, long long fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  long long x = 0;
  const auto* end = v->data() + v->size();
  const auto res = std::from_chars(v->data(), end, x);
  if (res.ec != std::errc() || res.ptr != end) bad_value(key, *v, "an integer");
  return x;
}

std::uint64_t Config::seed(const std::string& key, std::uint64_t fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::uint64_t x = 0;
  const auto* end = v->data() + v->size();
  const auto res = std::from_chars(v->data(), end, x);
  if (res.ec != std::errc() || res.ptr != end) bad_value(key, *v, "a non-negative integer");
  return x;
}

bool Config::flag(const std::string& key, bool fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  bad_value(key, *v, "true|false");
}

std::vector<int> parse_int_range(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::vector<int> out;
  auto parse_one = [&](const std::string& s) {
    const std::string u = trim(s);
    int x = 0;
    const auto res = std::from_chars(u.data(), u.data() + u.size(), x);
    if (u.empty() || res.ec != std::errc() || res.ptr != u.data() + u.size())
      throw UsageError(what + ": invalid integer '" + u + "' in range '" + text + "'");
    return x;
  };
  if (const auto pos = t.find(".."); pos != std::string::npos) {
    const int a = parse_one(t.substr(0, pos));
    const int b = parse_one(t.substr(pos + 2));
    for (int k = a; k <= b; ++k) out.push_back(k);
  } else if (!t.empty()) {
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_one(item));
  }
  if (out.empty()) throw UsageError(what + ": empty range '" + text + "'");
  return out;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string u = trim(item);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(u, &used));
      if (!trim(u.substr(used)).empty()) throw std::invalid_argument(u);
    } catch (const std::exception&) {
      throw UsageError(what + ": invalid number '" + u + "'");
    }
  }
  return out;
}

std::vector<int> Config::int_range(const std::string& key) const {
  const auto v = get(key);
  if (!v) throw UsageError("missing required setting '" + key + "'");
  return parse_int_range(*v, "config key '" + key + "'");
}

std::vector<double> Config::real_list(const std::string& key) const {
  const auto v = get(key);
  if (!v) return {};
  return parse_real_list(*v, "config key '" + key + "'");
}

nlohmann::ordered_json Config::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : values_) j[k] = v;
  return j;
}

std::string Config::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [k, v] : values_) {
    for (unsigned char c : k + "=" + v + "\n") {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace phaselab::app
