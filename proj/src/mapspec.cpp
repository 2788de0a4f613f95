// Copyright 2026 The modelock Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modelock/mapspec.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "modelock/error.hpp"

namespace modelock {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Whitespace split that keeps bracketed and parenthesized groups together.
std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth < 0) throw Error(Errc::parse_error, "unbalanced brackets in map spec");
    if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw Error(Errc::parse_error, "unbalanced brackets in map spec");
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<Expr> parse_array(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    return {Expr::parse(s)};
  }
  s = s.substr(1, s.size() - 2);
  std::vector<Expr> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(Expr::parse(trim(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(Expr::parse(trim(cur)));
  return out;
}

CircleLift build(std::map<std::string, std::string> kv) {
  auto take = [&](std::initializer_list<const char*> names) -> std::optional<std::string> {
    for (const char* n : names) {
      auto it = kv.find(n);
      if (it != kv.end()) {
        std::string v = it->second;
        kv.erase(it);
        return v;
      }
    }
    return std::nullopt;
  };
  auto need = [&](std::initializer_list<const char*> names) {
    auto v = take(names);
    if (!v) throw Error(Errc::parse_error, std::string("map spec is missing '") + *names.begin() + "'");
    return *v;
  };

  const auto kind = take({"kind"});
  if (!kind) throw Error(Errc::parse_error, "map spec has no kind");
  CircleLift lift = [&] {
    if (*kind == "standard") return CircleLift::standard(Expr::parse(need({"a"})));
    if (*kind == "rotation") return CircleLift::rotation(Expr::parse(need({"theta"})));
    if (*kind == "conjrot") {
      Expr theta = Expr::parse(need({"theta"}));
      return CircleLift::conjugated_rotation(std::move(theta), Expr::parse(need({"eps", "epsilon"})));
    }
    if (*kind == "trigpoly") {
      const auto c0 = take({"c0"});
      const auto a = take({"a"});
      const auto b = take({"b"});
      return CircleLift::trig_poly(Expr::parse(c0.value_or("0")), a ? parse_array(*a) : std::vector<Expr>{},
                                   b ? parse_array(*b) : std::vector<Expr>{});
    }
    throw Error(Errc::parse_error, "unknown map kind '" + *kind + "'");
  }();
  if (!kv.empty()) throw Error(Errc::parse_error, "unknown map key '" + kv.begin()->first + "'");
  return lift;
}

}  // namespace

CircleLift parse_map_spec(std::string_view text) {
  std::map<std::string, std::string> kv;
  const auto tokens = tokenize(text);
  for (size_t i = 0; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      if (i != 0) throw Error(Errc::parse_error, "expected key=value, got '" + tokens[i] + "'");
      kv["kind"] = tokens[i];
      continue;
    }
    const std::string key = tokens[i].substr(0, eq);
    if (kv.contains(key)) throw Error(Errc::parse_error, "duplicate map key '" + key + "'");
    kv[key] = tokens[i].substr(eq + 1);
  }
  return build(std::move(kv));
}

CircleLift load_map_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config_error, "cannot read map file " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::parse_error, path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (kv.contains(key)) throw Error(Errc::parse_error, "duplicate map key '" + key + "'");
    kv[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return build(std::move(kv));
}

}  // namespace modelock
