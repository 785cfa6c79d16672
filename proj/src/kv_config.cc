// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/kv_config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tinygait/error.h"

namespace tinygait {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

double ParseDouble(const std::string& text, const std::string& what) {
  const std::string t = Trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() ||
      !std::isfinite(v)) {
    throw DataError("invalid number for " + what + ": '" + text + "'");
  }
  return v;
}

KvConfig KvConfig::Parse(const std::string& text) {
  KvConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw DataError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = Trim(t.substr(0, eq));
    if (key.empty()) {
      throw DataError("line " + std::to_string(line_no) + ": empty key");
    }
    if (!cfg.values_.emplace(key, Trim(t.substr(eq + 1))).second) {
      throw DataError("duplicate key '" + key + "'");
    }
  }
  return cfg;
}

KvConfig KvConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

std::optional<std::string> KvConfig::Get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double KvConfig::GetDouble(const std::string& key) const {
  const auto v = Get(key);
  if (!v) throw DataError("missing key '" + key + "'");
  return ParseDouble(*v, key);
}

std::optional<double> KvConfig::GetOptionalDouble(const std::string& key) const {
  if (!Has(key)) return std::nullopt;
  return GetDouble(key);
}

}  // namespace tinygait
