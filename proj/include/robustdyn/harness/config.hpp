// Copyright 2026 The robustdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "robustdyn/common/errors.hpp"

namespace robustdyn::harness {

// Flat `key = value` configuration. '#' starts a comment; later keys
// override earlier ones. Reads are recorded so unused keys can be reported.
class Config {
 public:
  static Config Parse(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      const auto eq = line.find('=');
      const std::string key = Trim(line.substr(0, eq));
      if (eq == std::string::npos) {
        if (!key.empty()) {
          throw InvalidArgument("config line " + std::to_string(number) + ": expected key = value");
        }
        continue;
      }
      if (key.empty()) throw InvalidArgument("config line " + std::to_string(number) + ": empty key");
      c.values_[key] = Trim(line.substr(eq + 1));
    }
    return c;
  }

  static Config Load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return Parse(ss.str());
  }

  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  void Set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string GetString(const std::string& key, const std::string& fallback) const {
    used_.insert(key);
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double GetDouble(const std::string& key, double fallback) const {
    if (!Has(key)) {
      used_.insert(key);
      return fallback;
    }
    const std::string v = GetString(key, "");
    try {
      std::size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("config key " + key + ": not a number: " + v);
  }

  std::uint64_t GetUint(const std::string& key, std::uint64_t fallback) const {
    if (!Has(key)) {
      used_.insert(key);
      return fallback;
    }
    const std::string v = GetString(key, "");
    try {
      std::size_t pos = 0;
      const auto u = std::stoull(v, &pos);
      if (pos == v.size() && v.find('-') == std::string::npos) return u;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("config key " + key + ": not an unsigned integer: " + v);
  }

  bool GetBool(const std::string& key, bool fallback) const {
    if (!Has(key)) {
      used_.insert(key);
      return fallback;
    }
    const std::string v = GetString(key, "");
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw InvalidArgument("config key " + key + ": not a boolean: " + v);
  }

  std::vector<std::string> UnusedKeys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) {
      if (!used_.count(k)) out.push_back(k);
    }
    return out;
  }

 private:
  static std::string Trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

}  // namespace robustdyn::harness
