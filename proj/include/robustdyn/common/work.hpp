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

namespace robustdyn {

// Abstract operation counts. Work is never measured in wall-clock time.
struct WorkCounters {
  std::uint64_t preprocess = 0;
  std::uint64_t update = 0;
  std::uint64_t query = 0;

  std::uint64_t total() const { return preprocess + update + query; }

  WorkCounters& operator+=(const WorkCounters& other) {
    preprocess += other.preprocess;
    update += other.update;
    query += other.query;
    return *this;
  }
  friend bool operator==(const WorkCounters&, const WorkCounters&) = default;
};

inline WorkCounters operator-(const WorkCounters& a, const WorkCounters& b) {
  return {a.preprocess - b.preprocess, a.update - b.update, a.query - b.query};
}

}  // namespace robustdyn
