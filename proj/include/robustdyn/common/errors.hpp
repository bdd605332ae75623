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

#include <stdexcept>
#include <string>

namespace robustdyn {

// Every error raised by the library derives from Error so callers can catch
// the whole family at once.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Insert of an existing edge, delete of a missing edge, unknown item ids.
class InvalidUpdate : public Error {
 public:
  using Error::Error;
};

// An exact oracle was asked to run past its size guard.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Effective resistance between vertices in different components.
class InfiniteResistance : public Error {
 public:
  using Error::Error;
};

// A sparsifier handle was maintained past its change budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// A robust wrapper phase ran out of queries and was not restarted.
class PhaseExhausted : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

namespace internal {

inline void Require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace internal
}  // namespace robustdyn
