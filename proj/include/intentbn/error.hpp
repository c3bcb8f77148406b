// Copyright 2026 The intentbn Authors
//
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

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace intentbn {

/// Base of every exception thrown by the library. Carries a stable
/// machine-readable code and, where it makes sense, the offending path
/// (e.g. `contexts.weather` or `evidence.weather`).
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string message, std::string path = {})
      : std::runtime_error(std::move(message)),
        code_(std::move(code)),
        path_(std::move(path)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string code_;
  std::string path_;
};

/// Malformed or inconsistent evidence.
class EvidenceError : public Error {
 public:
  using Error::Error;
};

/// Bad argument to an inference-time query (unknown intention, partial
/// assignment, oversized enumeration, ...).
class QueryError : public Error {
 public:
  using Error::Error;
};

}  // namespace intentbn
