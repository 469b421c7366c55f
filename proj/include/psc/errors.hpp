// Copyright 2026 The PSC Authors. All Rights Reserved.
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

#ifndef PSC_ERRORS_HPP_
#define PSC_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psc {

// Bad input data: malformed TSV, invalid UTF-8, inconsistent headers,
// insufficient examples. The CLI maps it to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}

  // Prefixes the message with "source:line: ".
  DataError(const std::string& source, std::size_t line,
            const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what) {
  }
};

// Caller misuse (invalid option values, contradictory configuration).
// The CLI maps it to exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psc

#endif  // PSC_ERRORS_HPP_
