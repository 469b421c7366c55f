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

#include "psc/tables.hpp"

#include <fstream>
#include <sstream>

#include "psc/errors.hpp"
#include "psc/utf8.hpp"

namespace psc::tables {

std::vector<TsvPair> parse_pairs(std::istream& in, const std::string& source,
                                 bool allow_empty_second) {
  std::vector<TsvPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!utf8::is_valid(line)) {
      throw DataError(source, lineno, "invalid UTF-8");
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(source, lineno, "expected two TAB-separated fields");
    }
    if (line.find('\t', tab + 1) != std::string::npos) {
      throw DataError(source, lineno, "too many TAB-separated fields");
    }
    TsvPair pair{line.substr(0, tab), line.substr(tab + 1), lineno};
    if (pair.first.empty()) {
      throw DataError(source, lineno, "empty first field");
    }
    if (pair.second.empty() && !allow_empty_second) {
      throw DataError(source, lineno, "empty second field");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<TsvPair> parse_pairs(std::string_view text,
                                 const std::string& source,
                                 bool allow_empty_second) {
  std::istringstream in{std::string(text)};
  return parse_pairs(in, source, allow_empty_second);
}

std::vector<TsvPair> load_pairs(const std::string& path,
                                bool allow_empty_second) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  return parse_pairs(in, path, allow_empty_second);
}

}  // namespace psc::tables
