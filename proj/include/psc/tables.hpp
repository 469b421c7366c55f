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

#ifndef PSC_TABLES_HPP_
#define PSC_TABLES_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace psc::tables {

// Shipped data tables, compiled in byte-for-byte from data/*.tsv.
std::string_view unification_tsv();
std::string_view polysyllabic_tsv();
std::string_view lexicon_seed_tsv();
std::string_view irregular_stems_tsv();

struct TsvPair {
  std::string first;
  std::string second;
  std::size_t line = 0;
};

// Reads `first<TAB>second` lines. Blank lines and lines starting with '#' are
// skipped. Any other line must hold exactly one TAB and valid UTF-8; the first
// field must be non-empty, and so must the second unless `allow_empty_second`.
// Throws DataError naming `source` and the line number.
std::vector<TsvPair> parse_pairs(std::istream& in, const std::string& source,
                                 bool allow_empty_second = false);
std::vector<TsvPair> parse_pairs(std::string_view text,
                                 const std::string& source,
                                 bool allow_empty_second = false);

// Opens `path` and parses it; throws DataError if the file cannot be read.
std::vector<TsvPair> load_pairs(const std::string& path,
                                bool allow_empty_second = false);

}  // namespace psc::tables

#endif  // PSC_TABLES_HPP_
