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

#include "psc/corpus_stats.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "psc/errors.hpp"
#include "psc/utf8.hpp"

namespace psc {
namespace {

void count_line(TermFrequencyTable& table, std::string_view line) {
  std::size_t pos = 0;
  while (pos < line.size()) {
    auto end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    if (end > pos) table.add(line.substr(pos, end - pos));
    pos = end + 1;
  }
}

bool by_count_then_word(const WordCount& a, const WordCount& b) {
  if (a.second != b.second) return a.second > b.second;
  return a.first < b.first;
}

std::uint64_t parse_u64(std::string_view text, const std::string& source,
                        std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw DataError(source, line,
                    std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  for (;;) {
    auto tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

}  // namespace

std::string_view domain_name(Domain domain) {
  switch (domain) {
    case Domain::kFormal:
      return "formal";
    case Domain::kSlang:
      return "slang";
    case Domain::kPureSlang:
      return "pure_slang";
  }
  return "formal";
}

std::optional<Domain> parse_domain(std::string_view name) {
  if (name == "formal") return Domain::kFormal;
  if (name == "slang") return Domain::kSlang;
  if (name == "pure_slang") return Domain::kPureSlang;
  return std::nullopt;
}

void TermFrequencyTable::add(std::string_view word, std::uint64_t n) {
  if (word.empty() || n == 0) return;
  std::uint64_t total = 0;
  if (__builtin_add_overflow(total_, n, &total)) {
    throw DataError("term frequency total overflows 64 bits");
  }
  auto it = counts_.find(word);
  if (it == counts_.end()) {
    counts_.emplace(std::string(word), n);
  } else {
    it->second += n;
  }
  total_ = total;
}

void TermFrequencyTable::merge(const TermFrequencyTable& other) {
  for (const auto& [word, n] : other.counts_) add(word, n);
}

std::uint64_t TermFrequencyTable::count(std::string_view word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

PurityCriterion PurityCriterion::parse(std::string_view text) {
  auto fail = [&]() {
    return UsageError("ratio coefficient must be a positive number, got '" +
                      std::string(text) + "'");
  };
  auto parse_digits = [&](std::string_view digits) {
    std::uint64_t v = 0;
    const auto* end = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(digits.data(), end, v);
    if (digits.empty() || ec != std::errc() || ptr != end) throw fail();
    return v;
  };
  PurityCriterion c;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    c.numerator = parse_digits(text.substr(0, slash));
    c.denominator = parse_digits(text.substr(slash + 1));
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 9) throw fail();
    std::uint64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    c.numerator = (whole.empty() ? 0 : parse_digits(whole)) * scale +
                  parse_digits(frac);
    c.denominator = scale;
  } else {
    c.numerator = parse_digits(text);
    c.denominator = 1;
  }
  if (c.numerator == 0 || c.denominator == 0) throw fail();
  return c;
}

TermFrequencyTable build_tf(std::span<const std::string> lines, Domain domain) {
  const auto n = static_cast<std::int64_t>(lines.size());
  const int threads = std::max(1, omp_get_max_threads());
  std::vector<TermFrequencyTable> shards(static_cast<std::size_t>(threads),
                                         TermFrequencyTable(domain));
#pragma omp parallel num_threads(threads)
  {
    auto& local = shards[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      count_line(local, lines[static_cast<std::size_t>(i)]);
    }
  }
  // Merge the largest shard into first to minimise rehashing.
  auto largest = std::max_element(
      shards.begin(), shards.end(), [](const auto& a, const auto& b) {
        return a.unique_words() < b.unique_words();
      });
  TermFrequencyTable result = std::move(*largest);
  for (auto it = shards.begin(); it != shards.end(); ++it) {
    if (it != largest) result.merge(*it);
  }
  result.set_domain(domain);
  return result;
}

TermFrequencyTable extract_pure_slang(const TermFrequencyTable& slang,
                                      const TermFrequencyTable& formal,
                                      const PurityCriterion& criterion) {
  if (slang.domain() != Domain::kSlang) {
    throw DataError("pure-slang extraction: slang table has domain '" +
                    std::string(domain_name(slang.domain())) +
                    "', expected 'slang'");
  }
  if (formal.domain() != Domain::kFormal) {
    throw DataError("pure-slang extraction: formal table has domain '" +
                    std::string(domain_name(formal.domain())) +
                    "', expected 'formal'");
  }
  if (criterion.numerator == 0 || criterion.denominator == 0) {
    throw UsageError("ratio coefficient must be positive");
  }
  TermFrequencyTable pure(Domain::kPureSlang);
  for (const auto& [word, slang_count] : slang.entries()) {
    const std::uint64_t formal_count = formal.count(word);
    // slang > (num / den) * formal  <=>  slang * den > num * formal
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(slang_count) * criterion.denominator;
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(formal_count) * criterion.numerator;
    if (formal_count == 0 || lhs > rhs) pure.add(word, slang_count);
  }
  return pure;
}

std::vector<WordCount> sorted_entries(const TermFrequencyTable& table) {
  std::vector<WordCount> out(table.entries().begin(), table.entries().end());
  std::sort(out.begin(), out.end(), by_count_then_word);
  return out;
}

std::vector<WordCount> top_k(const TermFrequencyTable& table, std::size_t k) {
  std::vector<WordCount> out(table.entries().begin(), table.entries().end());
  k = std::min(k, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k),
                    out.end(), by_count_then_word);
  out.resize(k);
  return out;
}

void write_tsv(std::ostream& out, const TermFrequencyTable& table) {
  out << "#domain\t" << domain_name(table.domain()) << '\n'
      << "#unique_words\t" << table.unique_words() << "\ttotal_frequency\t"
      << table.total_frequency() << '\n';
  for (const auto& [word, n] : sorted_entries(table)) {
    out << word << '\t' << n << '\n';
  }
}

TermFrequencyTable read_tsv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source, 1, "missing header");
  auto head = split_tabs(line);
  if (head.size() != 2 || head[0] != "#domain") {
    throw DataError(source, 1, "expected '#domain<TAB>NAME' header");
  }
  const auto domain = parse_domain(head[1]);
  if (!domain) {
    throw DataError(source, 1, "unknown domain '" + std::string(head[1]) + "'");
  }
  if (!std::getline(in, line)) throw DataError(source, 2, "missing header");
  auto sizes = split_tabs(line);
  if (sizes.size() != 4 || sizes[0] != "#unique_words" ||
      sizes[2] != "total_frequency") {
    throw DataError(source, 2,
                    "expected '#unique_words<TAB>N<TAB>total_frequency<TAB>M'");
  }
  const auto unique = parse_u64(sizes[1], source, 2, "unique_words");
  const auto total = parse_u64(sizes[3], source, 2, "total_frequency");

  TermFrequencyTable table(*domain);
  std::size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2) {
      throw DataError(source, lineno, "expected word<TAB>count");
    }
    if (fields[0].empty() || fields[0].find(' ') != std::string_view::npos) {
      throw DataError(source, lineno, "word must be a non-empty token");
    }
    if (!utf8::is_valid(fields[0])) {
      throw DataError(source, lineno, "invalid UTF-8");
    }
    const auto n = parse_u64(fields[1], source, lineno, "count");
    if (n == 0) throw DataError(source, lineno, "count must be >= 1");
    if (table.contains(fields[0])) {
      throw DataError(source, lineno,
                      "duplicate word '" + std::string(fields[0]) + "'");
    }
    table.add(fields[0], n);
  }
  if (table.unique_words() != unique || table.total_frequency() != total) {
    throw DataError(source, 2,
                    "header says " + std::to_string(unique) + " unique / " +
                        std::to_string(total) + " total, entries sum to " +
                        std::to_string(table.unique_words()) + " / " +
                        std::to_string(table.total_frequency()));
  }
  return table;
}

TermFrequencyTable load_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  return read_tsv(in, path);
}

TermFrequencyTable table_from_words(std::span<const std::string> words,
                                    Domain domain) {
  TermFrequencyTable table(domain);
  for (const auto& w : words) table.add(w);
  return table;
}

}  // namespace psc
