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

#ifndef PSC_CORPUS_STATS_HPP_
#define PSC_CORPUS_STATS_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace psc {

enum class Domain { kFormal, kSlang, kPureSlang };

std::string_view domain_name(Domain domain);
std::optional<Domain> parse_domain(std::string_view name);

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

using WordCounts =
    std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>>;

using WordCount = std::pair<std::string, std::uint64_t>;

// Word -> occurrence count for one corpus domain. unique_words() and
// total_frequency() are kept in step with the entries on every mutation.
class TermFrequencyTable {
 public:
  explicit TermFrequencyTable(Domain domain = Domain::kFormal)
      : domain_(domain) {}

  Domain domain() const { return domain_; }
  void set_domain(Domain domain) { domain_ = domain; }

  // Adds `n` occurrences. Empty words are ignored; n == 0 is a no-op. Throws
  // DataError if the 64-bit total would overflow.
  void add(std::string_view word, std::uint64_t n = 1);
  void merge(const TermFrequencyTable& other);

  std::uint64_t count(std::string_view word) const;
  bool contains(std::string_view word) const { return count(word) != 0; }

  std::uint64_t unique_words() const { return counts_.size(); }
  std::uint64_t total_frequency() const { return total_; }
  const WordCounts& entries() const { return counts_; }

  bool operator==(const TermFrequencyTable& other) const {
    return domain_ == other.domain_ && total_ == other.total_ &&
           counts_ == other.counts_;
  }

 private:
  Domain domain_;
  WordCounts counts_;
  std::uint64_t total_ = 0;
};

// Ratio used to decide whether a word is "pure" slang. Held as an exact
// fraction so the boundary comparison is not subject to rounding.
struct PurityCriterion {
  std::uint64_t numerator = 5;
  std::uint64_t denominator = 1;

  // Accepts "5", "5.5" or "11/2". Throws UsageError unless the value is > 0.
  static PurityCriterion parse(std::string_view text);
  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

// Counts every space-separated token of every (normalized) line. Lines are
// sharded across OpenMP threads into private tables and merged afterwards;
// the result does not depend on the thread count.
TermFrequencyTable build_tf(std::span<const std::string> lines, Domain domain);

// w is kept iff w is in `slang` and either absent from `formal` or
// slang[w] > ratio * formal[w] (strictly). Kept words carry their slang
// counts. Throws DataError if the inputs carry the wrong domains.
TermFrequencyTable extract_pure_slang(const TermFrequencyTable& slang,
                                      const TermFrequencyTable& formal,
                                      const PurityCriterion& criterion = {});

// Entries ordered by count descending, then by word (byte order).
std::vector<WordCount> top_k(const TermFrequencyTable& table, std::size_t k);
std::vector<WordCount> sorted_entries(const TermFrequencyTable& table);

// TSV persistence:
//   #domain<TAB>slang
//   #unique_words<TAB>N<TAB>total_frequency<TAB>M
//   word<TAB>count          (in top_k order)
void write_tsv(std::ostream& out, const TermFrequencyTable& table);
TermFrequencyTable read_tsv(std::istream& in, const std::string& source);
TermFrequencyTable load_tsv(const std::string& path);

// Builds a formal-domain table from a plain word list (count 1 each unless
// repeated). Handy for validator fixtures.
TermFrequencyTable table_from_words(std::span<const std::string> words,
                                    Domain domain = Domain::kFormal);

namespace serial {

// Single-threaded reference for build_tf.
TermFrequencyTable build_tf(std::span<const std::string> lines, Domain domain);

}  // namespace serial
}  // namespace psc

#endif  // PSC_CORPUS_STATS_HPP_
