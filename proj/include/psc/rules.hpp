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

#ifndef PSC_RULES_HPP_
#define PSC_RULES_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psc/corpus_stats.hpp"
#include "psc/tables.hpp"

namespace psc {

// The seven slang-to-formal rule families.
enum class RuleId {
  kDirect,
  kVavToRa,
  kOonToAan,
  kPlural,
  kLetterRepetition,
  kColloquialVerb,
  kPossessivePronoun,
};

inline constexpr std::array<RuleId, 7> kAllRules = {
    RuleId::kDirect,           RuleId::kVavToRa,        RuleId::kOonToAan,
    RuleId::kPlural,           RuleId::kLetterRepetition,
    RuleId::kColloquialVerb,   RuleId::kPossessivePronoun,
};

// "direct", "vav_to_ra", "oon_to_aan", "plural", "letter_repetition",
// "colloquial_verb", "possessive_pronoun".
std::string_view rule_name(RuleId rule);
std::optional<RuleId> parse_rule(std::string_view name);

// One rule applied to one token. When `applied` is false, `output` is exactly
// {input}; when true, `output` differs from {input}.
struct RuleOutcome {
  std::string input;
  std::vector<std::string> output;
  RuleId rule = RuleId::kDirect;
  bool applied = false;

  static RuleOutcome unchanged(std::string_view word, RuleId rule);
  // Falls back to unchanged() if `output` equals {word}.
  static RuleOutcome converted(std::string_view word,
                               std::vector<std::string> output, RuleId rule);

  bool operator==(const RuleOutcome&) const = default;
};

// Ordered slang -> formal replacements. Keys are single tokens, unique, never
// mapped to themselves, and no replacement token is itself a key (so direct
// conversion reaches a fixed point in one pass).
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon from_pairs(const std::vector<tables::TsvPair>& pairs,
                            const std::string& source);
  static Lexicon builtin();

  // Replacement tokens, or nullptr on a miss.
  const std::vector<std::string>* lookup(std::string_view word) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::unordered_map<std::string, std::vector<std::string>, StringHash,
                     std::equal_to<>>
      index_;
};

// Accepts a candidate form iff the formal corpus saw it at least `min_count`
// times. The referenced table must outlive the validator.
class FormalValidator {
 public:
  explicit FormalValidator(const TermFrequencyTable& formal,
                           std::uint64_t min_count = 1);

  bool accepts(std::string_view word) const {
    return formal_->count(word) >= min_count_;
  }
  std::uint64_t min_count() const { return min_count_; }

 private:
  const TermFrequencyTable* formal_;
  std::uint64_t min_count_;
};

// Colloquial present stem -> formal present stem (خوا -> خواه).
class IrregularStems {
 public:
  IrregularStems() = default;

  static IrregularStems from_pairs(const std::vector<tables::TsvPair>& pairs,
                                   const std::string& source);
  static IrregularStems builtin();

  const std::string* find(std::string_view stem) const;
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<std::string, std::string, StringHash, std::equal_to<>>
      map_;
};

struct RuleOptions {
  // Suffix rules leave stems shorter than this (in letters) alone.
  std::size_t min_stem_letters = 2;
  // Convert a standalone «رو» token to «را».
  bool standalone_ro = false;
};

RuleOutcome apply_direct(std::string_view word, const Lexicon& lexicon);

// «خودمو» -> «خودم را», «اینجارو» -> «اینجا را».
RuleOutcome apply_vav_to_ra(std::string_view word,
                            const FormalValidator& validator,
                            const RuleOptions& options = {});

// «آقایون» -> «آقایان», «یکیشون» -> «یکیشان», «خیابونم» -> «خیابانم».
RuleOutcome apply_oon_to_aan(std::string_view word,
                             const FormalValidator& validator,
                             const RuleOptions& options = {});

// «دخترا» -> «دختر‌ها», «حرفای» -> «حرف‌های», «بهترینها» -> «بهترین‌ها».
RuleOutcome apply_plural(std::string_view word,
                         const FormalValidator& validator,
                         const RuleOptions& options = {});

// «خخخخ» -> «خ»; «عاالی» -> «عالی» only when the corpus prefers it.
RuleOutcome apply_letter_repetition(std::string_view word,
                                    const FormalValidator& validator);

// «میکنی» -> «می‌کنی», «نکنه» -> «نکند», «میخوان» -> «می‌خواهند».
RuleOutcome apply_colloquial_verb(std::string_view word,
                                  const FormalValidator& validator,
                                  const IrregularStems& stems,
                                  const RuleOptions& options = {});

// «هوام» -> «هوایم», «قیافش» -> «قیافه‌اش», «همسایمون» -> «همسایه‌مان».
RuleOutcome apply_possessive(std::string_view word,
                             const FormalValidator& validator,
                             const RuleOptions& options = {});

// Bundles the immutable rule resources. Cheap to copy; safe to share across
// threads.
class RuleEngine {
 public:
  RuleEngine(Lexicon lexicon, std::shared_ptr<const TermFrequencyTable> formal,
             IrregularStems stems = IrregularStems::builtin(),
             RuleOptions options = {}, std::uint64_t min_count = 1);

  RuleOutcome apply(RuleId rule, std::string_view word) const;

  const Lexicon& lexicon() const { return *lexicon_; }
  const FormalValidator& validator() const { return validator_; }
  const IrregularStems& stems() const { return *stems_; }
  const RuleOptions& options() const { return options_; }
  const TermFrequencyTable& formal() const { return *formal_; }

 private:
  std::shared_ptr<const Lexicon> lexicon_;
  std::shared_ptr<const TermFrequencyTable> formal_;
  std::shared_ptr<const IrregularStems> stems_;
  RuleOptions options_;
  FormalValidator validator_;
};

}  // namespace psc

#endif  // PSC_RULES_HPP_
