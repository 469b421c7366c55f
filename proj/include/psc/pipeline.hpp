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

#ifndef PSC_PIPELINE_HPP_
#define PSC_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "psc/corpus_stats.hpp"
#include "psc/normalizer.hpp"
#include "psc/rules.hpp"

namespace psc {

// Which rules run, and in what order. Every listed rule is enabled.
struct PipelineConfig {
  std::vector<RuleId> rule_order;
  // Under first-match-wins the first applying rule consumes the token;
  // otherwise each rule rewrites the output of the previous one.
  bool first_match_wins = true;

  // direct, letter_repetition, colloquial_verb, plural, possessive_pronoun,
  // oon_to_aan, vav_to_ra.
  static PipelineConfig defaults();
  static PipelineConfig none() { return PipelineConfig{{}, true}; }

  // `rules` selects the enabled set, `order` the order. Either may be absent:
  // absent rules = those in `order` (or all); absent order = default order
  // restricted to `rules`. Throws UsageError on unknown or duplicate names,
  // or when `order` is not a permutation of `rules`.
  static PipelineConfig from_names(
      const std::optional<std::vector<std::string>>& rules,
      const std::optional<std::vector<std::string>>& order);

  bool enabled(RuleId rule) const;
};

struct Conversion {
  NormalizedText text;
  // Applied outcomes only, in token order.
  std::vector<RuleOutcome> outcomes;
};

Conversion convert_text(const NormalizedText& text, const RuleEngine& engine,
                        const PipelineConfig& config);

// Parallel over lines; outcome lists are dropped.
std::vector<NormalizedText> convert_lines(std::span<const NormalizedText> lines,
                                          const RuleEngine& engine,
                                          const PipelineConfig& config);

enum class Rounding { kTruncate, kHalfUp };

std::string_view rounding_name(Rounding rounding);
std::optional<Rounding> parse_rounding(std::string_view name);

// 100 * num / den in hundredths of a percent, rounded as requested
// (den == 0 gives 0). Exact integer arithmetic.
std::uint64_t percent_hundredths(std::uint64_t num, std::uint64_t den,
                                 Rounding rounding);
// "13.48"
std::string format_percent(std::uint64_t num, std::uint64_t den,
                           Rounding rounding);

struct ReportRow {
  std::string rule;  // rule_name(), or "all_rules"
  std::uint64_t ucw = 0;  // unique converted words
  std::uint64_t cw = 0;   // converted occurrences

  bool operator==(const ReportRow&) const = default;
};

// Rule coverage over a pure-slang table. Per-rule rows count words the rule
// converts in isolation; all_rules counts each word once if any enabled rule
// converts it.
struct ConversionReport {
  std::uint64_t unique_words = 0;
  std::uint64_t total_frequency = 0;
  std::vector<ReportRow> rows;
  ReportRow all_rules{"all_rules"};

  bool operator==(const ConversionReport&) const = default;
};

// Throws DataError unless `pure_slang` carries the pure_slang domain.
ConversionReport coverage_report(const TermFrequencyTable& pure_slang,
                                 const RuleEngine& engine,
                                 const PipelineConfig& config);

// Report JSON:
//   {"unique_words": N, "total_frequency": M, "rounding": "truncate",
//    "rows": [{"rule": "direct", "ucw": .., "ucw_pct": .., "cw": ..,
//              "cw_pct": ..}, ..., {"rule": "all_rules", ...}]}
// `annotate` adds a "notes" array describing known differences from the
// published reference table.
nlohmann::json report_to_json(const ConversionReport& report,
                              Rounding rounding, bool annotate = false);

namespace serial {

ConversionReport coverage_report(const TermFrequencyTable& pure_slang,
                                 const RuleEngine& engine,
                                 const PipelineConfig& config);

std::vector<NormalizedText> convert_lines(std::span<const NormalizedText> lines,
                                          const RuleEngine& engine,
                                          const PipelineConfig& config);

}  // namespace serial
}  // namespace psc

#endif  // PSC_PIPELINE_HPP_
