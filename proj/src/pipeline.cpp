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

#include "psc/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <set>

#include "psc/errors.hpp"

namespace psc {
namespace {

std::vector<RuleId> parse_rule_list(const std::vector<std::string>& names,
                                    const char* flag) {
  std::vector<RuleId> rules;
  std::set<RuleId> seen;
  for (const auto& name : names) {
    auto rule = parse_rule(name);
    if (!rule) {
      throw UsageError(std::string(flag) + ": unknown rule '" + name + "'");
    }
    if (!seen.insert(*rule).second) {
      throw UsageError(std::string(flag) + ": rule '" + name +
                       "' listed twice");
    }
    rules.push_back(*rule);
  }
  return rules;
}

std::size_t rule_index(RuleId rule) { return static_cast<std::size_t>(rule); }

struct Tally {
  std::array<ReportRow, kAllRules.size()> rules{};
  ReportRow all{"all_rules"};

  void merge(const Tally& other) {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      rules[i].ucw += other.rules[i].ucw;
      rules[i].cw += other.rules[i].cw;
    }
    all.ucw += other.all.ucw;
    all.cw += other.all.cw;
  }
};

void tally_word(Tally& tally, const std::string& word, std::uint64_t count,
                const RuleEngine& engine, const PipelineConfig& config) {
  bool any = false;
  for (RuleId rule : config.rule_order) {
    if (engine.apply(rule, word).applied) {
      auto& row = tally.rules[rule_index(rule)];
      ++row.ucw;
      row.cw += count;
      any = true;
    }
  }
  if (any) {
    ++tally.all.ucw;
    tally.all.cw += count;
  }
}

ConversionReport finish(const Tally& tally, const TermFrequencyTable& table,
                        const PipelineConfig& config) {
  ConversionReport report;
  report.unique_words = table.unique_words();
  report.total_frequency = table.total_frequency();
  for (RuleId rule : kAllRules) {
    if (!config.enabled(rule)) continue;
    ReportRow row = tally.rules[rule_index(rule)];
    row.rule = std::string(rule_name(rule));
    report.rows.push_back(row);
  }
  report.all_rules = tally.all;
  return report;
}

void check_pure(const TermFrequencyTable& table) {
  if (table.domain() != Domain::kPureSlang) {
    throw DataError("coverage report: table has domain '" +
                    std::string(domain_name(table.domain())) +
                    "', expected 'pure_slang'");
  }
}

}  // namespace

PipelineConfig PipelineConfig::defaults() {
  return PipelineConfig{
      {RuleId::kDirect, RuleId::kLetterRepetition, RuleId::kColloquialVerb,
       RuleId::kPlural, RuleId::kPossessivePronoun, RuleId::kOonToAan,
       RuleId::kVavToRa},
      true};
}

PipelineConfig PipelineConfig::from_names(
    const std::optional<std::vector<std::string>>& rules,
    const std::optional<std::vector<std::string>>& order) {
  PipelineConfig config = defaults();
  if (order) {
    config.rule_order = parse_rule_list(*order, "--order");
    if (rules) {
      auto enabled = parse_rule_list(*rules, "--rules");
      auto a = enabled;
      auto b = config.rule_order;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        throw UsageError("--order must list exactly the rules in --rules");
      }
    }
  } else if (rules) {
    auto enabled = parse_rule_list(*rules, "--rules");
    std::erase_if(config.rule_order, [&](RuleId r) {
      return std::find(enabled.begin(), enabled.end(), r) == enabled.end();
    });
  }
  return config;
}

bool PipelineConfig::enabled(RuleId rule) const {
  return std::find(rule_order.begin(), rule_order.end(), rule) !=
         rule_order.end();
}

Conversion convert_text(const NormalizedText& text, const RuleEngine& engine,
                        const PipelineConfig& config) {
  Conversion result;
  auto& out = result.text.tokens;
  out.reserve(text.tokens.size());
  if (config.first_match_wins) {
    for (const auto& token : text.tokens) {
      bool consumed = false;
      for (RuleId rule : config.rule_order) {
        RuleOutcome outcome = engine.apply(rule, token);
        if (!outcome.applied) continue;
        out.insert(out.end(), outcome.output.begin(), outcome.output.end());
        result.outcomes.push_back(std::move(outcome));
        consumed = true;
        break;
      }
      if (!consumed) out.push_back(token);
    }
  } else {
    for (const auto& token : text.tokens) {
      std::vector<std::string> current{token};
      for (RuleId rule : config.rule_order) {
        std::vector<std::string> next;
        for (const auto& piece : current) {
          RuleOutcome outcome = engine.apply(rule, piece);
          next.insert(next.end(), outcome.output.begin(), outcome.output.end());
          if (outcome.applied) result.outcomes.push_back(std::move(outcome));
        }
        current = std::move(next);
      }
      out.insert(out.end(), current.begin(), current.end());
    }
  }
  result.text.content = join_tokens(out);
  return result;
}

std::vector<NormalizedText> convert_lines(std::span<const NormalizedText> lines,
                                          const RuleEngine& engine,
                                          const PipelineConfig& config) {
  std::vector<NormalizedText> out(lines.size());
  const auto n = static_cast<std::int64_t>(lines.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = convert_text(lines[k], engine, config).text;
  }
  return out;
}

std::string_view rounding_name(Rounding rounding) {
  return rounding == Rounding::kTruncate ? "truncate" : "half_up";
}

std::optional<Rounding> parse_rounding(std::string_view name) {
  if (name == "truncate") return Rounding::kTruncate;
  if (name == "half_up") return Rounding::kHalfUp;
  return std::nullopt;
}

std::uint64_t percent_hundredths(std::uint64_t num, std::uint64_t den,
                                 Rounding rounding) {
  if (den == 0) return 0;
  const unsigned __int128 scaled = static_cast<unsigned __int128>(num) * 10000;
  if (rounding == Rounding::kTruncate) {
    return static_cast<std::uint64_t>(scaled / den);
  }
  return static_cast<std::uint64_t>((2 * scaled + den) / (2 * static_cast<unsigned __int128>(den)));
}

std::string format_percent(std::uint64_t num, std::uint64_t den,
                           Rounding rounding) {
  const std::uint64_t h = percent_hundredths(num, den, rounding);
  std::string frac = std::to_string(h % 100);
  if (frac.size() < 2) frac.insert(0, 1, '0');
  return std::to_string(h / 100) + "." + frac;
}

ConversionReport coverage_report(const TermFrequencyTable& pure_slang,
                                 const RuleEngine& engine,
                                 const PipelineConfig& config) {
  check_pure(pure_slang);
  const std::vector<WordCount> words(pure_slang.entries().begin(),
                                     pure_slang.entries().end());
  const auto n = static_cast<std::int64_t>(words.size());
  const int threads = std::max(1, omp_get_max_threads());
  std::vector<Tally> shards(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    Tally& local = shards[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 512)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto& [word, count] = words[static_cast<std::size_t>(i)];
      tally_word(local, word, count, engine, config);
    }
  }
  Tally total;
  for (const auto& shard : shards) total.merge(shard);
  return finish(total, pure_slang, config);
}

nlohmann::json report_to_json(const ConversionReport& report,
                              Rounding rounding, bool annotate) {
  auto pct = [&](std::uint64_t num, std::uint64_t den) {
    return static_cast<double>(percent_hundredths(num, den, rounding)) / 100.0;
  };
  auto row_json = [&](const ReportRow& row) {
    return nlohmann::json{
        {"rule", row.rule},
        {"ucw", row.ucw},
        {"ucw_pct", pct(row.ucw, report.unique_words)},
        {"cw", row.cw},
        {"cw_pct", pct(row.cw, report.total_frequency)},
    };
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) rows.push_back(row_json(row));
  rows.push_back(row_json(report.all_rules));
  nlohmann::json out{
      {"unique_words", report.unique_words},
      {"total_frequency", report.total_frequency},
      {"rounding", std::string(rounding_name(rounding))},
      {"rows", std::move(rows)},
  };
  if (annotate) {
    out["notes"] = nlohmann::json::array({
        "vav_to_ra cw_pct is recomputed as 100*cw/total_frequency; the "
        "published reference table prints 0.043 for a count whose share is "
        "about 2.04%.",
        "all_rules counts each word once even when several rules convert it, "
        "so it can be smaller than the column sums.",
        "Percentages are cut to two decimals (truncate), which reproduces the "
        "published reference cells; use --rounding half_up for nearest.",
    });
  }
  return out;
}

}  // namespace psc
