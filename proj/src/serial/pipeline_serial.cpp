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

// Straight-line coverage report: one pass, one row per enabled rule.

#include "psc/errors.hpp"
#include "psc/pipeline.hpp"

namespace psc::serial {

ConversionReport coverage_report(const TermFrequencyTable& pure_slang,
                                 const RuleEngine& engine,
                                 const PipelineConfig& config) {
  if (pure_slang.domain() != Domain::kPureSlang) {
    throw DataError("coverage report: table has domain '" +
                    std::string(domain_name(pure_slang.domain())) +
                    "', expected 'pure_slang'");
  }
  ConversionReport report;
  report.unique_words = pure_slang.unique_words();
  report.total_frequency = pure_slang.total_frequency();
  for (RuleId rule : kAllRules) {
    if (!config.enabled(rule)) continue;
    ReportRow row{std::string(rule_name(rule))};
    for (const auto& [word, count] : pure_slang.entries()) {
      if (engine.apply(rule, word).applied) {
        ++row.ucw;
        row.cw += count;
      }
    }
    report.rows.push_back(row);
  }
  for (const auto& [word, count] : pure_slang.entries()) {
    for (RuleId rule : config.rule_order) {
      if (engine.apply(rule, word).applied) {
        ++report.all_rules.ucw;
        report.all_rules.cw += count;
        break;
      }
    }
  }
  return report;
}

std::vector<NormalizedText> convert_lines(std::span<const NormalizedText> lines,
                                          const RuleEngine& engine,
                                          const PipelineConfig& config) {
  std::vector<NormalizedText> out;
  out.reserve(lines.size());
  for (const auto& line : lines) {
    out.push_back(convert_text(line, engine, config).text);
  }
  return out;
}

}  // namespace psc::serial
