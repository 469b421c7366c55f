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

// Serial reference kernels, kept for tests and benchmarks.

#include "psc/corpus_stats.hpp"
#include "psc/normalizer.hpp"

namespace psc::serial {

TermFrequencyTable build_tf(std::span<const std::string> lines, Domain domain) {
  TermFrequencyTable table(domain);
  for (const auto& line : lines) {
    for (const auto& token : tokenize(line)) table.add(token);
  }
  return table;
}

std::vector<NormalizedText> normalize_lines(const Normalizer& normalizer,
                                            std::span<const std::string> lines) {
  std::vector<NormalizedText> out;
  out.reserve(lines.size());
  for (const auto& line : lines) out.push_back(normalizer.normalize(line));
  return out;
}

}  // namespace psc::serial
