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

#include "psc/sentiment.hpp"

namespace psc::serial {

EvalMetrics evaluate(const LinearModel& model,
                     std::span<const LabeledExample> test_set) {
  if (test_set.empty()) throw EmptyTestSet();
  Confusion confusion{};
  for (const auto& ex : test_set) {
    ++confusion[class_index(ex.label)][class_index(model.predict(ex.text))];
  }
  return metrics_from_confusion(confusion);
}

std::vector<LabeledExample> prepare(std::span<const LabeledExample> data,
                                    const Normalizer& normalizer,
                                    const RuleEngine* engine,
                                    const PipelineConfig& config) {
  std::vector<LabeledExample> out;
  out.reserve(data.size());
  for (const auto& ex : data) {
    NormalizedText text = normalizer.normalize(ex.text);
    if (engine) text = convert_text(text, *engine, config).text;
    out.push_back({std::move(text.content), ex.label});
  }
  return out;
}

}  // namespace psc::serial
