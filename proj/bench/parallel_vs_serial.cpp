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

// Parallel kernels against their serial references on synthetic input.
// Each pair runs on identical data; use --threads via OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <memory>
#include <string>
#include <vector>

#include "psc/corpus_stats.hpp"
#include "psc/normalizer.hpp"
#include "psc/pipeline.hpp"
#include "psc/random.hpp"
#include "psc/rules.hpp"
#include "psc/sentiment.hpp"

namespace psc {
namespace {

const std::vector<std::string>& Words() {
  static const std::vector<std::string> words = {
      "یه", "آقایون", "خودمو", "دخترا", "خخخخ", "میکنی", "هوام", "کتاب",
      "خیلی", "خوبه", "عالی", "بد", "جلسه", "امروز", "واسه", "اینجارو",
      "يك", "كتاب", "😂", "@user", "#تست", "۱۲۳", "حرفای", "قیافش"};
  return words;
}

std::vector<std::string> Lines(std::size_t n) {
  Rng rng(1);
  std::vector<std::string> lines(n);
  for (auto& line : lines) {
    const auto len = 4 + rng.below(12);
    for (std::size_t k = 0; k < len; ++k) {
      if (k) line += ' ';
      line += Words()[rng.below(Words().size())];
    }
  }
  return lines;
}

const std::vector<std::string>& NormalizedLines() {
  static const std::vector<std::string> lines = [] {
    const Normalizer normalizer;
    std::vector<std::string> out;
    for (const auto& t : normalize_lines(normalizer, Lines(20000))) {
      out.push_back(t.content);
    }
    return out;
  }();
  return lines;
}

RuleEngine Engine() {
  std::vector<std::string> formal = {"کتاب", "خودم", "دختر", "هوا", "اینجا",
                                     "خوب", "آقایان", "حرف", "قیافه"};
  return RuleEngine(Lexicon::builtin(), std::make_shared<TermFrequencyTable>(
                                            table_from_words(formal)));
}

void BM_NormalizeLines(benchmark::State& state) {
  const auto lines = Lines(20000);
  const Normalizer normalizer;
  for (auto _ : state) {
    benchmark::DoNotOptimize(state.range(0) ? normalize_lines(normalizer, lines)
                                            : serial::normalize_lines(normalizer, lines));
  }
  state.SetItemsProcessed(state.iterations() * lines.size());
}

void BM_BuildTf(benchmark::State& state) {
  const auto& lines = NormalizedLines();
  for (auto _ : state) {
    benchmark::DoNotOptimize(state.range(0)
                                 ? build_tf(lines, Domain::kSlang)
                                 : serial::build_tf(lines, Domain::kSlang));
  }
  state.SetItemsProcessed(state.iterations() * lines.size());
}

void BM_CoverageReport(benchmark::State& state) {
  TermFrequencyTable pure(Domain::kPureSlang);
  Rng rng(2);
  for (int i = 0; i < 20000; ++i) {
    pure.add(Words()[rng.below(Words().size())] + std::to_string(i % 7 ? i : 0),
             1 + rng.below(1000));
  }
  const RuleEngine engine = Engine();
  const auto config = PipelineConfig::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        state.range(0) ? coverage_report(pure, engine, config)
                       : serial::coverage_report(pure, engine, config));
  }
  state.SetItemsProcessed(state.iterations() * pure.unique_words());
}

std::vector<LabeledExample> Examples() {
  std::vector<LabeledExample> data;
  Rng rng(3);
  for (const auto& line : NormalizedLines()) {
    data.push_back({line, kAllSentiments[rng.below(3)]});
  }
  return data;
}

void BM_Prepare(benchmark::State& state) {
  const auto data = Examples();
  const Normalizer normalizer;
  const RuleEngine engine = Engine();
  const auto config = PipelineConfig::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        state.range(0) ? prepare(data, normalizer, &engine, config)
                       : serial::prepare(data, normalizer, &engine, config));
  }
  state.SetItemsProcessed(state.iterations() * data.size());
}

void BM_Evaluate(benchmark::State& state) {
  const auto data = Examples();
  TrainParams params;
  params.hash_bits = 16;
  params.epochs = 1;
  const LinearModel model = train(data, params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(state.range(0) ? evaluate(model, data)
                                            : serial::evaluate(model, data));
  }
  state.SetItemsProcessed(state.iterations() * data.size());
}

// Argument 0 = serial reference, 1 = parallel kernel.
BENCHMARK(BM_NormalizeLines)->ArgName("parallel")->Arg(0)->Arg(1)->UseRealTime();
BENCHMARK(BM_BuildTf)->ArgName("parallel")->Arg(0)->Arg(1)->UseRealTime();
BENCHMARK(BM_CoverageReport)->ArgName("parallel")->Arg(0)->Arg(1)->UseRealTime();
BENCHMARK(BM_Prepare)->ArgName("parallel")->Arg(0)->Arg(1)->UseRealTime();
BENCHMARK(BM_Evaluate)->ArgName("parallel")->Arg(0)->Arg(1)->UseRealTime();

}  // namespace
}  // namespace psc

BENCHMARK_MAIN();
