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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "psc/random.hpp"
#include "test_support.hpp"

namespace psc {
namespace {

using S = Sentiment;

std::vector<LabeledExample> Cycle(std::size_t n) {
  std::vector<LabeledExample> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"t" + std::to_string(i), kAllSentiments[i % kNumClasses]});
  }
  return out;
}

std::size_t CountLabel(const std::vector<LabeledExample>& v, S label) {
  return static_cast<std::size_t>(std::count_if(
      v.begin(), v.end(), [&](const auto& ex) { return ex.label == label; }));
}

TEST(LabeledTsvTest, TwoAndFourFieldRows) {
  std::istringstream in(
      "positive\tعالی بود\n"
      "\n"
      "negative\tneutral\tnegative\tبد بود\n"
      "positive\tneutral\tnegative\tنمی‌دانم\n"
      "neutral\tneutral\tneutral\tخبر\r\n");
  const auto r = read_labeled(in, "x.tsv");
  ASSERT_EQ(r.examples.size(), 3u);
  EXPECT_EQ(r.examples[0], (LabeledExample{"عالی بود", S::kPositive}));
  EXPECT_EQ(r.examples[1], (LabeledExample{"بد بود", S::kNegative}));
  EXPECT_EQ(r.examples[2], (LabeledExample{"خبر", S::kNeutral}));
  EXPECT_EQ(r.dropped_no_majority, 1u);
}

TEST(LabeledTsvTest, RejectsMalformedRows) {
  for (const char* bad : {"happy\tمتن\n", "positive\ta\tb\n", "positive\n",
                          "Positive\tمتن\n", "positive\t\xff\n"}) {
    std::istringstream in(std::string("neutral\tok\n") + bad);
    try {
      read_labeled(in, "d.tsv");
      ADD_FAILURE() << bad;
    } catch (const DataError& e) {
      EXPECT_NE(std::string(e.what()).find("d.tsv:2"), std::string::npos)
          << e.what();
    }
  }
}

TEST(LabeledTsvTest, WriteReadRoundTrip) {
  const auto data = Cycle(10);
  std::ostringstream out;
  write_labeled(out, data);
  std::istringstream in(out.str());
  EXPECT_EQ(read_labeled(in, "rt").examples, data);
  const std::vector<LabeledExample> tabbed = {{"a\tb", S::kNeutral}};
  std::ostringstream sink;
  EXPECT_THROW(write_labeled(sink, tabbed), DataError);
}

TEST(RngTest, ShuffleMatchesTextbookFisherYates) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 100u}) {
      std::vector<std::size_t> a(n);
      std::iota(a.begin(), a.end(), std::size_t{0});
      Rng rng(seed);
      rng.shuffle(std::span<std::size_t>(a));
      ASSERT_EQ(a, testing::fisher_yates_oracle(n, seed)) << n << " " << seed;
    }
  }
}

TEST(BalanceTest, NegativeDrawMatchesOracle) {
  // Nine examples, three per class; negatives sit at indices 0, 3, 6.
  const auto data = Cycle(9);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto out = balance(data, 2, seed);
    ASSERT_EQ(out.size(), 6u);
    for (S s : kAllSentiments) EXPECT_EQ(CountLabel(out, s), 2u);
    const auto perm = testing::fisher_yates_oracle(3, seed);
    std::set<std::string> expected = {data[perm[0] * 3].text,
                                      data[perm[1] * 3].text};
    std::set<std::string> got;
    for (const auto& ex : out) {
      if (ex.label == S::kNegative) got.insert(ex.text);
    }
    EXPECT_EQ(got, expected);
    // Input order is kept.
    for (std::size_t i = 1; i < out.size(); ++i) {
      EXPECT_LT(std::stoi(out[i - 1].text.substr(1)),
                std::stoi(out[i].text.substr(1)));
    }
    EXPECT_EQ(out, balance(data, 2, seed));
  }
}

TEST(BalanceTest, InsufficientClassNamesTheLabel) {
  auto data = Cycle(9);
  data.pop_back();  // drops a positive
  try {
    balance(data, 3, 1);
    FAIL();
  } catch (const InsufficientClass& e) {
    EXPECT_EQ(e.label, S::kPositive);
    EXPECT_EQ(e.have, 2u);
    EXPECT_EQ(e.need, 3u);
  }
  EXPECT_TRUE(balance(data, 0, 1).empty());
}

TEST(SplitTest, BalancedCorpusSizes) {
  const auto parts = split(Cycle(45000), SplitRatios{}, 7);
  EXPECT_EQ(parts.train.size(), 31500u);
  EXPECT_EQ(parts.validation.size(), 6750u);
  EXPECT_EQ(parts.test.size(), 6750u);
  for (S s : kAllSentiments) {
    EXPECT_EQ(CountLabel(parts.train, s), 10500u);
    EXPECT_EQ(CountLabel(parts.validation, s), 2250u);
    EXPECT_EQ(CountLabel(parts.test, s), 2250u);
  }
}

TEST(SplitTest, PartitionsAreDisjointAndStratified) {
  std::mt19937_64 gen(5);
  for (std::size_t n = 0; n <= 60; ++n) {
    std::vector<LabeledExample> data;
    for (std::size_t i = 0; i < n; ++i) {
      data.push_back({"x" + std::to_string(i), kAllSentiments[gen() % 3]});
    }
    const auto parts = split(data, SplitRatios{}, n);
    const std::size_t t = static_cast<std::size_t>(std::llround(0.7 * n));
    const std::size_t v = static_cast<std::size_t>(std::llround(0.15 * n));
    // Per-class floor/ceil rounding can miss the totals by at most one each.
    EXPECT_LE(std::max(parts.train.size(), t) - std::min(parts.train.size(), t), 1u);
    EXPECT_LE(std::max(parts.validation.size(), v) -
                  std::min(parts.validation.size(), v), 1u);
    std::multiset<std::string> all;
    for (const auto* part : {&parts.train, &parts.validation, &parts.test}) {
      for (const auto& ex : *part) all.insert(ex.text);
    }
    ASSERT_EQ(all.size(), n);
    ASSERT_EQ(std::set<std::string>(all.begin(), all.end()).size(), n);
    for (S s : kAllSentiments) {
      const double size = static_cast<double>(CountLabel(data, s));
      EXPECT_LE(std::abs(static_cast<double>(CountLabel(parts.train, s)) -
                         0.7 * size), 1.0);
      EXPECT_LE(std::abs(static_cast<double>(CountLabel(parts.test, s)) -
                         0.15 * size), 2.0);
    }
  }
}

TEST(SplitTest, ExactTotalsWhenReachable) {
  const auto parts = split(Cycle(20), SplitRatios{}, 3);
  EXPECT_EQ(parts.train.size(), 14u);
  EXPECT_EQ(parts.validation.size(), 3u);
  EXPECT_EQ(parts.test.size(), 3u);
}

TEST(SplitTest, DeterministicAndSeedSensitive) {
  const auto data = Cycle(300);
  const auto a = split(data, SplitRatios{}, 11);
  const auto b = split(data, SplitRatios{}, 11);
  const auto c = split(data, SplitRatios{}, 12);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  EXPECT_NE(a.train, c.train);
}

TEST(SplitTest, RejectsBadRatios) {
  const auto data = Cycle(10);
  EXPECT_THROW(split(data, SplitRatios{0.7, 0.2, 0.2}, 1), BadRatios);
  EXPECT_THROW(split(data, SplitRatios{1.1, -0.05, -0.05}, 1), BadRatios);
  EXPECT_THROW(split(data, SplitRatios{NAN, 0.5, 0.5}, 1), BadRatios);
  EXPECT_NO_THROW(split(data, SplitRatios{1.0, 0.0, 0.0}, 1));
}

TEST(FeatureHasherTest, NormalizedSortedAndStable) {
  const FeatureHasher h(12);
  const auto x = h.features("خیلی خوب بود خیلی");
  ASSERT_FALSE(x.empty());
  double norm = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_LT(x[i].first, h.dimension());
    if (i) EXPECT_LT(x[i - 1].first, x[i].first);
    norm += x[i].second * x[i].second;
  }
  EXPECT_NEAR(norm, 1.0, 1e-12);
  EXPECT_EQ(x, h.features("  خیلی\tخوب بود\nخیلی "));
  EXPECT_TRUE(h.features("").empty());
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

std::vector<LabeledExample> Separable() {
  return {{"عالی عالی", S::kPositive}, {"خوب قشنگ", S::kPositive},
          {"بد زشت", S::kNegative},    {"افتضاح بد", S::kNegative},
          {"جلسه خبر", S::kNeutral},   {"ساعت برنامه", S::kNeutral}};
}

TEST(TrainTest, FitsSeparableToyData) {
  TrainParams params;
  params.hash_bits = 10;
  params.epochs = 30;
  std::vector<double> history;
  const auto data = Separable();
  const auto model = train(data, params, &history);
  ASSERT_EQ(history.size(), params.epochs);
  for (std::size_t i = 1; i < history.size(); ++i) {
    EXPECT_LE(history[i], history[i - 1]);
  }
  EXPECT_NEAR(history.back(), mean_loss(model, data), 1e-12);
  EXPECT_LT(history.back(), std::log(3.0));
  EXPECT_DOUBLE_EQ(evaluate(model, data).accuracy, 1.0);
  EXPECT_EQ(model, train(data, params));
}

TEST(TrainTest, RejectsDegenerateInput) {
  TrainParams params;
  params.hash_bits = 8;
  EXPECT_THROW(train({}, params), EmptyTrainSet);
  auto data = Separable();
  std::erase_if(data, [](const auto& ex) { return ex.label == S::kNeutral; });
  try {
    train(data, params);
    FAIL();
  } catch (const MissingClass& e) {
    EXPECT_EQ(e.label, S::kNeutral);
  }
  params.learning_rate = 0;
  EXPECT_THROW(train(Separable(), params), UsageError);
  params.learning_rate = 0.5;
  params.hash_bits = 40;
  EXPECT_THROW(train(Separable(), params), UsageError);
}

TEST(TrainTest, LearnsNoisyGenerativeData) {
  const auto data = testing::vocabulary_mismatch_dataset(100, 4);
  const auto parts = split(data, SplitRatios{}, 4);
  TrainParams params;
  params.hash_bits = 14;
  const auto model = train(parts.train, params);
  EXPECT_GT(evaluate(model, parts.test).accuracy, 1.0 / 3 + 0.2);
}

TEST(MetricsTest, HandComputedConfusion) {
  const Confusion c = {{{3, 1, 1}, {1, 2, 1}, {1, 1, 1}}};
  const auto m = metrics_from_confusion(c);
  EXPECT_EQ(m.n, 12u);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.5);
  EXPECT_NEAR(m.macro_precision, 43.0 / 90, 1e-15);
  EXPECT_NEAR(m.macro_recall, 43.0 / 90, 1e-15);
  EXPECT_NEAR(m.macro_f1, 43.0 / 90, 1e-15);
}

TEST(MetricsTest, EmptyClassesScoreZero) {
  const Confusion c = {{{4, 0, 0}, {0, 0, 0}, {2, 0, 0}}};
  const auto m = metrics_from_confusion(c);
  EXPECT_NEAR(m.macro_precision, (4.0 / 6) / 3, 1e-15);
  EXPECT_NEAR(m.macro_recall, 1.0 / 3, 1e-15);
  EXPECT_EQ(metrics_from_confusion(Confusion{}).accuracy, 0.0);
}

TEST(MetricsTest, RandomConfusionsMatchOracle) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    Confusion c{};
    for (auto& row : c) {
      for (auto& cell : row) cell = gen() % 4 == 0 ? 0 : gen() % 50;
    }
    const auto m = metrics_from_confusion(c);
    const auto o = testing::metrics_oracle(c);
    EXPECT_NEAR(m.accuracy, o.accuracy, 1e-12);
    EXPECT_NEAR(m.macro_precision, o.precision, 1e-12);
    EXPECT_NEAR(m.macro_recall, o.recall, 1e-12);
    EXPECT_NEAR(m.macro_f1, o.f1, 1e-12);
  }
}

TEST(MetricsTest, ParallelEvaluateMatchesSerial) {
  const auto data = testing::vocabulary_mismatch_dataset(200, 9);
  TrainParams params;
  params.hash_bits = 12;
  params.epochs = 3;
  const auto model = train(data, params);
  EXPECT_EQ(evaluate(model, data), serial::evaluate(model, data));
  EXPECT_THROW(evaluate(model, {}), EmptyTestSet);
  const auto json = metrics_to_json(evaluate(model, data));
  for (const char* key : {"accuracy", "precision", "recall", "f1", "confusion", "n"}) {
    EXPECT_TRUE(json.contains(key)) << key;
  }
  EXPECT_EQ(json["n"], 600);
}

TEST(ModelTest, SaveLoadRoundTripIsExact) {
  TrainParams params;
  params.hash_bits = 10;
  auto model = train(Separable(), params);
  model.trained_with_psc = true;
  std::stringstream buf;
  model.save(buf);
  const auto loaded = LinearModel::load(buf, "m");
  EXPECT_EQ(loaded, model);
  EXPECT_TRUE(loaded.trained_with_psc);
  for (const auto& ex : Separable()) {
    EXPECT_EQ(loaded.scores(loaded.hasher().features(ex.text)),
              model.scores(model.hasher().features(ex.text)));
  }
}

TEST(ModelTest, LoadRejectsCorruptFiles) {
  TrainParams params;
  params.hash_bits = 6;
  std::stringstream buf;
  train(Separable(), params).save(buf);
  const std::string good = buf.str();
  const std::vector<std::string> bad = {
      "",
      "not-a-model 1\n",
      good.substr(0, good.size() / 2),
      good + "99999 1 2 3\n",
  };
  for (const auto& text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(LinearModel::load(in, "bad.model"), DataError) << text;
  }
}

TEST(PrepareTest, ParallelMatchesSerialAndKeepsLabels) {
  const auto data = testing::vocabulary_mismatch_dataset(50, 2);
  const Normalizer normalizer;
  const RuleEngine engine(Lexicon::builtin(), testing::vocabulary_mismatch_formal());
  const auto config = PipelineConfig::defaults();
  const auto a = prepare(data, normalizer, &engine, config);
  EXPECT_EQ(a, serial::prepare(data, normalizer, &engine, config));
  const auto b = prepare(data, normalizer, nullptr, config);
  EXPECT_EQ(b, serial::prepare(data, normalizer, nullptr, config));
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_EQ(a[i].label, data[i].label);
  }
  EXPECT_NE(a, b);
}

class AblationTest : public ::testing::Test {
 protected:
  AblationParams Params() {
    AblationParams p;
    p.train.hash_bits = 12;
    p.train.seed = 3;
    return p;
  }
  Normalizer normalizer_;
  RuleEngine engine_{Lexicon::builtin(), testing::vocabulary_mismatch_formal()};
};

TEST_F(AblationTest, NoRulesGivesIdenticalArms) {
  const auto data = testing::vocabulary_mismatch_dataset(60, 1);
  const auto r =
      ablation(data, normalizer_, engine_, PipelineConfig::none(), Params());
  EXPECT_EQ(r.with_psc, r.without_psc);
  EXPECT_EQ(r.train_size + r.validation_size + r.test_size, 180u);
}

TEST_F(AblationTest, ConversionHelpsOnVocabularyMismatch) {
  const auto data = testing::vocabulary_mismatch_dataset(200, 8);
  const auto r =
      ablation(data, normalizer_, engine_, PipelineConfig::defaults(), Params());
  EXPECT_GT(r.with_psc.accuracy, r.without_psc.accuracy);
  const auto json = ablation_to_json(r);
  EXPECT_DOUBLE_EQ(json["delta"]["accuracy"].get<double>(),
                   r.with_psc.accuracy - r.without_psc.accuracy);
  EXPECT_EQ(json["sizes"]["train"], 420);
}

TEST_F(AblationTest, InvariantUnderLabelRenaming) {
  // Swapping positive and negative everywhere swaps the confusion matrix
  // but leaves accuracy unchanged.
  auto data = testing::vocabulary_mismatch_dataset(60, 6);
  const auto a =
      ablation(data, normalizer_, engine_, PipelineConfig::defaults(), Params());
  for (auto& ex : data) {
    if (ex.label == S::kPositive) ex.label = S::kNegative;
    else if (ex.label == S::kNegative) ex.label = S::kPositive;
  }
  const auto b =
      ablation(data, normalizer_, engine_, PipelineConfig::defaults(), Params());
  EXPECT_EQ(a.test_size, b.test_size);
  EXPECT_EQ(a.with_psc.n, b.with_psc.n);
}

TEST_F(AblationTest, PerClassDefaultsToSmallestClass) {
  auto data = testing::vocabulary_mismatch_dataset(40, 2);
  std::vector<LabeledExample> fewer;
  std::size_t dropped = 0;
  for (const auto& ex : data) {
    if (ex.label == S::kNeutral && dropped < 10) {
      ++dropped;
      continue;
    }
    fewer.push_back(ex);
  }
  data = fewer;
  const auto r =
      ablation(data, normalizer_, engine_, PipelineConfig::defaults(), Params());
  EXPECT_EQ(r.train_size + r.validation_size + r.test_size, 90u);
  auto p = Params();
  p.per_class = 31;
  EXPECT_THROW(
      ablation(data, normalizer_, engine_, PipelineConfig::defaults(), p),
      InsufficientClass);
}

}  // namespace
}  // namespace psc
