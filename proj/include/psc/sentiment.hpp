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

#ifndef PSC_SENTIMENT_HPP_
#define PSC_SENTIMENT_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "psc/errors.hpp"
#include "psc/normalizer.hpp"
#include "psc/pipeline.hpp"
#include "psc/rules.hpp"

namespace psc {

// Class indices are fixed: they order confusion rows/columns and weights.
enum class Sentiment { kNegative = 0, kNeutral = 1, kPositive = 2 };
inline constexpr std::size_t kNumClasses = 3;
inline constexpr std::array<Sentiment, kNumClasses> kAllSentiments = {
    Sentiment::kNegative, Sentiment::kNeutral, Sentiment::kPositive};

std::string_view sentiment_name(Sentiment s);
std::optional<Sentiment> parse_sentiment(std::string_view name);
inline std::size_t class_index(Sentiment s) {
  return static_cast<std::size_t>(s);
}

struct LabeledExample {
  std::string text;
  Sentiment label = Sentiment::kNeutral;

  bool operator==(const LabeledExample&) const = default;
};

class InsufficientClass : public DataError {
 public:
  InsufficientClass(Sentiment label, std::size_t have, std::size_t need);
  Sentiment label;
  std::size_t have;
  std::size_t need;
};

class BadRatios : public UsageError {
 public:
  using UsageError::UsageError;
};

class EmptyTrainSet : public DataError {
 public:
  EmptyTrainSet() : DataError("training set is empty") {}
};

class MissingClass : public DataError {
 public:
  explicit MissingClass(Sentiment label);
  Sentiment label;
};

class EmptyTestSet : public DataError {
 public:
  EmptyTestSet() : DataError("test set is empty") {}
};

// --- Labeled TSV -----------------------------------------------------------
//
// One example per line: `label<TAB>text`, or `l1<TAB>l2<TAB>l3<TAB>text`
// where the label is the majority of three annotators; rows without a
// majority are dropped. Blank lines are skipped. Any other field count means
// a tab inside the text, which is rejected.

struct LabeledReadResult {
  std::vector<LabeledExample> examples;
  std::size_t dropped_no_majority = 0;
};

LabeledReadResult read_labeled(std::istream& in, const std::string& source);
LabeledReadResult load_labeled(const std::string& path);
// Throws DataError if a text contains a tab or newline.
void write_labeled(std::ostream& out, std::span<const LabeledExample> data);

// --- Sampling --------------------------------------------------------------

// Exactly `per_class` examples of each class, drawn without replacement by a
// seeded Fisher-Yates shuffle of each class (negative, neutral, positive in
// turn, one generator) and taking the prefix. The result keeps input order.
std::vector<LabeledExample> balance(std::span<const LabeledExample> data,
                                    std::size_t per_class, std::uint64_t seed);

struct SplitRatios {
  double train = 0.70;
  double validation = 0.15;
  double test = 0.15;
};

struct DatasetSplit {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> validation;
  std::vector<LabeledExample> test;
  std::uint64_t seed = 0;
};

// Stratified split. Partition sizes are round(train*N), round(validation*N)
// and the remainder; per-class counts are a floor/ceil rounding of the ratio
// times the class size, chosen so the partition sizes come out exactly when
// possible. Each partition keeps input order. Throws BadRatios unless the
// ratios are non-negative and sum to 1 within 1e-9.
DatasetSplit split(std::span<const LabeledExample> data, SplitRatios ratios,
                   std::uint64_t seed);

// --- Features and model ----------------------------------------------------

using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

// Hashed unigram and adjacent-bigram counts (FNV-1a, low `bits` bits),
// L2-normalized, sorted by index. Tokens are split on ASCII whitespace.
class FeatureHasher {
 public:
  explicit FeatureHasher(unsigned bits = 20);

  SparseVector features(std::string_view text) const;
  unsigned bits() const { return bits_; }
  std::uint32_t dimension() const { return 1u << bits_; }

  bool operator==(const FeatureHasher&) const = default;

 private:
  unsigned bits_;
};

std::uint64_t fnv1a64(std::string_view bytes);

// Multinomial linear model; prediction is the argmax of W x + b, ties going
// to the lower class index.
class LinearModel {
 public:
  explicit LinearModel(unsigned hash_bits = 20);

  std::array<double, kNumClasses> scores(const SparseVector& x) const;
  Sentiment predict(const SparseVector& x) const;
  Sentiment predict(std::string_view text) const {
    return predict(hasher_.features(text));
  }

  const FeatureHasher& hasher() const { return hasher_; }
  double& weight(std::size_t cls, std::uint32_t feature) {
    return weights_[cls * hasher_.dimension() + feature];
  }
  double weight(std::size_t cls, std::uint32_t feature) const {
    return weights_[cls * hasher_.dimension() + feature];
  }
  std::array<double, kNumClasses>& bias() { return bias_; }
  const std::array<double, kNumClasses>& bias() const { return bias_; }

  // Whether training text went through slang conversion; eval must match.
  bool trained_with_psc = false;

  // Text format: header lines, then one `index w0 w1 w2` row per feature
  // with any non-zero weight, doubles printed with 17 significant digits so
  // a save/load round trip is exact.
  void save(std::ostream& out) const;
  static LinearModel load(std::istream& in, const std::string& source);

  bool operator==(const LinearModel&) const = default;

 private:
  FeatureHasher hasher_;
  std::vector<double> weights_;  // class-major
  std::array<double, kNumClasses> bias_{};
};

struct TrainParams {
  unsigned hash_bits = 20;
  std::size_t epochs = 10;
  double learning_rate = 0.5;
  // Step decay: the rate is multiplied by `decay` every `decay_every` epochs.
  double decay = 0.5;
  std::size_t decay_every = 4;
  std::uint64_t seed = 0;
};

// Softmax cross-entropy, online SGD over a seeded per-epoch shuffle. After
// each epoch the mean training loss is measured; if it rose, the epoch is
// undone and retried at half the rate, so `loss_history` never increases.
// Single-threaded, hence bit-reproducible.
LinearModel train(std::span<const LabeledExample> train_set,
                  const TrainParams& params,
                  std::vector<double>* loss_history = nullptr);

// Mean cross-entropy of `model` on `data`.
double mean_loss(const LinearModel& model, std::span<const LabeledExample> data);

// --- Metrics ---------------------------------------------------------------

using Confusion = std::array<std::array<std::uint64_t, kNumClasses>,
                             kNumClasses>;  // [true][predicted]

struct EvalMetrics {
  double accuracy = 0;
  double macro_precision = 0;
  double macro_recall = 0;
  double macro_f1 = 0;
  Confusion confusion{};
  std::uint64_t n = 0;

  bool operator==(const EvalMetrics&) const = default;
};

// Per-class P = tp/predicted, R = tp/actual, F1 = 2PR/(P+R); each is 0 when
// its denominator is 0. Macro values are unweighted means over the classes.
EvalMetrics metrics_from_confusion(const Confusion& confusion);

// Parallel prediction; the confusion matrix is filled in input order.
EvalMetrics evaluate(const LinearModel& model,
                     std::span<const LabeledExample> test_set);

// {"accuracy", "precision", "recall", "f1", "confusion", "n"}; confusion rows
// are true labels, columns predictions, both negative/neutral/positive.
nlohmann::json metrics_to_json(const EvalMetrics& metrics);

// --- Preprocessing and ablation --------------------------------------------

// Replaces each text by its normalized form, then by convert_text() output
// when `engine` is non-null. Labels are untouched. Parallel over examples.
std::vector<LabeledExample> prepare(std::span<const LabeledExample> data,
                                    const Normalizer& normalizer,
                                    const RuleEngine* engine,
                                    const PipelineConfig& config);

struct AblationParams {
  // Examples per class after balancing; unset means the smallest class size.
  std::optional<std::size_t> per_class;
  SplitRatios ratios;
  TrainParams train;  // train.seed also seeds balancing and splitting
};

struct AblationResult {
  EvalMetrics with_psc;
  EvalMetrics without_psc;
  std::size_t train_size = 0;
  std::size_t validation_size = 0;
  std::size_t test_size = 0;
};

// Balances and splits once, then trains and tests twice on the same
// partitions: with conversion and without. Nothing else differs.
AblationResult ablation(std::span<const LabeledExample> data,
                        const Normalizer& normalizer, const RuleEngine& engine,
                        const PipelineConfig& config,
                        const AblationParams& params);

// {"with_psc": metrics, "without_psc": metrics, "delta": {accuracy, precision,
// recall, f1}, "sizes": {train, validation, test}}
nlohmann::json ablation_to_json(const AblationResult& result);

namespace serial {

EvalMetrics evaluate(const LinearModel& model,
                     std::span<const LabeledExample> test_set);

std::vector<LabeledExample> prepare(std::span<const LabeledExample> data,
                                    const Normalizer& normalizer,
                                    const RuleEngine* engine,
                                    const PipelineConfig& config);

}  // namespace serial
}  // namespace psc

#endif  // PSC_SENTIMENT_HPP_
