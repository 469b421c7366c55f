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

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "psc/random.hpp"
#include "psc/utf8.hpp"

namespace psc {
namespace {

constexpr std::size_t kMaxBacktracks = 30;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::vector<std::string_view> whitespace_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

// Treats values within 1e-9 of an integer as that integer, so 0.7 * 15000
// floors and ceils to 10500 rather than 10500/10501.
std::pair<std::size_t, std::size_t> floor_ceil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9) {
    const auto v = static_cast<std::size_t>(r);
    return {v, v};
  }
  return {static_cast<std::size_t>(std::floor(x)),
          static_cast<std::size_t>(std::ceil(x))};
}

std::size_t round_count(double x) {
  return static_cast<std::size_t>(std::llround(x));
}

struct ClassQuota {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

std::vector<ClassQuota> quota_options(std::size_t n, const SplitRatios& r) {
  const auto [tr_lo, tr_hi] = floor_ceil(r.train * static_cast<double>(n));
  const auto [va_lo, va_hi] = floor_ceil(r.validation * static_cast<double>(n));
  const auto [te_lo, te_hi] = floor_ceil(r.test * static_cast<double>(n));
  std::vector<ClassQuota> options;
  for (std::size_t tr : {tr_lo, tr_hi}) {
    for (std::size_t va : {va_lo, va_hi}) {
      if (tr + va > n) continue;
      const std::size_t te = n - tr - va;
      if (te < te_lo || te > te_hi) continue;
      ClassQuota q{tr, va, te};
      const bool dup = std::any_of(options.begin(), options.end(), [&](auto& o) {
        return o.train == q.train && o.validation == q.validation;
      });
      if (!dup) options.push_back(q);
    }
  }
  if (options.empty()) {
    // Unreachable for valid ratios; keep a consistent fallback.
    const std::size_t tr = std::min(n, round_count(r.train * n));
    const std::size_t va = std::min(n - tr, round_count(r.validation * n));
    options.push_back({tr, va, n - tr - va});
  }
  return options;
}

std::size_t distance(std::size_t a, std::size_t b) {
  return a > b ? a - b : b - a;
}

// Picks one quota per class so that partition totals match the targets as
// closely as possible; the first best combination in enumeration order wins.
std::array<ClassQuota, kNumClasses> choose_quotas(
    const std::array<std::size_t, kNumClasses>& sizes, const SplitRatios& r,
    const ClassQuota& target) {
  std::array<std::vector<ClassQuota>, kNumClasses> options;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    options[c] = quota_options(sizes[c], r);
  }
  std::array<ClassQuota, kNumClasses> best{};
  std::size_t best_cost = std::numeric_limits<std::size_t>::max();
  std::array<ClassQuota, kNumClasses> current{};
  auto visit = [&](auto&& self, std::size_t c) -> void {
    if (c == kNumClasses) {
      ClassQuota sum;
      for (const auto& q : current) {
        sum.train += q.train;
        sum.validation += q.validation;
        sum.test += q.test;
      }
      const std::size_t cost = distance(sum.train, target.train) +
                               distance(sum.validation, target.validation) +
                               distance(sum.test, target.test);
      if (cost < best_cost) {
        best_cost = cost;
        best = current;
      }
      return;
    }
    for (const auto& q : options[c]) {
      current[c] = q;
      self(self, c + 1);
    }
  };
  visit(visit, 0);
  return best;
}

std::vector<LabeledExample> gather(std::span<const LabeledExample> data,
                                   std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  std::vector<LabeledExample> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(data[i]);
  return out;
}

std::array<std::vector<std::size_t>, kNumClasses> indices_by_class(
    std::span<const LabeledExample> data) {
  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < data.size(); ++i) {
    by_class[class_index(data[i].label)].push_back(i);
  }
  return by_class;
}

double cross_entropy(const std::array<double, kNumClasses>& s,
                     std::size_t label) {
  const double m = *std::max_element(s.begin(), s.end());
  double z = 0;
  for (double v : s) z += std::exp(v - m);
  return m + std::log(z) - s[label];
}

std::array<double, kNumClasses> softmax(const std::array<double, kNumClasses>& s) {
  const double m = *std::max_element(s.begin(), s.end());
  std::array<double, kNumClasses> p{};
  double z = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    p[c] = std::exp(s[c] - m);
    z += p[c];
  }
  for (double& v : p) v /= z;
  return p;
}

double mean_loss_features(const LinearModel& model,
                          const std::vector<SparseVector>& xs,
                          const std::vector<std::size_t>& ys) {
  if (xs.empty()) return 0;
  double total = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    total += cross_entropy(model.scores(xs[i]), ys[i]);
  }
  return total / static_cast<double>(xs.size());
}

void validate(const TrainParams& p) {
  if (p.hash_bits < 1 || p.hash_bits > 28) {
    throw UsageError("hash bits must be in [1, 28]");
  }
  if (!(p.learning_rate > 0) || !std::isfinite(p.learning_rate)) {
    throw UsageError("learning rate must be positive");
  }
  if (!(p.decay > 0 && p.decay <= 1)) {
    throw UsageError("decay must be in (0, 1]");
  }
  if (p.decay_every == 0) throw UsageError("decay interval must be >= 1");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view text, const std::string& source,
                    std::size_t line) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw DataError(source, line, "bad number '" + s + "'");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view text, const std::string& source,
                         std::size_t line) {
  const std::string s(text);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw DataError(source, line, "bad integer '" + s + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
  if (errno == ERANGE) throw DataError(source, line, "integer out of range");
  return v;
}

// Runs `body(i)` over [0, n) in parallel; rethrows the lowest-index failure.
template <typename Body>
void parallel_for_each_index(std::size_t n, Body body) {
  std::vector<std::exception_ptr> errors(n);
  bool failed = false;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 128) reduction(|| : failed)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
      failed = true;
    }
  }
  if (!failed) return;
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::string_view sentiment_name(Sentiment s) {
  switch (s) {
    case Sentiment::kNegative: return "negative";
    case Sentiment::kNeutral: return "neutral";
    case Sentiment::kPositive: return "positive";
  }
  return "neutral";
}

std::optional<Sentiment> parse_sentiment(std::string_view name) {
  for (Sentiment s : kAllSentiments) {
    if (sentiment_name(s) == name) return s;
  }
  return std::nullopt;
}

InsufficientClass::InsufficientClass(Sentiment label, std::size_t have,
                                     std::size_t need)
    : DataError("class '" + std::string(sentiment_name(label)) + "' has " +
                std::to_string(have) + " examples, need " +
                std::to_string(need)),
      label(label),
      have(have),
      need(need) {}

MissingClass::MissingClass(Sentiment label)
    : DataError("training set has no '" + std::string(sentiment_name(label)) +
                "' examples"),
      label(label) {}

LabeledReadResult read_labeled(std::istream& in, const std::string& source) {
  LabeledReadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(), is_ascii_space)) continue;
    if (!utf8::is_valid(line)) {
      throw DataError(source, line_no, "invalid UTF-8");
    }
    const auto fields = split_tabs(line);
    auto label_of = [&](std::string_view field) {
      auto label = parse_sentiment(field);
      if (!label) {
        throw DataError(source, line_no,
                        "unknown label '" + std::string(field) +
                            "' (expected positive, neutral or negative)");
      }
      return *label;
    };
    if (fields.size() == 2) {
      result.examples.push_back({std::string(fields[1]), label_of(fields[0])});
    } else if (fields.size() == 4) {
      std::array<int, kNumClasses> votes{};
      for (std::size_t k = 0; k < 3; ++k) ++votes[class_index(label_of(fields[k]))];
      const auto it = std::find_if(votes.begin(), votes.end(),
                                   [](int v) { return v >= 2; });
      if (it == votes.end()) {
        ++result.dropped_no_majority;
        continue;
      }
      result.examples.push_back(
          {std::string(fields[3]),
           kAllSentiments[static_cast<std::size_t>(it - votes.begin())]});
    } else {
      throw DataError(source, line_no,
                      "expected 2 or 4 tab-separated fields, got " +
                          std::to_string(fields.size()) +
                          " (tabs are not allowed inside text)");
    }
  }
  return result;
}

LabeledReadResult load_labeled(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open");
  return read_labeled(in, path);
}

void write_labeled(std::ostream& out, std::span<const LabeledExample> data) {
  for (const auto& ex : data) {
    if (ex.text.find_first_of("\t\n\r") != std::string::npos) {
      throw DataError("example text contains a tab or line break");
    }
    out << sentiment_name(ex.label) << '\t' << ex.text << '\n';
  }
}

std::vector<LabeledExample> balance(std::span<const LabeledExample> data,
                                    std::size_t per_class, std::uint64_t seed) {
  auto by_class = indices_by_class(data);
  for (Sentiment s : kAllSentiments) {
    const auto have = by_class[class_index(s)].size();
    if (have < per_class) throw InsufficientClass(s, have, per_class);
  }
  Rng rng(seed);
  std::vector<std::size_t> chosen;
  chosen.reserve(per_class * kNumClasses);
  for (auto& members : by_class) {
    rng.shuffle(std::span<std::size_t>(members));
    chosen.insert(chosen.end(), members.begin(),
                  members.begin() + static_cast<std::ptrdiff_t>(per_class));
  }
  return gather(data, std::move(chosen));
}

DatasetSplit split(std::span<const LabeledExample> data, SplitRatios ratios,
                   std::uint64_t seed) {
  const double sum = ratios.train + ratios.validation + ratios.test;
  if (ratios.train < 0 || ratios.validation < 0 || ratios.test < 0 ||
      !(std::abs(sum - 1.0) <= 1e-9)) {
    throw BadRatios("split ratios must be non-negative and sum to 1");
  }
  const std::size_t n = data.size();
  ClassQuota target;
  target.train = std::min(n, round_count(ratios.train * static_cast<double>(n)));
  target.validation = std::min(
      n - target.train, round_count(ratios.validation * static_cast<double>(n)));
  target.test = n - target.train - target.validation;

  auto by_class = indices_by_class(data);
  std::array<std::size_t, kNumClasses> sizes{};
  for (std::size_t c = 0; c < kNumClasses; ++c) sizes[c] = by_class[c].size();
  const auto quotas = choose_quotas(sizes, ratios, target);

  Rng rng(seed);
  std::vector<std::size_t> train_idx, val_idx, test_idx;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    auto& members = by_class[c];
    rng.shuffle(std::span<std::size_t>(members));
    const auto& q = quotas[c];
    auto first = members.begin();
    auto mid = first + static_cast<std::ptrdiff_t>(q.train);
    auto last = mid + static_cast<std::ptrdiff_t>(q.validation);
    train_idx.insert(train_idx.end(), first, mid);
    val_idx.insert(val_idx.end(), mid, last);
    test_idx.insert(test_idx.end(), last, members.end());
  }
  DatasetSplit out;
  out.train = gather(data, std::move(train_idx));
  out.validation = gather(data, std::move(val_idx));
  out.test = gather(data, std::move(test_idx));
  out.seed = seed;
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

FeatureHasher::FeatureHasher(unsigned bits) : bits_(bits) {
  if (bits < 1 || bits > 28) throw UsageError("hash bits must be in [1, 28]");
}

SparseVector FeatureHasher::features(std::string_view text) const {
  const auto tokens = whitespace_tokens(text);
  const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size() * 2);
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    key.assign("u\x1f").append(tokens[i]);
    ids.push_back(static_cast<std::uint32_t>(fnv1a64(key) & mask));
    if (i + 1 < tokens.size()) {
      key.assign("b\x1f").append(tokens[i]).append("\x1f").append(tokens[i + 1]);
      ids.push_back(static_cast<std::uint32_t>(fnv1a64(key) & mask));
    }
  }
  std::sort(ids.begin(), ids.end());
  SparseVector x;
  for (std::uint32_t id : ids) {
    if (!x.empty() && x.back().first == id) {
      x.back().second += 1;
    } else {
      x.emplace_back(id, 1.0);
    }
  }
  double norm = 0;
  for (const auto& [id, v] : x) norm += v * v;
  norm = std::sqrt(norm);
  for (auto& [id, v] : x) v /= norm;
  return x;
}

LinearModel::LinearModel(unsigned hash_bits)
    : hasher_(hash_bits),
      weights_(kNumClasses * std::size_t{hasher_.dimension()}, 0.0) {}

std::array<double, kNumClasses> LinearModel::scores(const SparseVector& x) const {
  std::array<double, kNumClasses> s = bias_;
  const std::size_t dim = hasher_.dimension();
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const double* w = weights_.data() + c * dim;
    for (const auto& [id, v] : x) s[c] += w[id] * v;
  }
  return s;
}

Sentiment LinearModel::predict(const SparseVector& x) const {
  const auto s = scores(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c) {
    if (s[c] > s[best]) best = c;
  }
  return kAllSentiments[best];
}

void LinearModel::save(std::ostream& out) const {
  const std::size_t dim = hasher_.dimension();
  std::vector<std::uint32_t> nonzero;
  for (std::uint32_t i = 0; i < dim; ++i) {
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      if (weights_[c * dim + i] != 0.0) {
        nonzero.push_back(i);
        break;
      }
    }
  }
  out << "psc-linear-model 1\n";
  out << "hash_bits " << hasher_.bits() << '\n';
  out << "classes negative neutral positive\n";
  out << "psc " << (trained_with_psc ? 1 : 0) << '\n';
  out << "bias " << format_double(bias_[0]) << ' ' << format_double(bias_[1])
      << ' ' << format_double(bias_[2]) << '\n';
  out << "nonzero " << nonzero.size() << '\n';
  for (std::uint32_t i : nonzero) {
    out << i;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      out << ' ' << format_double(weights_[c * dim + i]);
    }
    out << '\n';
  }
}

LinearModel LinearModel::load(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto next_fields = [&](std::string_view what) {
    if (!std::getline(in, line)) {
      throw DataError(source, line_no + 1,
                      "unexpected end of file, expected " + std::string(what));
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::istringstream ss(line);
    for (std::string f; ss >> f;) fields.push_back(f);
    return fields;
  };
  auto expect = [&](const std::vector<std::string>& f, std::string_view key,
                    std::size_t count) {
    if (f.size() != count || f[0] != key) {
      throw DataError(source, line_no,
                      "expected '" + std::string(key) + "' line");
    }
  };

  auto f = next_fields("header");
  if (f.size() != 2 || f[0] != "psc-linear-model" || f[1] != "1") {
    throw DataError(source, line_no, "not a psc-linear-model version 1 file");
  }
  f = next_fields("hash_bits");
  expect(f, "hash_bits", 2);
  const auto bits = parse_uint(f[1], source, line_no);
  if (bits < 1 || bits > 28) throw DataError(source, line_no, "bad hash_bits");
  LinearModel model(static_cast<unsigned>(bits));
  f = next_fields("classes");
  if (f != std::vector<std::string>{"classes", "negative", "neutral",
                                    "positive"}) {
    throw DataError(source, line_no, "unexpected class list");
  }
  f = next_fields("psc");
  expect(f, "psc", 2);
  if (f[1] != "0" && f[1] != "1") throw DataError(source, line_no, "bad psc flag");
  model.trained_with_psc = f[1] == "1";
  f = next_fields("bias");
  expect(f, "bias", 1 + kNumClasses);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    model.bias_[c] = parse_double(f[1 + c], source, line_no);
  }
  f = next_fields("nonzero");
  expect(f, "nonzero", 2);
  const auto rows = parse_uint(f[1], source, line_no);
  const std::size_t dim = model.hasher_.dimension();
  if (rows > dim) throw DataError(source, line_no, "too many weight rows");
  std::int64_t previous = -1;
  for (std::uint64_t r = 0; r < rows; ++r) {
    f = next_fields("weight row");
    if (f.size() != 1 + kNumClasses) {
      throw DataError(source, line_no, "weight row needs 4 fields");
    }
    const auto index = parse_uint(f[0], source, line_no);
    if (index >= dim || static_cast<std::int64_t>(index) <= previous) {
      throw DataError(source, line_no,
                      "feature index out of range or not increasing");
    }
    previous = static_cast<std::int64_t>(index);
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      model.weights_[c * dim + index] = parse_double(f[1 + c], source, line_no);
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line != "\r") {
      throw DataError(source, line_no, "trailing content after weight rows");
    }
  }
  return model;
}

LinearModel train(std::span<const LabeledExample> train_set,
                  const TrainParams& params,
                  std::vector<double>* loss_history) {
  validate(params);
  if (train_set.empty()) throw EmptyTrainSet();
  const auto by_class = indices_by_class(train_set);
  for (Sentiment s : kAllSentiments) {
    if (by_class[class_index(s)].empty()) throw MissingClass(s);
  }

  LinearModel model(params.hash_bits);
  const FeatureHasher& hasher = model.hasher();
  std::vector<SparseVector> xs(train_set.size());
  std::vector<std::size_t> ys(train_set.size());
  parallel_for_each_index(train_set.size(), [&](std::size_t i) {
    xs[i] = hasher.features(train_set[i].text);
    ys[i] = class_index(train_set[i].label);
  });

  Rng rng(params.seed);
  std::vector<std::size_t> order(xs.size());
  double previous = mean_loss_features(model, xs, ys);
  double backoff = 1.0;
  if (loss_history) loss_history->clear();

  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    const double scheduled =
        params.learning_rate *
        std::pow(params.decay, static_cast<double>(epoch / params.decay_every));
    const LinearModel snapshot = model;
    double loss = previous;
    bool accepted = false;
    for (std::size_t attempt = 0; attempt <= kMaxBacktracks; ++attempt) {
      const double rate = scheduled * backoff;
      for (std::size_t i : order) {
        const auto p = softmax(model.scores(xs[i]));
        for (std::size_t c = 0; c < kNumClasses; ++c) {
          const double g = rate * (p[c] - (c == ys[i] ? 1.0 : 0.0));
          if (g == 0) continue;
          for (const auto& [id, v] : xs[i]) model.weight(c, id) -= g * v;
          model.bias()[c] -= g;
        }
      }
      loss = mean_loss_features(model, xs, ys);
      if (loss <= previous) {
        accepted = true;
        break;
      }
      model = snapshot;
      backoff *= 0.5;
    }
    if (!accepted) loss = previous;
    if (loss_history) loss_history->push_back(loss);
    previous = loss;
  }
  return model;
}

double mean_loss(const LinearModel& model,
                 std::span<const LabeledExample> data) {
  std::vector<SparseVector> xs;
  std::vector<std::size_t> ys;
  for (const auto& ex : data) {
    xs.push_back(model.hasher().features(ex.text));
    ys.push_back(class_index(ex.label));
  }
  return mean_loss_features(model, xs, ys);
}

EvalMetrics metrics_from_confusion(const Confusion& confusion) {
  EvalMetrics m;
  m.confusion = confusion;
  std::array<std::uint64_t, kNumClasses> actual{}, predicted{};
  std::uint64_t trace = 0;
  for (std::size_t t = 0; t < kNumClasses; ++t) {
    for (std::size_t p = 0; p < kNumClasses; ++p) {
      actual[t] += confusion[t][p];
      predicted[p] += confusion[t][p];
      m.n += confusion[t][p];
    }
    trace += confusion[t][t];
  }
  if (m.n == 0) return m;
  m.accuracy = static_cast<double>(trace) / static_cast<double>(m.n);
  double sp = 0, sr = 0, sf = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const double tp = static_cast<double>(confusion[c][c]);
    const double prec =
        predicted[c] ? tp / static_cast<double>(predicted[c]) : 0.0;
    const double rec = actual[c] ? tp / static_cast<double>(actual[c]) : 0.0;
    const double f1 = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
    sp += prec;
    sr += rec;
    sf += f1;
  }
  m.macro_precision = sp / kNumClasses;
  m.macro_recall = sr / kNumClasses;
  m.macro_f1 = sf / kNumClasses;
  return m;
}

EvalMetrics evaluate(const LinearModel& model,
                     std::span<const LabeledExample> test_set) {
  if (test_set.empty()) throw EmptyTestSet();
  std::vector<Sentiment> predictions(test_set.size());
  parallel_for_each_index(test_set.size(), [&](std::size_t i) {
    predictions[i] = model.predict(test_set[i].text);
  });
  Confusion confusion{};
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    ++confusion[class_index(test_set[i].label)][class_index(predictions[i])];
  }
  return metrics_from_confusion(confusion);
}

nlohmann::json metrics_to_json(const EvalMetrics& m) {
  nlohmann::json confusion = nlohmann::json::array();
  for (const auto& row : m.confusion) confusion.push_back(row);
  return {
      {"accuracy", m.accuracy}, {"precision", m.macro_precision},
      {"recall", m.macro_recall}, {"f1", m.macro_f1},
      {"confusion", std::move(confusion)}, {"n", m.n},
  };
}

std::vector<LabeledExample> prepare(std::span<const LabeledExample> data,
                                    const Normalizer& normalizer,
                                    const RuleEngine* engine,
                                    const PipelineConfig& config) {
  std::vector<LabeledExample> out(data.size());
  parallel_for_each_index(data.size(), [&](std::size_t i) {
    NormalizedText text = normalizer.normalize(data[i].text);
    if (engine) text = convert_text(text, *engine, config).text;
    out[i].text = std::move(text.content);
    out[i].label = data[i].label;
  });
  return out;
}

AblationResult ablation(std::span<const LabeledExample> data,
                        const Normalizer& normalizer, const RuleEngine& engine,
                        const PipelineConfig& config,
                        const AblationParams& params) {
  std::size_t per_class = 0;
  if (params.per_class) {
    per_class = *params.per_class;
  } else {
    const auto by_class = indices_by_class(data);
    per_class = std::min({by_class[0].size(), by_class[1].size(),
                          by_class[2].size()});
  }
  const auto seed = params.train.seed;
  const auto balanced = balance(data, per_class, seed);
  const auto parts = split(balanced, params.ratios, seed);

  AblationResult result;
  result.train_size = parts.train.size();
  result.validation_size = parts.validation.size();
  result.test_size = parts.test.size();
  for (const bool with_psc : {true, false}) {
    const RuleEngine* arm = with_psc ? &engine : nullptr;
    const auto train_set = prepare(parts.train, normalizer, arm, config);
    const auto test_set = prepare(parts.test, normalizer, arm, config);
    const LinearModel model = train(train_set, params.train);
    (with_psc ? result.with_psc : result.without_psc) =
        evaluate(model, test_set);
  }
  return result;
}

nlohmann::json ablation_to_json(const AblationResult& r) {
  return {
      {"with_psc", metrics_to_json(r.with_psc)},
      {"without_psc", metrics_to_json(r.without_psc)},
      {"delta",
       {{"accuracy", r.with_psc.accuracy - r.without_psc.accuracy},
        {"precision", r.with_psc.macro_precision - r.without_psc.macro_precision},
        {"recall", r.with_psc.macro_recall - r.without_psc.macro_recall},
        {"f1", r.with_psc.macro_f1 - r.without_psc.macro_f1}}},
      {"sizes",
       {{"train", r.train_size},
        {"validation", r.validation_size},
        {"test", r.test_size}}},
  };
}

}  // namespace psc
