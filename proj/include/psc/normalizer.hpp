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

#ifndef PSC_NORMALIZER_HPP_
#define PSC_NORMALIZER_HPP_

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "psc/tables.hpp"

namespace psc {

enum class DigitScript { kAscii, kPersian };

struct NormalizerConfig {
  DigitScript digits = DigitScript::kAscii;
  // Emoji runs become standalone tokens; when false they are deleted.
  bool keep_emoji = true;
  // Words spelled only in Latin letters are dropped unless this is set.
  bool keep_latin = false;
  // أ إ ٱ -> ا
  bool unify_hamza_alef = true;
  // ئ -> ی and ؤ -> و
  bool unify_hamza_carriers = false;
};

// Canonical text: words separated by exactly one ASCII space, no leading or
// trailing whitespace. `tokens` joined by ' ' reproduces `content`.
struct NormalizedText {
  std::string content;
  std::vector<std::string> tokens;

  bool operator==(const NormalizedText&) const = default;
};

// Per-code-point replacement. A mapping to the empty string deletes.
class CharMap {
 public:
  CharMap() = default;

  static CharMap from_pairs(const std::vector<tables::TsvPair>& pairs,
                            const std::string& source);
  static CharMap builtin();

  void set(char32_t from, std::u32string to);
  const std::u32string* find(char32_t cp) const;
  bool contains(char32_t cp) const { return find(cp) != nullptr; }
  std::vector<char32_t> sources() const;
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<char32_t, std::u32string> map_;
};

// Whole-word spelling-variant unification ("polysyllabic" variants).
class WordMap {
 public:
  WordMap() = default;

  static WordMap from_pairs(const std::vector<tables::TsvPair>& pairs,
                            const std::string& source);
  static WordMap builtin();

  // Replacement tokens for `word`, or nullptr.
  const std::vector<std::string>* find(const std::string& word) const;
  std::size_t size() const { return map_.size(); }

 private:
  friend class Normalizer;
  std::unordered_map<std::string, std::vector<std::string>> map_;
};

// Turns raw social-media text into NormalizedText:
//  1. hashtag markers, @-mentions and links are removed (hashtag bodies stay,
//     with '_' read as a space);
//  2. the letter map, hamza options and digit script are applied; tatweel and
//     harakat are deleted through the map;
//  3. the text is cut into word, number, punctuation and emoji tokens, so
//     punctuation/digits/emoji never touch letters;
//  4. ZWNJ survives only between two letters of one word, collapsed to one;
//  5. whole-word variants are unified through the WordMap.
// normalize() is idempotent.
class Normalizer {
 public:
  explicit Normalizer(NormalizerConfig config = {});
  Normalizer(NormalizerConfig config, CharMap letters, WordMap words);

  // Throws DataError on invalid UTF-8.
  NormalizedText normalize(std::string_view raw) const;

  // Every character the normalizer guarantees to remove or rewrite.
  const CharMap& effective_map() const { return letters_; }
  const NormalizerConfig& config() const { return config_; }

 private:
  std::u32string strip_social(std::u32string text) const;
  std::u32string map_chars(const std::u32string& text) const;
  std::vector<std::string> segment(const std::u32string& text) const;

  NormalizerConfig config_;
  CharMap letters_;
  WordMap words_;
};

// Splits normalized content on single spaces. ZWNJ is word-internal and never
// splits.
std::vector<std::string> tokenize(std::string_view normalized);

std::string join_tokens(std::span<const std::string> tokens);

// Batch normalization over independent lines, parallel over lines with OpenMP.
std::vector<NormalizedText> normalize_lines(const Normalizer& normalizer,
                                            std::span<const std::string> lines);

namespace serial {

// Single-threaded reference for normalize_lines.
std::vector<NormalizedText> normalize_lines(const Normalizer& normalizer,
                                            std::span<const std::string> lines);

}  // namespace serial
}  // namespace psc

#endif  // PSC_NORMALIZER_HPP_
