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

#include "psc/normalizer.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>

#include "psc/errors.hpp"
#include "psc/utf8.hpp"

namespace psc {
namespace {

enum class CharClass {
  kSpace,
  kIgnorable,
  kZwnj,
  kLetter,
  kDigit,
  kPunct,
  kEmoji,
  kEmojiJoiner,
};

bool in(char32_t c, char32_t lo, char32_t hi) { return c >= lo && c <= hi; }

CharClass classify(char32_t c) {
  if (c < 0x80) {
    if (c == ' ' || (c >= 0x09 && c <= 0x0D)) return CharClass::kSpace;
    if (c < 0x20 || c == 0x7F) return CharClass::kSpace;
    if (in(c, '0', '9')) return CharClass::kDigit;
    if (in(c, 'A', 'Z') || in(c, 'a', 'z')) return CharClass::kLetter;
    return CharClass::kPunct;
  }
  if (in(c, 0x80, 0x9F)) return CharClass::kSpace;
  switch (c) {
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return CharClass::kSpace;
    case 0x200C:
      return CharClass::kZwnj;
    case 0x200D:
    case 0xFE0E:
    case 0xFE0F:
    case 0x20E3:
      return CharClass::kEmojiJoiner;
    case 0x00AD:
    case 0x061C:
    case 0x180E:
    case 0x200B:
    case 0x200E:
    case 0x200F:
    case 0xFEFF:
      return CharClass::kIgnorable;
    case 0x00D7:
    case 0x00F7:
    case 0x060C:
    case 0x061B:
    case 0x061E:
    case 0x061F:
    case 0x06D4:
    case 0x06DD:
    case 0x06DE:
    case 0x06E9:
      return CharClass::kPunct;
    case 0x3030:
    case 0x303D:
    case 0x3297:
    case 0x3299:
      return CharClass::kEmoji;
    default:
      break;
  }
  if (in(c, 0x2000, 0x200A)) return CharClass::kSpace;
  if (in(c, 0x202A, 0x202E) || in(c, 0x2060, 0x2069) ||
      in(c, 0x0600, 0x0605)) {
    return CharClass::kIgnorable;
  }
  if (in(c, 0xE0020, 0xE007F)) return CharClass::kEmojiJoiner;
  if (in(c, 0x0660, 0x0669) || in(c, 0x06F0, 0x06F9)) return CharClass::kDigit;
  if (in(c, 0x1F000, 0x1FAFF) || in(c, 0x2600, 0x27BF) ||
      in(c, 0x2300, 0x23FF) || in(c, 0x2B00, 0x2BFF)) {
    return CharClass::kEmoji;
  }
  if (in(c, 0x00A1, 0x00BF) || in(c, 0x0606, 0x060F) ||
      in(c, 0x066A, 0x066D) || in(c, 0x2010, 0x2027) ||
      in(c, 0x2030, 0x205E) || in(c, 0x20A0, 0x20CF) ||
      in(c, 0x2100, 0x22FF) || in(c, 0x2400, 0x25FF) ||
      in(c, 0x27C0, 0x2AFF) || in(c, 0x2E00, 0x2E7F) ||
      in(c, 0x3001, 0x303F) || in(c, 0xFE10, 0xFE1F) ||
      in(c, 0xFE30, 0xFE6F) || in(c, 0xFF01, 0xFF0F) ||
      in(c, 0xFF1A, 0xFF20) || in(c, 0xFF3B, 0xFF40) ||
      in(c, 0xFF5B, 0xFF65) || in(c, 0xFFE0, 0xFFEE)) {
    return CharClass::kPunct;
  }
  return CharClass::kLetter;
}

bool is_ascii_alnum(char32_t c) {
  return in(c, '0', '9') || in(c, 'A', 'Z') || in(c, 'a', 'z');
}

bool is_latin_letter(char32_t c) {
  return in(c, 'A', 'Z') || in(c, 'a', 'z') || in(c, 0x00C0, 0x024F);
}

bool is_arabic_script(char32_t c) {
  return in(c, 0x0600, 0x06FF) || in(c, 0x0750, 0x077F) ||
         in(c, 0x08A0, 0x08FF) || in(c, 0xFB50, 0xFDFF) ||
         in(c, 0xFE70, 0xFEFC);
}

char32_t ascii_lower(char32_t c) { return in(c, 'A', 'Z') ? c + 32 : c; }

bool starts_with_ci(const std::u32string& text, std::size_t pos,
                    std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ascii_lower(text[pos + i]) != static_cast<char32_t>(prefix[i])) {
      return false;
    }
  }
  return true;
}

bool is_url_char(char32_t c) {
  if (is_ascii_alnum(c)) return true;
  switch (c) {
    case '-': case '.': case '_': case '~': case ':': case '/': case '?':
    case '#': case '[': case ']': case '@': case '!': case '$': case '&':
    case '\'': case '(': case ')': case '*': case '+': case ',': case ';':
    case '=': case '%':
      return true;
    default:
      return false;
  }
}

constexpr std::array<std::string_view, 18> kTopLevelDomains = {
    "com", "net", "org", "ir",  "io", "me",  "info", "co",  "us",
    "uk",  "de",  "tv",  "app", "dev", "ly", "gl",   "xyz", "biz"};

// True if text[begin, end) is host[:port][/path] with a known TLD.
bool looks_like_domain(const std::u32string& text, std::size_t begin,
                       std::size_t end) {
  std::size_t host_end = begin;
  while (host_end < end && text[host_end] != '/' && text[host_end] != ':' &&
         text[host_end] != '?') {
    ++host_end;
  }
  std::size_t dots = 0;
  std::size_t label_start = begin;
  std::u32string last_label;
  for (std::size_t i = begin; i <= host_end; ++i) {
    if (i == host_end || text[i] == '.') {
      if (i == label_start) return false;  // empty label
      last_label.assign(text, label_start, i - label_start);
      label_start = i + 1;
      if (i < host_end) ++dots;
      continue;
    }
    if (!is_ascii_alnum(text[i]) && text[i] != '-') return false;
  }
  if (dots == 0) return false;
  for (auto tld : kTopLevelDomains) {
    if (last_label.size() != tld.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < tld.size(); ++i) {
      if (ascii_lower(last_label[i]) != static_cast<char32_t>(tld[i])) {
        same = false;
        break;
      }
    }
    if (same) return true;
  }
  return false;
}

std::u32string remove_hashtag_markers(const std::u32string& text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t c = text[i];
    if (c != '#' && c != 0xFF03) {
      out.push_back(c);
      ++i;
      continue;
    }
    ++i;
    while (i < text.size()) {
      const char32_t b = text[i];
      const CharClass cls = classify(b);
      if (b == '_') {
        out.push_back(' ');
      } else if (cls == CharClass::kLetter || cls == CharClass::kDigit ||
                 cls == CharClass::kZwnj) {
        out.push_back(b);
      } else {
        break;
      }
      ++i;
    }
  }
  return out;
}

std::u32string remove_mentions(const std::u32string& text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '@' && i + 1 < text.size() && is_ascii_alnum(text[i + 1])) {
      ++i;
      while (i < text.size() && (is_ascii_alnum(text[i]) || text[i] == '_' ||
                                 text[i] == '.')) {
        ++i;
      }
      continue;
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

std::u32string remove_links(const std::u32string& text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const bool boundary = i == 0 || !is_url_char(text[i - 1]);
    const bool scheme =
        starts_with_ci(text, i, "http://") || starts_with_ci(text, i, "https://");
    const bool www = boundary && starts_with_ci(text, i, "www.");
    if (scheme || www) {
      while (i < text.size() && classify(text[i]) != CharClass::kSpace) ++i;
      continue;
    }
    if (boundary && is_ascii_alnum(text[i])) {
      std::size_t end = i;
      while (end < text.size() && is_url_char(text[end])) ++end;
      std::size_t trimmed = end;
      while (trimmed > i && std::u32string_view(U".,;:!?)'").find(
                                text[trimmed - 1]) != std::u32string_view::npos) {
        --trimmed;
      }
      if (looks_like_domain(text, i, trimmed)) {
        i = trimmed;
        continue;
      }
      out.append(text, i, end - i);
      i = end;
      continue;
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

bool is_number_separator(char32_t c) {
  return c == '.' || c == ',' || c == '/' || c == 0x066B || c == 0x066C;
}

std::u32string parse_code_points(const std::string& field,
                                 const std::string& source, std::size_t line) {
  if (field.size() >= 3 && field[0] == 'U' && field[1] == '+') {
    std::size_t consumed = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(field.substr(2), &consumed, 16);
    } catch (const std::exception&) {
      throw DataError(source, line, "bad code point '" + field + "'");
    }
    if (consumed != field.size() - 2 || value > 0x10FFFF) {
      throw DataError(source, line, "bad code point '" + field + "'");
    }
    return std::u32string(1, static_cast<char32_t>(value));
  }
  return utf8::decode(field);
}

enum class TokenKind { kNone, kWord, kNumber, kPunct, kEmoji };

bool latin_only(const std::string& token) {
  bool any_latin = false;
  for (char32_t c : utf8::decode(token)) {
    if (is_arabic_script(c)) return false;
    if (is_latin_letter(c)) any_latin = true;
  }
  return any_latin;
}

}  // namespace

// ---------------------------------------------------------------------------
// CharMap / WordMap

CharMap CharMap::from_pairs(const std::vector<tables::TsvPair>& pairs,
                            const std::string& source) {
  CharMap map;
  for (const auto& pair : pairs) {
    const std::u32string from = parse_code_points(pair.first, source, pair.line);
    if (from.size() != 1) {
      throw DataError(source, pair.line, "source must be one code point");
    }
    std::u32string to;
    if (!pair.second.empty()) {
      to = parse_code_points(pair.second, source, pair.line);
    }
    if (to.size() == 1 && to[0] == from[0]) {
      throw DataError(source, pair.line, "character maps to itself");
    }
    if (map.contains(from[0])) {
      throw DataError(source, pair.line, "duplicate source character");
    }
    map.set(from[0], std::move(to));
  }
  return map;
}

CharMap CharMap::builtin() {
  return from_pairs(tables::parse_pairs(tables::unification_tsv(),
                                        "<builtin unification.tsv>", true),
                    "<builtin unification.tsv>");
}

void CharMap::set(char32_t from, std::u32string to) {
  map_[from] = std::move(to);
}

const std::u32string* CharMap::find(char32_t cp) const {
  auto it = map_.find(cp);
  return it == map_.end() ? nullptr : &it->second;
}

std::vector<char32_t> CharMap::sources() const {
  std::vector<char32_t> out;
  out.reserve(map_.size());
  for (const auto& [from, to] : map_) out.push_back(from);
  std::sort(out.begin(), out.end());
  return out;
}

WordMap WordMap::from_pairs(const std::vector<tables::TsvPair>& pairs,
                            const std::string& source) {
  WordMap map;
  for (const auto& pair : pairs) {
    if (pair.first.find(' ') != std::string::npos) {
      throw DataError(source, pair.line, "variant must be a single word");
    }
    auto tokens = tokenize(pair.second);
    if (tokens.empty()) {
      throw DataError(source, pair.line, "empty replacement");
    }
    if (!map.map_.emplace(pair.first, std::move(tokens)).second) {
      throw DataError(source, pair.line, "duplicate variant");
    }
  }
  return map;
}

WordMap WordMap::builtin() {
  return from_pairs(tables::parse_pairs(tables::polysyllabic_tsv(),
                                        "<builtin polysyllabic.tsv>"),
                    "<builtin polysyllabic.tsv>");
}

const std::vector<std::string>* WordMap::find(const std::string& word) const {
  auto it = map_.find(word);
  return it == map_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Normalizer

Normalizer::Normalizer(NormalizerConfig config)
    : Normalizer(config, CharMap::builtin(), WordMap::builtin()) {}

Normalizer::Normalizer(NormalizerConfig config, CharMap letters,
                       WordMap words)
    : config_(config), letters_(std::move(letters)) {
  if (config_.unify_hamza_alef) {
    for (char32_t c : {U'أ', U'إ', U'ٱ'}) {
      letters_.set(c, U"ا");
    }
  }
  if (config_.unify_hamza_carriers) {
    letters_.set(U'ئ', U"ی");
    letters_.set(U'ؤ', U"و");
  }
  for (char32_t from : letters_.sources()) {
    for (char32_t to : *letters_.find(from)) {
      if (letters_.contains(to)) {
        char name[16];
        std::snprintf(name, sizeof name, "U+%04X",
                      static_cast<unsigned>(from));
        throw DataError(std::string("letter map: target of ") + name +
                        " is itself mapped; mapping would not be stable");
      }
    }
  }
  // Bring the word table into the normalized alphabet so that lookups see the
  // same spelling the segmenter produces.
  for (auto& [variant, replacement] : words.map_) {
    std::string key = utf8::encode(map_chars(utf8::decode(variant)));
    std::vector<std::string> value;
    for (const auto& token : replacement) {
      value.push_back(utf8::encode(map_chars(utf8::decode(token))));
    }
    words_.map_[key] = std::move(value);
  }
  for (const auto& [variant, replacement] : words_.map_) {
    for (const auto& token : replacement) {
      if (words_.map_.count(token) != 0) {
        throw DataError("word map: replacement '" + token +
                        "' is itself a variant; unification would not be "
                        "stable");
      }
    }
  }
}

std::u32string Normalizer::strip_social(std::u32string text) const {
  // Each removal can expose a new match for another one ("h#ttp://..."), so
  // iterate to a fixed point. Every pass strictly shrinks the text.
  for (;;) {
    std::u32string next = remove_links(remove_mentions(remove_hashtag_markers(text)));
    if (next == text) return text;
    text = std::move(next);
  }
}

std::u32string Normalizer::map_chars(const std::u32string& text) const {
  std::u32string out;
  out.reserve(text.size());
  const bool to_persian = config_.digits == DigitScript::kPersian;
  for (char32_t c : text) {
    if (const auto* to = letters_.find(c)) {
      out.append(*to);
      continue;
    }
    if (in(c, 0x06F0, 0x06F9)) {
      out.push_back(to_persian ? c : U'0' + (c - 0x06F0));
    } else if (in(c, 0x0660, 0x0669)) {
      out.push_back(to_persian ? 0x06F0 + (c - 0x0660) : U'0' + (c - 0x0660));
    } else if (to_persian && in(c, '0', '9')) {
      out.push_back(0x06F0 + (c - U'0'));
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> Normalizer::segment(const std::u32string& text) const {
  std::vector<std::string> tokens;
  std::u32string current;
  TokenKind kind = TokenKind::kNone;
  bool pending_zwnj = false;

  auto flush = [&]() {
    if (kind == TokenKind::kEmoji) {
      while (!current.empty() && current.back() == 0x200D) current.pop_back();
      if (!config_.keep_emoji) current.clear();
    }
    if (!current.empty()) tokens.push_back(utf8::encode(current));
    current.clear();
    kind = TokenKind::kNone;
    pending_zwnj = false;
  };
  auto start = [&](TokenKind k) {
    if (kind != k) flush();
    kind = k;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    switch (classify(c)) {
      case CharClass::kSpace:
        flush();
        break;
      case CharClass::kIgnorable:
        break;
      case CharClass::kZwnj:
        if (kind == TokenKind::kWord) pending_zwnj = true;
        break;
      case CharClass::kLetter:
        if (kind == TokenKind::kWord) {
          if (pending_zwnj) current.push_back(utf8::kZwnj);
          pending_zwnj = false;
        } else {
          start(TokenKind::kWord);
        }
        current.push_back(c);
        break;
      case CharClass::kDigit:
        start(TokenKind::kNumber);
        current.push_back(c);
        break;
      case CharClass::kPunct:
        if (kind == TokenKind::kNumber && is_number_separator(c) &&
            i + 1 < text.size() && classify(text[i + 1]) == CharClass::kDigit) {
          current.push_back(c);
          break;
        }
        start(TokenKind::kPunct);
        current.push_back(c);
        break;
      case CharClass::kEmoji:
        start(TokenKind::kEmoji);
        current.push_back(c);
        break;
      case CharClass::kEmojiJoiner:
        if (kind == TokenKind::kEmoji) current.push_back(c);
        break;
    }
  }
  flush();
  return tokens;
}

NormalizedText Normalizer::normalize(std::string_view raw) const {
  const std::u32string stripped = strip_social(utf8::decode(raw));
  const std::vector<std::string> pieces = segment(map_chars(stripped));
  NormalizedText result;
  result.tokens.reserve(pieces.size());
  for (const auto& piece : pieces) {
    if (!config_.keep_latin && latin_only(piece)) continue;
    if (const auto* replacement = words_.find(piece)) {
      result.tokens.insert(result.tokens.end(), replacement->begin(),
                           replacement->end());
    } else {
      result.tokens.push_back(piece);
    }
  }
  result.content = join_tokens(result.tokens);
  return result;
}

std::vector<std::string> tokenize(std::string_view normalized) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    const auto space = normalized.find(' ', pos);
    const auto end = space == std::string_view::npos ? normalized.size() : space;
    if (end > pos) tokens.emplace_back(normalized.substr(pos, end - pos));
    pos = end + 1;
  }
  return tokens;
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<NormalizedText> normalize_lines(const Normalizer& normalizer,
                                            std::span<const std::string> lines) {
  std::vector<NormalizedText> out(lines.size());
  const auto n = static_cast<std::int64_t>(lines.size());
  // Exceptions must not escape an OpenMP region; remember the first failing
  // line and rethrow after the loop.
  std::int64_t first_bad = n;
  std::string message;
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[i] = normalizer.normalize(lines[i]);
    } catch (const DataError& e) {
#pragma omp critical(psc_normalize_error)
      if (i < first_bad) {
        first_bad = i;
        message = e.what();
      }
    }
  }
  if (first_bad < n) {
    throw DataError("line", static_cast<std::size_t>(first_bad) + 1, message);
  }
  return out;
}

}  // namespace psc
