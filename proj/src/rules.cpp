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

#include "psc/rules.hpp"

#include "psc/errors.hpp"
#include "psc/normalizer.hpp"
#include "psc/utf8.hpp"

namespace psc {
namespace {

using std::string;
using std::string_view;

constexpr string_view kZwnj = utf8::kZwnjUtf8;
constexpr string_view kRa = "را";

std::size_t letters(string_view s) { return utf8::length(s); }

string_view drop_suffix(string_view word, string_view suffix) {
  return word.substr(0, word.size() - suffix.size());
}

string concat(std::initializer_list<string_view> parts) {
  string out;
  for (auto p : parts) out.append(p);
  return out;
}

bool ends_with_any(string_view s, std::initializer_list<string_view> suffixes) {
  for (auto suffix : suffixes) {
    if (s.ends_with(suffix)) return true;
  }
  return false;
}

bool usable_stem(string_view stem, const RuleOptions& options) {
  return letters(stem) >= options.min_stem_letters && !stem.ends_with(kZwnj);
}

// Arabic-script letters; repetition collapsing only looks at these.
bool is_arabic_letter(char32_t c) {
  return (c >= 0x0621 && c <= 0x064A) || (c >= 0x066E && c <= 0x06D3) ||
         c == 0x06D5 || (c >= 0x06FA && c <= 0x06FF);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view rule_name(RuleId rule) {
  switch (rule) {
    case RuleId::kDirect:
      return "direct";
    case RuleId::kVavToRa:
      return "vav_to_ra";
    case RuleId::kOonToAan:
      return "oon_to_aan";
    case RuleId::kPlural:
      return "plural";
    case RuleId::kLetterRepetition:
      return "letter_repetition";
    case RuleId::kColloquialVerb:
      return "colloquial_verb";
    case RuleId::kPossessivePronoun:
      return "possessive_pronoun";
  }
  return "direct";
}

std::optional<RuleId> parse_rule(std::string_view name) {
  for (RuleId rule : kAllRules) {
    if (rule_name(rule) == name) return rule;
  }
  return std::nullopt;
}

RuleOutcome RuleOutcome::unchanged(std::string_view word, RuleId rule) {
  return RuleOutcome{string(word), {string(word)}, rule, false};
}

RuleOutcome RuleOutcome::converted(std::string_view word,
                                   std::vector<std::string> output,
                                   RuleId rule) {
  if (output.size() == 1 && output[0] == word) return unchanged(word, rule);
  return RuleOutcome{string(word), std::move(output), rule, true};
}

// ---------------------------------------------------------------------------
// Resources

Lexicon Lexicon::from_pairs(const std::vector<tables::TsvPair>& pairs,
                            const std::string& source) {
  Lexicon lexicon;
  for (const auto& pair : pairs) {
    if (pair.first.find(' ') != string::npos) {
      throw DataError(source, pair.line, "slang entry must be a single token");
    }
    auto tokens = tokenize(pair.second);
    if (tokens.empty()) {
      throw DataError(source, pair.line, "empty replacement");
    }
    if (tokens.size() == 1 && tokens[0] == pair.first) {
      throw DataError(source, pair.line,
                      "'" + pair.first + "' is mapped to itself");
    }
    if (!lexicon.index_.emplace(pair.first, std::move(tokens)).second) {
      throw DataError(source, pair.line,
                      "duplicate slang entry '" + pair.first + "'");
    }
    lexicon.entries_.emplace_back(pair.first, pair.second);
  }
  for (const auto& pair : pairs) {
    for (const auto& token : lexicon.index_.at(pair.first)) {
      if (lexicon.index_.count(token) != 0) {
        throw DataError(source, pair.line,
                        "replacement token '" + token +
                            "' is itself a slang entry");
      }
    }
  }
  return lexicon;
}

Lexicon Lexicon::builtin() {
  const std::string source = "<builtin lexicon_seed.tsv>";
  return from_pairs(tables::parse_pairs(tables::lexicon_seed_tsv(), source),
                    source);
}

const std::vector<std::string>* Lexicon::lookup(std::string_view word) const {
  auto it = index_.find(word);
  return it == index_.end() ? nullptr : &it->second;
}

FormalValidator::FormalValidator(const TermFrequencyTable& formal,
                                 std::uint64_t min_count)
    : formal_(&formal), min_count_(min_count) {
  if (min_count_ == 0) throw UsageError("validator min_count must be >= 1");
}

IrregularStems IrregularStems::from_pairs(
    const std::vector<tables::TsvPair>& pairs, const std::string& source) {
  IrregularStems stems;
  for (const auto& pair : pairs) {
    if (pair.first.find(' ') != string::npos ||
        pair.second.find(' ') != string::npos) {
      throw DataError(source, pair.line, "stems must be single tokens");
    }
    if (!stems.map_.emplace(pair.first, pair.second).second) {
      throw DataError(source, pair.line, "duplicate stem '" + pair.first + "'");
    }
  }
  return stems;
}

IrregularStems IrregularStems::builtin() {
  const std::string source = "<builtin irregular_stems.tsv>";
  return from_pairs(tables::parse_pairs(tables::irregular_stems_tsv(), source),
                    source);
}

const std::string* IrregularStems::find(std::string_view stem) const {
  auto it = map_.find(stem);
  return it == map_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Rules

RuleOutcome apply_direct(std::string_view word, const Lexicon& lexicon) {
  if (const auto* replacement = lexicon.lookup(word)) {
    return RuleOutcome::converted(word, *replacement, RuleId::kDirect);
  }
  return RuleOutcome::unchanged(word, RuleId::kDirect);
}

RuleOutcome apply_vav_to_ra(std::string_view word,
                            const FormalValidator& validator,
                            const RuleOptions& options) {
  constexpr RuleId kRule = RuleId::kVavToRa;
  if (options.standalone_ro && word == "رو") {
    return RuleOutcome::converted(word, {string(kRa)}, kRule);
  }
  for (string_view suffix : {string_view("رو"), string_view("و")}) {
    if (!word.ends_with(suffix)) continue;
    const string_view stem = drop_suffix(word, suffix);
    if (usable_stem(stem, options) && validator.accepts(stem)) {
      return RuleOutcome::converted(word, {string(stem), string(kRa)}, kRule);
    }
  }
  return RuleOutcome::unchanged(word, kRule);
}

RuleOutcome apply_oon_to_aan(std::string_view word,
                             const FormalValidator& validator,
                             const RuleOptions& options) {
  constexpr RuleId kRule = RuleId::kOonToAan;
  for (string_view clitic : {"", "م", "ت", "ش"}) {
    const string suffix = concat({"ون", clitic});
    if (!word.ends_with(suffix)) continue;
    const string_view stem = drop_suffix(word, suffix);
    if (!usable_stem(stem, options)) continue;
    string candidate = concat({stem, "ان", clitic});
    if (validator.accepts(candidate)) {
      return RuleOutcome::converted(word, {std::move(candidate)}, kRule);
    }
  }
  return RuleOutcome::unchanged(word, kRule);
}

RuleOutcome apply_plural(std::string_view word,
                         const FormalValidator& validator,
                         const RuleOptions& options) {
  constexpr RuleId kRule = RuleId::kPlural;
  // Already-formal plurals are left alone.
  if (word.ends_with(concat({kZwnj, "ها"})) ||
      word.ends_with(concat({kZwnj, "های"}))) {
    return RuleOutcome::unchanged(word, kRule);
  }
  struct Form {
    string_view colloquial;
    string_view formal;
  };
  // Attached «ها»/«های» only need the half-space; «ا»/«ای» are the spoken
  // plural endings.
  for (const Form form : {Form{"های", "های"}, Form{"ها", "ها"},
                          Form{"ای", "های"}, Form{"ا", "ها"}}) {
    if (!word.ends_with(form.colloquial)) continue;
    const string_view stem = drop_suffix(word, form.colloquial);
    if (usable_stem(stem, options) && validator.accepts(stem)) {
      return RuleOutcome::converted(word, {concat({stem, kZwnj, form.formal})},
                                    kRule);
    }
  }
  return RuleOutcome::unchanged(word, kRule);
}

RuleOutcome apply_letter_repetition(std::string_view word,
                                    const FormalValidator& validator) {
  constexpr RuleId kRule = RuleId::kLetterRepetition;
  const std::u32string text = utf8::decode(word);
  std::u32string long_runs;  // runs >= 3 collapsed
  std::u32string all_runs;   // runs >= 2 collapsed
  bool has_double = false;
  for (std::size_t i = 0; i < text.size();) {
    std::size_t j = i + 1;
    if (is_arabic_letter(text[i])) {
      while (j < text.size() && text[j] == text[i]) ++j;
    }
    const std::size_t run = j - i;
    all_runs.push_back(text[i]);
    if (run >= 3) {
      long_runs.push_back(text[i]);
    } else {
      long_runs.append(run, text[i]);
      if (run == 2) has_double = true;
    }
    i = j;
  }
  string result = utf8::encode(long_runs);
  if (has_double) {
    string collapsed = utf8::encode(all_runs);
    if (validator.accepts(collapsed) && !validator.accepts(result)) {
      result = std::move(collapsed);
    }
  }
  return RuleOutcome::converted(word, {std::move(result)}, kRule);
}

namespace {

struct Ending {
  string_view colloquial;
  string_view formal;
};

// Personal endings, longest first.
constexpr std::array<Ending, 8> kEndings = {{
    {"ین", "ید"},
    {"یم", "یم"},
    {"ید", "ید"},
    {"ن", "ند"},
    {"ه", "د"},
    {"د", "د"},
    {"م", "م"},
    {"ی", "ی"},
}};

// Endings whose spoken form differs from the written one.
constexpr std::array<Ending, 3> kChangedEndings = {{
    {"ین", "ید"},
    {"ه", "د"},
    {"ن", "ند"},
}};

}  // namespace

RuleOutcome apply_colloquial_verb(std::string_view word,
                                  const FormalValidator& validator,
                                  const IrregularStems& stems,
                                  const RuleOptions& options) {
  constexpr RuleId kRule = RuleId::kColloquialVerb;
  struct Parse {
    string prefix;  // formal spelling of the prefix, ZWNJ included
    string_view rest;
  };
  std::vector<Parse> parses;
  for (string_view prefix : {string_view("نمی"), string_view("می")}) {
    if (!word.starts_with(prefix)) continue;
    string_view rest = word.substr(prefix.size());
    if (rest.starts_with(kZwnj)) rest.remove_prefix(kZwnj.size());
    if (letters(rest) >= options.min_stem_letters) {
      parses.push_back({concat({prefix, kZwnj}), rest});
    }
  }
  for (string_view prefix : {string_view("ب"), string_view("ن")}) {
    if (!word.starts_with(prefix)) continue;
    const string_view rest = word.substr(prefix.size());
    if (letters(rest) >= options.min_stem_letters && !rest.starts_with(kZwnj)) {
      parses.push_back({string(prefix), rest});
    }
  }

  for (const Parse& parse : parses) {
    std::vector<string> candidates;
    for (const Ending& e : kEndings) {
      if (!parse.rest.ends_with(e.colloquial) ||
          parse.rest.size() == e.colloquial.size()) {
        continue;
      }
      if (const string* formal = stems.find(drop_suffix(parse.rest, e.colloquial))) {
        candidates.push_back(concat({parse.prefix, *formal, e.formal}));
      }
    }
    for (const Ending& e : kChangedEndings) {
      if (parse.rest.ends_with(e.colloquial) &&
          parse.rest.size() > e.colloquial.size()) {
        candidates.push_back(concat(
            {parse.prefix, drop_suffix(parse.rest, e.colloquial), e.formal}));
      }
    }
    candidates.push_back(concat({parse.prefix, parse.rest}));
    for (auto& candidate : candidates) {
      if (candidate != word && validator.accepts(candidate)) {
        return RuleOutcome::converted(word, {std::move(candidate)}, kRule);
      }
    }
  }
  return RuleOutcome::unchanged(word, kRule);
}

RuleOutcome apply_possessive(std::string_view word,
                             const FormalValidator& validator,
                             const RuleOptions& options) {
  constexpr RuleId kRule = RuleId::kPossessivePronoun;
  auto accept = [&](const string& candidate) {
    return candidate != word && validator.accepts(candidate);
  };
  auto done = [&](string candidate) {
    return RuleOutcome::converted(word, {std::move(candidate)}, kRule);
  };
  // «ی» is left out: stem-final it is usually the glide of a lost «ه»
  // («همسای» for «همسایه»).
  auto ends_in_vowel = [](string_view s) {
    return ends_with_any(s, {"ا", "و", "ه"});
  };

  // Plural clitics: «مون/تون/شون» -> «مان/تان/شان».
  for (const Ending clitic : {Ending{"مون", "مان"}, Ending{"تون", "تان"},
                              Ending{"شون", "شان"}}) {
    if (!word.ends_with(clitic.colloquial)) continue;
    const string_view stem = drop_suffix(word, clitic.colloquial);
    if (!usable_stem(stem, options)) continue;
    if (ends_with_any(stem, {"ا", "و"})) {
      if (string c = concat({stem, "ی", clitic.formal}); accept(c)) return done(c);
    }
    if (stem.ends_with("ا") && usable_stem(drop_suffix(stem, "ا"), options)) {
      string c = concat({drop_suffix(stem, "ا"), kZwnj, "های", clitic.formal});
      if (accept(c)) return done(c);
    }
    if (string c = concat({stem, clitic.formal}); accept(c)) return done(c);
    if (!ends_in_vowel(stem) && validator.accepts(concat({stem, "ه"}))) {
      if (string c = concat({stem, "ه", kZwnj, clitic.formal}); accept(c)) {
        return done(c);
      }
    }
  }

  // Singular clitics «م/ت/ش».
  for (string_view clitic : {"م", "ت", "ش"}) {
    if (!word.ends_with(clitic)) continue;
    const string_view stem = drop_suffix(word, clitic);
    if (!usable_stem(stem, options)) continue;
    const bool long_vowel_end = ends_with_any(stem, {"ا", "و"});
    if (long_vowel_end) {
      if (string c = concat({stem, "ی", clitic}); accept(c)) return done(c);
    }
    // Spoken plural before the clitic: «چشمات» -> «چشم‌هایت».
    if (stem.ends_with("ا") && usable_stem(drop_suffix(stem, "ا"), options)) {
      string c = concat({drop_suffix(stem, "ا"), kZwnj, "های", clitic});
      if (accept(c)) return done(c);
    }
    // Dropped final «ه»: «قیافش» -> «قیافه‌اش».
    if (!ends_in_vowel(stem) && validator.accepts(concat({stem, "ه"}))) {
      if (string c = concat({stem, "ه", kZwnj, "ا", clitic}); accept(c)) {
        return done(c);
      }
    }
    // Clitic fused with an identical stem-final letter: «شیش» -> «شیشه‌اش».
    if (validator.accepts(concat({word, "ه"}))) {
      if (string c = concat({word, "ه", kZwnj, "ا", clitic}); accept(c)) {
        return done(c);
      }
    }
    // Copular «م» after a vowel: «اینجام» -> «اینجا».
    if (clitic == "م" && long_vowel_end && accept(string(stem))) {
      return done(string(stem));
    }
  }

  // Written «اش/ام/ات» after a stem that lost its «ه»: «قیافاش».
  for (string_view clitic : {"اش", "ام", "ات"}) {
    if (!word.ends_with(clitic)) continue;
    const string_view stem = drop_suffix(word, clitic);
    if (!usable_stem(stem, options) || ends_in_vowel(stem)) continue;
    if (validator.accepts(concat({stem, "ه"}))) {
      if (string c = concat({stem, "ه", kZwnj, clitic}); accept(c)) {
        return done(c);
      }
    }
  }
  return RuleOutcome::unchanged(word, kRule);
}

// ---------------------------------------------------------------------------

RuleEngine::RuleEngine(Lexicon lexicon,
                       std::shared_ptr<const TermFrequencyTable> formal,
                       IrregularStems stems, RuleOptions options,
                       std::uint64_t min_count)
    : lexicon_(std::make_shared<const Lexicon>(std::move(lexicon))),
      formal_(formal ? std::move(formal)
                     : std::make_shared<const TermFrequencyTable>()),
      stems_(std::make_shared<const IrregularStems>(std::move(stems))),
      options_(options),
      validator_(*formal_, min_count) {}

RuleOutcome RuleEngine::apply(RuleId rule, std::string_view word) const {
  switch (rule) {
    case RuleId::kDirect:
      return apply_direct(word, *lexicon_);
    case RuleId::kVavToRa:
      return apply_vav_to_ra(word, validator_, options_);
    case RuleId::kOonToAan:
      return apply_oon_to_aan(word, validator_, options_);
    case RuleId::kPlural:
      return apply_plural(word, validator_, options_);
    case RuleId::kLetterRepetition:
      return apply_letter_repetition(word, validator_);
    case RuleId::kColloquialVerb:
      return apply_colloquial_verb(word, validator_, *stems_, options_);
    case RuleId::kPossessivePronoun:
      return apply_possessive(word, validator_, options_);
  }
  return RuleOutcome::unchanged(word, rule);
}

}  // namespace psc
