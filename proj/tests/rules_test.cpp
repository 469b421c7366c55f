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

#include <gtest/gtest.h>

#include <set>

#include "psc/errors.hpp"
#include "test_support.hpp"

namespace psc {
namespace {

using ::psc::testing::fixture_engine;
using ::psc::testing::formal_fixture;
using ::psc::testing::join;
using ::psc::testing::separator_equivalent;

const std::string kZ = "‌";

class RulesTest : public ::testing::Test {
 protected:
  RuleEngine engine_ = fixture_engine();

  std::string Convert(RuleId rule, const std::string& word) {
    return join(engine_.apply(rule, word).output);
  }
  bool Applied(RuleId rule, const std::string& word) {
    return engine_.apply(rule, word).applied;
  }
};

TEST(SeparatorEquivalenceTest, HalfSpaceMayStandForPrintedSpace) {
  EXPECT_TRUE(separator_equivalent("می" + kZ + "کنی", "می کنی"));
  EXPECT_TRUE(separator_equivalent("خودم را", "خودم را"));
  // Tables often omit the half-space entirely.
  EXPECT_TRUE(separator_equivalent("دختر" + kZ + "ها", "دخترها"));
  // A real space where none is printed is a different output.
  EXPECT_FALSE(separator_equivalent("دختر ها", "دخترها"));
  EXPECT_FALSE(separator_equivalent("دخترها", "دختر ها"));
  EXPECT_FALSE(separator_equivalent("می" + kZ + "کند", "می کنی"));
}

TEST_F(RulesTest, PrintedPairsConvert) {
  const auto pairs = testing::golden_pairs();
  ASSERT_GE(pairs.size(), 56u);
  for (const auto& pair : pairs) {
    const RuleOutcome outcome = engine_.apply(pair.rule, pair.slang);
    const std::string got = join(outcome.output);
    EXPECT_TRUE(outcome.applied) << rule_name(pair.rule) << " " << pair.slang;
    EXPECT_TRUE(separator_equivalent(got, pair.formal))
        << rule_name(pair.rule) << ": " << pair.slang << " -> " << got
        << ", expected " << pair.formal;
  }
}

TEST_F(RulesTest, DirectLookupAndMiss) {
  EXPECT_EQ(Convert(RuleId::kDirect, "یه"), "یک");
  EXPECT_EQ(Convert(RuleId::kDirect, "واسه"), "برای");
  EXPECT_FALSE(Applied(RuleId::kDirect, "کتاب"));
  EXPECT_EQ(Convert(RuleId::kDirect, "کتاب"), "کتاب");
}

TEST_F(RulesTest, VavToRaNeedsValidStem) {
  EXPECT_EQ(Convert(RuleId::kVavToRa, "خودمو"), "خودم را");
  EXPECT_EQ(Convert(RuleId::kVavToRa, "اینجارو"), "اینجا را");
  // «پرت» is not a known formal word.
  EXPECT_FALSE(Applied(RuleId::kVavToRa, "پرتو"));
  EXPECT_FALSE(Applied(RuleId::kVavToRa, "رو"));
}

TEST_F(RulesTest, StandaloneRoIsOptIn) {
  RuleEngine engine(Lexicon::builtin(), formal_fixture(),
                    IrregularStems::builtin(), RuleOptions{2, true});
  EXPECT_EQ(join(engine.apply(RuleId::kVavToRa, "رو").output), "را");
}

TEST_F(RulesTest, OonToAanHandlesClitics) {
  EXPECT_EQ(Convert(RuleId::kOonToAan, "آقایون"), "آقایان");
  EXPECT_EQ(Convert(RuleId::kOonToAan, "یکیشون"), "یکیشان");
  EXPECT_FALSE(Applied(RuleId::kOonToAan, "کتاب"));
  // Result must be a known formal word.
  EXPECT_FALSE(Applied(RuleId::kOonToAan, "خیابون"));
}

TEST_F(RulesTest, PluralNeedsValidStem) {
  EXPECT_EQ(Convert(RuleId::kPlural, "دخترا"), "دختر" + kZ + "ها");
  EXPECT_EQ(Convert(RuleId::kPlural, "حرفای"), "حرف" + kZ + "های");
  EXPECT_EQ(Convert(RuleId::kPlural, "بهترینها"), "بهترین" + kZ + "ها");
  // «بال» is not in the fixture.
  EXPECT_FALSE(Applied(RuleId::kPlural, "بالا"));
  EXPECT_FALSE(Applied(RuleId::kPlural, "دختر" + kZ + "ها"));
}

TEST_F(RulesTest, LetterRepetition) {
  EXPECT_EQ(Convert(RuleId::kLetterRepetition, "خخخخ"), "خ");
  EXPECT_EQ(Convert(RuleId::kLetterRepetition, "جووون"), "جون");
  EXPECT_EQ(Convert(RuleId::kLetterRepetition, "عاالی"), "عالی");
  // Doubles stay unless the collapsed word is known.
  EXPECT_FALSE(Applied(RuleId::kLetterRepetition, "الله"));
  EXPECT_FALSE(Applied(RuleId::kLetterRepetition, "ببر"));
  // Latin and digits are not collapsed.
  EXPECT_FALSE(Applied(RuleId::kLetterRepetition, "1000"));
}

TEST_F(RulesTest, ColloquialVerb) {
  EXPECT_EQ(Convert(RuleId::kColloquialVerb, "میکنی"), "می" + kZ + "کنی");
  EXPECT_EQ(Convert(RuleId::kColloquialVerb, "نکنه"), "نکند");
  EXPECT_EQ(Convert(RuleId::kColloquialVerb, "میخوان"),
            "می" + kZ + "خواهند");
  EXPECT_EQ(Convert(RuleId::kColloquialVerb, "نمیده"), "نمی" + kZ + "دهد");
  EXPECT_FALSE(Applied(RuleId::kColloquialVerb, "می" + kZ + "کنی"));
  EXPECT_FALSE(Applied(RuleId::kColloquialVerb, "میز"));
}

TEST_F(RulesTest, Possessive) {
  EXPECT_EQ(Convert(RuleId::kPossessivePronoun, "هوام"), "هوایم");
  EXPECT_EQ(Convert(RuleId::kPossessivePronoun, "قیافش"), "قیافه" + kZ + "اش");
  EXPECT_EQ(Convert(RuleId::kPossessivePronoun, "قیافاش"),
            "قیافه" + kZ + "اش");
  EXPECT_EQ(Convert(RuleId::kPossessivePronoun, "همسایمون"),
            "همسایه" + kZ + "مان");
  EXPECT_FALSE(Applied(RuleId::kPossessivePronoun, "کتاب"));
}

TEST_F(RulesTest, ProbableTypoRowTargetsTheSensibleForm) {
  // Printed as «شبستان», which is a different word.
  EXPECT_EQ(Convert(RuleId::kPossessivePronoun, "شبتون"), "شبتان");
}

TEST_F(RulesTest, OutcomeInvariants) {
  std::set<std::string> words;
  for (const auto& pair : testing::golden_pairs()) words.insert(pair.slang);
  for (const auto& w : testing::read_lines(
           testing::fixture_path("formal_vocab.txt"))) {
    words.insert(w);
  }
  for (const auto& word : words) {
    for (RuleId rule : kAllRules) {
      const RuleOutcome o = engine_.apply(rule, word);
      EXPECT_EQ(o.input, word);
      EXPECT_EQ(o.rule, rule);
      if (!o.applied) {
        EXPECT_EQ(o.output, std::vector<std::string>{word});
        continue;
      }
      EXPECT_NE(o.output, std::vector<std::string>{word});
      EXPECT_EQ(o, engine_.apply(rule, word)) << "not deterministic";
    }
  }
}

// Every emitted word of a validated rule is a known formal word, apart from
// the «را» particle.
TEST_F(RulesTest, ValidatedRulesOnlyEmitKnownWords) {
  const auto& formal = *formal_fixture();
  std::set<std::string> words;
  for (const auto& pair : testing::golden_pairs()) words.insert(pair.slang);
  for (const char* w : {"خیابونم", "بالا", "پرتو", "میز", "دخترها", "عاالی",
                        "چشمامون", "کتابا", "نمیرن", "واای"}) {
    words.insert(w);
  }
  for (const auto& word : words) {
    for (RuleId rule : {RuleId::kVavToRa, RuleId::kOonToAan, RuleId::kPlural,
                        RuleId::kColloquialVerb, RuleId::kPossessivePronoun}) {
      const RuleOutcome o = engine_.apply(rule, word);
      if (!o.applied) continue;
      for (const auto& token : o.output) {
        if (token == "را") continue;
        // Plural outputs are validated on the stem.
        if (rule == RuleId::kPlural) {
          const auto cut = token.rfind("‌");
          ASSERT_NE(cut, std::string::npos);
          EXPECT_TRUE(formal.contains(token.substr(0, cut))) << token;
          continue;
        }
        EXPECT_TRUE(formal.contains(token))
            << rule_name(rule) << ": " << word << " -> " << token;
      }
    }
  }
}

TEST(LexiconTest, RejectsBadTables) {
  using tables::parse_pairs;
  EXPECT_THROW(Lexicon::from_pairs(parse_pairs("یه\tیه\n", "x"), "x"),
               DataError);
  EXPECT_THROW(
      Lexicon::from_pairs(parse_pairs("یه\tیک\nیه\tیکی\n", "x"), "x"),
      DataError);
  // A replacement that is itself a key would need a second pass.
  EXPECT_THROW(
      Lexicon::from_pairs(parse_pairs("الف\tب\nب\tپ\n", "x"), "x"),
      DataError);
  const auto lex = Lexicon::from_pairs(parse_pairs("خودمو\tخودم را\n", "x"), "x");
  ASSERT_NE(lex.lookup("خودمو"), nullptr);
  EXPECT_EQ(*lex.lookup("خودمو"), (std::vector<std::string>{"خودم", "را"}));
}

TEST(LexiconTest, BuiltinSeedHasTheTopTen) {
  const auto lex = Lexicon::builtin();
  EXPECT_GE(lex.size(), 10u);
  for (const char* w : {"یه", "باشه", "دیگه", "داره", "میشه", "اگه", "میکنه",
                        "بشه", "واسه", "آره"}) {
    EXPECT_NE(lex.lookup(w), nullptr) << w;
  }
}

TEST(FormalValidatorTest, MinCount) {
  TermFrequencyTable formal;
  formal.add("کتاب", 3);
  EXPECT_TRUE(FormalValidator(formal, 3).accepts("کتاب"));
  EXPECT_FALSE(FormalValidator(formal, 4).accepts("کتاب"));
  EXPECT_THROW(FormalValidator(formal, 0), UsageError);
}

}  // namespace
}  // namespace psc
