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

#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "json.hpp"
#include "psc/digest.hpp"
#include "test_support.hpp"

namespace psc {
namespace {

using testing::CommandResult;
using testing::read_file;
using testing::shell_quote;
using testing::TempDir;
using testing::write_file;

CommandResult Psc(const std::string& args) {
  return testing::run_command(shell_quote(PSC_CLI_PATH) + " " + args);
}

std::string Q(const std::string& path) { return shell_quote(path); }

std::string Corpus(const std::string& name) {
  return testing::fixture_path("corpus/" + name);
}

class CliTest : public ::testing::Test {
 protected:
  TempDir dir_;
};

TEST_F(CliTest, NormalizeWritesOutputAndManifest) {
  write_file(dir_.file("a.txt"), "يه روز   خوبي بود 😂 @ali\n\nكتاب\n");
  const auto r = Psc("normalize --in " + Q(dir_.file("a.txt")) + " --out " +
                     Q(dir_.file("b.txt")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(read_file(dir_.file("b.txt")), "یه روز خوبی بود 😂\n\nکتاب\n");
  const auto manifest =
      nlohmann::json::parse(read_file(dir_.file("b.txt.manifest.json")));
  EXPECT_EQ(manifest["subcommand"], "normalize");
  EXPECT_EQ(manifest["inputs"][0]["sha256"],
            sha256_hex(read_file(dir_.file("a.txt"))));
  for (const char* key : {"config", "seed", "version", "duration_seconds"}) {
    EXPECT_TRUE(manifest.contains(key)) << key;
  }
}

TEST_F(CliTest, NormalizeIsPipeFriendly) {
  const auto r = testing::run_command("printf 'كتاب ي\\n' | " +
                                      shell_quote(PSC_CLI_PATH) + " normalize");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "کتاب ی\n");
}

TEST_F(CliTest, NormalizeJsonl) {
  write_file(dir_.file("a.jsonl"), "{\"id\":1,\"text\":\"كتاب   ي\"}\n");
  const auto r = Psc("normalize --jsonl --in " + Q(dir_.file("a.jsonl")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto obj = nlohmann::json::parse(r.out);
  EXPECT_EQ(obj["id"], 1);
  EXPECT_EQ(obj["text"], "کتاب ی");
  write_file(dir_.file("b.jsonl"), "{\"text\":\"x\"}\n{\"id\":2}\n");
  const auto bad = Psc("normalize --jsonl --in " + Q(dir_.file("b.jsonl")));
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_NE(bad.err.find("b.jsonl:2:"), std::string::npos) << bad.err;
}

TEST_F(CliTest, UnknownFlagIsAUsageError) {
  const auto r = Psc("normalize --no-such-flag");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("--no-such-flag"), std::string::npos);
  EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
  EXPECT_EQ(Psc("").exit_code, 1);
  EXPECT_EQ(Psc("frobnicate").exit_code, 1);
}

TEST_F(CliTest, HelpAndVersionSucceed) {
  EXPECT_EQ(Psc("--help").exit_code, 0);
  const auto v = Psc("--version");
  ASSERT_EQ(v.exit_code, 0);
  EXPECT_EQ(v.out.rfind("psc " PSC_VERSION "\n", 0), 0u) << v.out;
  for (const char* table : {"unification.tsv", "polysyllabic.tsv",
                            "lexicon_seed.tsv", "irregular_stems.tsv"}) {
    const std::string digest =
        sha256_hex(read_file(std::string(PSC_DATA_DIR) + "/" + table));
    EXPECT_NE(v.out.find(std::string(table) + " sha256:" + digest),
              std::string::npos)
        << table;
  }
}

TEST_F(CliTest, PureSlangRejectsFormalDomainSlangTable) {
  write_file(dir_.file("slang.tsv"),
             "#domain\tformal\n#unique_words\t1\ttotal_frequency\t4\nیه\t4\n");
  write_file(dir_.file("formal.tsv"),
             "#domain\tformal\n#unique_words\t1\ttotal_frequency\t1\nیک\t1\n");
  const auto r = Psc("pure-slang --slang " + Q(dir_.file("slang.tsv")) +
                     " --formal " + Q(dir_.file("formal.tsv")));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("domain 'formal'"), std::string::npos) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST_F(CliTest, MalformedTsvReportsFileAndLine) {
  write_file(dir_.file("bad.tsv"),
             "#domain\tslang\n#unique_words\t2\ttotal_frequency\t3\nیه\t2\nبد\n");
  const auto r = Psc("top --in " + Q(dir_.file("bad.tsv")));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("bad.tsv:4:"), std::string::npos) << r.err;
}

TEST_F(CliTest, LabeledTabInTextIsADataError) {
  write_file(dir_.file("l.tsv"), "positive\tok\nnegative\tan\textra\ttab\tx\n");
  const auto r = Psc("split --in " + Q(dir_.file("l.tsv")) + " --out-dir " +
                     Q(dir_.file("s")));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("l.tsv:2:"), std::string::npos) << r.err;
}

TEST_F(CliTest, InsufficientClassIsADataError) {
  const auto r = Psc("split --in " + Q(Corpus("labeled.tsv")) +
                     " --per-class 100000 --out-dir " + Q(dir_.file("s")));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("negative"), std::string::npos) << r.err;
}

TEST_F(CliTest, BadRuleNameIsAUsageError) {
  write_file(dir_.file("f.tsv"),
             "#domain\tformal\n#unique_words\t1\ttotal_frequency\t1\nیک\t1\n");
  const auto r = Psc("convert --formal-tf " + Q(dir_.file("f.tsv")) +
                     " --rules direct,bogus --in /dev/null");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("bogus"), std::string::npos) << r.err;
}

TEST_F(CliTest, ThreadCountDoesNotChangeOutputs) {
  const std::string slang = Q(Corpus("slang.txt"));
  const auto a = Psc("--threads 1 build-tf --normalize --domain slang --in " +
                     slang);
  const auto b = Psc("--threads 3 build-tf --normalize --domain slang --in " +
                     slang);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Psc("--threads 0 top").exit_code, 1);
}

TEST_F(CliTest, SplitIsDeterministic) {
  for (const char* name : {"s1", "s2"}) {
    const auto r = Psc("split --seed 5 --in " + Q(Corpus("labeled.tsv")) +
                       " --out-dir " + Q(dir_.file(name)));
    ASSERT_EQ(r.exit_code, 0) << r.err;
  }
  for (const char* part : {"train.tsv", "validation.tsv", "test.tsv"}) {
    EXPECT_EQ(read_file(dir_.file(std::string("s1/") + part)),
              read_file(dir_.file(std::string("s2/") + part)));
  }
  const auto manifest =
      nlohmann::json::parse(read_file(dir_.file("s1/manifest.json")));
  EXPECT_EQ(manifest["seed"], 5);
}

TEST_F(CliTest, EvalRequiresMatchingConversionSetting) {
  const std::string formal = dir_.file("formal.tsv");
  ASSERT_EQ(Psc("build-tf --normalize --domain formal --in " +
                Q(Corpus("formal.txt")) + " --out " + Q(formal))
                .exit_code,
            0);
  write_file(dir_.file("psc.json"), "{\"formal_tf\": \"formal.tsv\"}");
  const auto t = Psc("train --hash-bits 12 --train " + Q(Corpus("labeled.tsv")) +
                     " --psc " + Q(dir_.file("psc.json")) + " --model " +
                     Q(dir_.file("m.txt")));
  ASSERT_EQ(t.exit_code, 0) << t.err;
  const auto without = Psc("eval --model " + Q(dir_.file("m.txt")) +
                           " --test " + Q(Corpus("labeled.tsv")));
  EXPECT_EQ(without.exit_code, 1);
  const auto with = Psc("eval --json --model " + Q(dir_.file("m.txt")) +
                        " --test " + Q(Corpus("labeled.tsv")) + " --psc " +
                        Q(dir_.file("psc.json")));
  ASSERT_EQ(with.exit_code, 0) << with.err;
  EXPECT_GT(nlohmann::json::parse(with.out)["accuracy"].get<double>(), 0.5);

  write_file(dir_.file("bad.json"), "{\"formal_tf\": \"formal.tsv\", \"x\": 1}");
  EXPECT_EQ(Psc("ablate --psc " + Q(dir_.file("bad.json")) + " --in " +
                Q(Corpus("labeled.tsv")))
                .exit_code,
            2);
}

TEST_F(CliTest, ReportRoundingFlag) {
  write_file(dir_.file("pure.tsv"),
             "#domain\tpure_slang\n#unique_words\t3\ttotal_frequency\t3\n"
             "یه\t1\nخخخ\t1\nکتاب\t1\n");
  write_file(dir_.file("f.tsv"),
             "#domain\tformal\n#unique_words\t1\ttotal_frequency\t1\nکتاب\t1\n");
  const std::string base = "report --pure-slang " + Q(dir_.file("pure.tsv")) +
                           " --formal-tf " + Q(dir_.file("f.tsv"));
  const auto cut = Psc(base);
  const auto near = Psc(base + " --rounding half_up");
  ASSERT_EQ(cut.exit_code, 0) << cut.err;
  ASSERT_EQ(near.exit_code, 0) << near.err;
  const auto a = nlohmann::json::parse(cut.out);
  const auto b = nlohmann::json::parse(near.out);
  EXPECT_DOUBLE_EQ(a["rows"].back()["ucw_pct"].get<double>(), 66.66);
  EXPECT_DOUBLE_EQ(b["rows"].back()["ucw_pct"].get<double>(), 66.67);
  EXPECT_EQ(Psc(base + " --rounding bankers").exit_code, 1);
}

}  // namespace
}  // namespace psc
