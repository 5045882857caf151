//
// Copyright 2026 The fairembed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cli.h"

#include <chrono>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "fairembed/corpus.h"
#include "fairembed/swap_rules.h"
#include "fairembed/text_util.h"
#include "fairembed/tokenizer.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "test_util.h"

namespace fairembed {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir("cli");
    const Result r = Invoke({"synth", "--seed", "3", "--per-cell", "24", "--out", dir_->path()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    dir_->Write("fast.json", R"({"grid": {"svm": {"C": [1], "kernel": ["linear"]}},
                                 "train_per_cell": 12})");
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }

  static std::string F(const std::string& name) { return dir_->File(name); }

  static testing::TempDir* dir_;
};

testing::TempDir* CliTest::dir_ = nullptr;

TEST_F(CliTest, SynthWritesFixtureFiles) {
  for (const char* name : {"corpus.jsonl", "embedding.tsv", "pairs.tsv", "targets.txt",
                           "synth_config.json"}) {
    EXPECT_TRUE(std::filesystem::exists(F(name))) << name;
  }
  EXPECT_EQ(ReadCorpusJsonl(F("corpus.jsonl")).size(), 96u);
}

TEST_F(CliTest, AuditPrintsDirectionalScoreAndWritesArtifacts) {
  const std::string out = F("audit_out");
  const Result r = Invoke({"audit", "--embedding", F("embedding.tsv"), "--pairs", F("pairs.tsv"),
                        "--targets", F("targets.txt"), "--out", out, "--explain"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("DB(embedding) = 0."), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("_F"), std::string::npos) << r.out;
  const nlohmann::json bias = nlohmann::json::parse(ReadFile(out + "/bias.json"));
  EXPECT_EQ(bias["bias"]["direction"], "F");
  EXPECT_TRUE(std::filesystem::exists(out + "/per_word.tsv"));
  EXPECT_TRUE(std::filesystem::exists(out + "/spectrum.csv"));
  EXPECT_TRUE(std::filesystem::exists(out + "/config.json"));
}

TEST_F(CliTest, MissingTargetsFileIsAnIoErrorNamingThePath) {
  const std::string missing = F("no_such_terms.txt");
  const Result r = Invoke({"audit", "--embedding", F("embedding.tsv"), "--targets", missing,
                        "--out", F("x")});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_NE(r.err.find(missing), std::string::npos) << r.err;
}

TEST_F(CliTest, ConfigurationErrorsExitWithConfigCode) {
  EXPECT_EQ(Invoke({"audit", "--embedding", F("embedding.tsv"), "--out", F("x")}).code, kExitConfig);
  EXPECT_EQ(Invoke({"audit", "--bogus"}).code, kExitConfig);
  EXPECT_EQ(Invoke({}).code, kExitConfig);
  EXPECT_EQ(Invoke({"experiment", "--embedding", F("embedding.tsv"), "--corpus", F("corpus.jsonl"),
                 "--out", F("x")})
                .code,
            kExitConfig);
  EXPECT_EQ(Invoke({"experiment", "--seed", "1", "--learner", "knn", "--embedding",
                 F("embedding.tsv"), "--corpus", F("corpus.jsonl"), "--out", F("x")})
                .code,
            kExitConfig);
  EXPECT_EQ(Invoke({"transform", "--corpus", F("corpus.jsonl"), "--condition", "flipped", "--out",
                 F("x")})
                .code,
            kExitConfig);
}

TEST_F(CliTest, MalformedConfigIsAParseError) {
  const std::string bad = dir_->Write("bad.json", "{\"seed\": 1,");
  const Result r = Invoke({"experiment", "--config", bad});
  EXPECT_EQ(r.code, kExitParse);
  const std::string typo = dir_->Write("typo.json", R"({"sede": 1})");
  EXPECT_EQ(Invoke({"experiment", "--config", typo}).code, kExitParse);
}

TEST_F(CliTest, DegenerateGenderDirectionIsAMathError) {
  const std::string emb = dir_->Write("flat.tsv",
                                      "she\t1\t0\nhe\t1\t0\nher\t0\t1\nhim\t0\t1\nsad\t1\t1\n");
  const std::string pairs = dir_->Write("flat_pairs.tsv", "she\the\nher\thim\n");
  const std::string terms = dir_->Write("flat_terms.txt", "sad\n");
  const Result r = Invoke({"audit", "--embedding", emb, "--pairs", pairs, "--targets", terms,
                        "--out", F("flat_out")});
  EXPECT_EQ(r.code, kExitMath) << r.err;
}

TEST_F(CliTest, TransformCountsAndDoubling) {
  const Corpus input = ReadCorpusJsonl(F("corpus.jsonl"));
  for (const auto& [condition, factor] :
       std::vector<std::pair<std::string, size_t>>{{"original", 1}, {"swapped", 1},
                                                   {"neutralized", 1}, {"augmented", 2}}) {
    const std::string path = F("t_" + condition + ".jsonl");
    const Result r = Invoke({"transform", "--corpus", F("corpus.jsonl"), "--condition", condition,
                          "--output", path, "--out", F("t_out")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(ReadCorpusJsonl(path).size(), factor * input.size()) << condition;
    EXPECT_NE(r.out.find(std::to_string(input.size()) + " notes in, " +
                         std::to_string(factor * input.size()) + " notes out"),
              std::string::npos)
        << r.out;
  }
}

TEST_F(CliTest, RemoveModeOutputIsPronounFree) {
  const std::string path = F("removed.jsonl");
  const Result r = Invoke({"transform", "--corpus", F("corpus.jsonl"), "--condition", "neutralized",
                        "--mode", "remove", "--output", path, "--out", F("t_out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const SwapRules rules = SwapRules::Default();
  for (const LabeledNote& note : ReadCorpusJsonl(path)) {
    for (const Token& token : Tokenize(note.text)) {
      EXPECT_FALSE(rules.IsPronoun(AsciiLower(token.text))) << note.text;
    }
    EXPECT_EQ(note.text.find("  "), std::string::npos) << note.text;
  }
}

TEST_F(CliTest, LenientTransformSkipsMalformedLines) {
  const std::string content = ReadFile(F("corpus.jsonl"));
  const std::string dirty = dir_->Write("dirty.jsonl", content + "{broken\n");
  EXPECT_EQ(Invoke({"transform", "--corpus", dirty, "--condition", "swapped", "--output",
                 F("dirty_out.jsonl"), "--out", F("t_out")})
                .code,
            kExitParse);
  const Result r = Invoke({"transform", "--corpus", dirty, "--condition", "swapped", "--no-strict",
                        "--output", F("dirty_out.jsonl"), "--out", F("t_out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("1 malformed lines skipped"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExperimentIsByteIdenticalAcrossRuns) {
  std::vector<std::string> reports;
  for (const char* sub : {"run_a", "run_b"}) {
    const Result r = Invoke({"experiment", "--config", F("fast.json"), "--seed", "5", "--learner",
                          "svm", "--embedding", F("embedding.tsv"), "--corpus", F("corpus.jsonl"),
                          "--targets", F("targets.txt"), "--pairs", F("pairs.tsv"), "--out",
                          F(sub)});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("| embedding (SVM) |"), std::string::npos) << r.out;
    reports.push_back(ReadFile(F(std::string(sub) + "/report.json")));
  }
  EXPECT_EQ(reports[0], reports[1]);
  const nlohmann::json report = nlohmann::json::parse(reports[0]);
  EXPECT_EQ(report["cells"].size(), 4u);
  EXPECT_EQ(report["seed"], 5);

  const Result md = Invoke({"report", "--input", F("run_a/report.json")});
  ASSERT_EQ(md.code, kExitOk) << md.err;
  EXPECT_EQ(md.out, ReadFile(F("run_a/report.md")));
}

TEST_F(CliTest, FullFixtureEmitsTwelveCellsWithinAMinute) {
  testing::TempDir full("cli_full");
  ASSERT_EQ(Invoke({"synth", "--seed", "12", "--out", full.path()}).code, kExitOk);
  const auto start = std::chrono::steady_clock::now();
  const Result r = Invoke({"experiment", "--seed", "12", "--embedding", full.File("embedding.tsv"),
                           "--corpus", full.File("corpus.jsonl"), "--out", full.File("out")});
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_LT(seconds, 60.0);
  const nlohmann::json report = nlohmann::json::parse(ReadFile(full.File("out/report.json")));
  EXPECT_EQ(report["cells"].size(), 12u);
  EXPECT_TRUE(report["bias"].is_null());
  const nlohmann::json config = nlohmann::json::parse(ReadFile(full.File("out/config.json")));
  EXPECT_EQ(config["seed"], 12);
  EXPECT_EQ(config["train_per_cell"], 90);
}

TEST_F(CliTest, ReportRejectsInvalidJson) {
  const std::string bad = dir_->Write("bad_report.json", "[1, 2");
  EXPECT_EQ(Invoke({"report", "--input", bad}).code, kExitParse);
  const std::string wrong = dir_->Write("wrong_report.json", R"({"schema_version": 1})");
  EXPECT_EQ(Invoke({"report", "--input", wrong}).code, kExitParse);
  EXPECT_EQ(Invoke({"report", "--input", F("absent.json")}).code, kExitIo);
}

}  // namespace
}  // namespace fairembed
