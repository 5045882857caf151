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

#include "fairembed/embedding_store.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fairembed/errors.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairembed {
namespace {

using ::fairembed::testing::MakeTable;
using ::fairembed::testing::TempDir;

std::string ErrorOf(const std::string& content, VectorFormat format) {
  try {
    ParseVectors(content, "vectors.txt", format, CasePolicy::kFoldLower);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

TEST(EmbeddingStoreTest, ParsesTsvRows) {
  EmbeddingTable table = ParseVectors("he\t1\t0\nshe\t0\t1\n", "t", VectorFormat::kTsv,
                                      CasePolicy::kFoldLower);
  EXPECT_EQ(table.dim(), 2u);
  EXPECT_EQ(table.size(), 2u);
  auto she = table.Find("she");
  ASSERT_TRUE(she.has_value());
  EXPECT_EQ((*she)[0], 0.0);
  EXPECT_EQ((*she)[1], 1.0);
}

TEST(EmbeddingStoreTest, ParsesW2vTextWithHeader) {
  EmbeddingTable table = ParseVectors("2 3\nalpha 1 2 3\nbeta -1 0.5 2e-3\n", "w",
                                      VectorFormat::kW2vText, CasePolicy::kPreserve);
  EXPECT_EQ(table.dim(), 3u);
  EXPECT_EQ(table.size(), 2u);
  EXPECT_DOUBLE_EQ((*table.Find("beta"))[2], 2e-3);
}

TEST(EmbeddingStoreTest, HeaderRowCountMismatchIsAnError) {
  const std::string message =
      ErrorOf("3 2\na 1 0\nb 0 1\nc 1 1\nd 2 2\n", VectorFormat::kW2vText);
  EXPECT_NE(message.find("declares 3 rows but file has 4"), std::string::npos) << message;
}

TEST(EmbeddingStoreTest, MalformedHeaderIsAnError) {
  EXPECT_NE(ErrorOf("300\na 1\n", VectorFormat::kW2vText).find("malformed header"),
            std::string::npos);
}

TEST(EmbeddingStoreTest, NonFiniteValueNamesLineAndWord) {
  const std::string message = ErrorOf("dog\t1.0\t2.0\ncat\t1.0\tNaN\n", VectorFormat::kTsv);
  EXPECT_NE(message.find("vectors.txt:2"), std::string::npos) << message;
  EXPECT_NE(message.find("'cat'"), std::string::npos) << message;
}

TEST(EmbeddingStoreTest, DimensionMismatchReportsLineNumber) {
  const std::string message = ErrorOf("a\t1\t2\n\nb\t1\t2\t3\n", VectorFormat::kTsv);
  EXPECT_NE(message.find("vectors.txt:3"), std::string::npos) << message;
  EXPECT_NE(message.find("expected 2"), std::string::npos) << message;
}

TEST(EmbeddingStoreTest, RejectsEmptyAndAllZero) {
  EXPECT_NE(ErrorOf("\n\n", VectorFormat::kTsv).find("empty"), std::string::npos);
  EXPECT_NE(ErrorOf("z\t0\t0\n", VectorFormat::kTsv).find("all zeros"), std::string::npos);
}

TEST(EmbeddingStoreTest, DuplicateWordKeepsFirstAndWarns) {
  std::vector<std::string> warnings;
  EmbeddingTable table = ParseVectors("Sad\t1\t0\nsad\t5\t5\n", "dup", VectorFormat::kTsv,
                                      CasePolicy::kFoldLower, &warnings);
  EXPECT_EQ(table.size(), 1u);
  EXPECT_EQ((*table.Find("SAD"))[0], 1.0);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("duplicate word 'sad'"), std::string::npos);
}

TEST(EmbeddingStoreTest, PreservePolicyIsCaseSensitive) {
  EmbeddingTable table = MakeTable({{"He", {1, 0}}, {"he", {0, 1}}}, CasePolicy::kPreserve);
  EXPECT_EQ(table.size(), 2u);
  EXPECT_EQ((*table.Find("He"))[0], 1.0);
  EXPECT_FALSE(table.Contains("HE"));
}

TEST(EmbeddingStoreTest, InsertValidatesVectors) {
  EmbeddingTable table("t", 2, CasePolicy::kFoldLower);
  std::vector<double> wrong = {1.0};
  std::vector<double> inf = {1.0, INFINITY};
  EXPECT_THROW(table.Insert("a", wrong), InvalidArgument);
  EXPECT_THROW(table.Insert("a", inf), InvalidArgument);
}

TEST(EmbeddingStoreTest, TsvRoundTripIsExact) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 3.0);
  EmbeddingTable table("rt", 7, CasePolicy::kPreserve);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> v(7);
    for (double& x : v) x = normal(rng) * std::pow(10.0, (i % 9) - 4);
    table.Insert("w" + std::to_string(i), v);
  }
  TempDir dir("roundtrip");
  WriteTsv(table, dir.File("t.tsv"));
  std::vector<std::string> warnings;
  EmbeddingTable again =
      LoadVectors(dir.File("t.tsv"), VectorFormat::kTsv, CasePolicy::kPreserve, &warnings);
  EXPECT_TRUE(warnings.empty());
  ASSERT_EQ(again.size(), table.size());
  for (size_t i = 0; i < table.size(); ++i) {
    EXPECT_EQ(again.words()[i], table.words()[i]);
    for (size_t j = 0; j < 7; ++j) EXPECT_LT(std::abs(again.row(i)[j] - table.row(i)[j]), 1e-12);
  }
}

TEST(EmbeddingStoreTest, LoadMissingFileIsIoError) {
  EXPECT_THROW(LoadVectors("/nonexistent/vectors.tsv", VectorFormat::kTsv,
                           CasePolicy::kFoldLower),
               IoError);
}

TEST(ResolveTest, PrefersUnderscoreJoinedEntry) {
  EmbeddingTable table = MakeTable(
      {{"falling_asleep", {5, 5}}, {"falling", {2, 0}}, {"asleep", {0, 2}}});
  PhraseResolution r = Resolve(table, "falling asleep");
  EXPECT_EQ(r.strategy_used, ResolveStrategy::kUnderscoreJoined);
  EXPECT_EQ(*r.vector, (std::vector<double>{5, 5}));
}

TEST(ResolveTest, FallsBackToTokenMean) {
  EmbeddingTable table = MakeTable({{"falling", {2, 0}}, {"asleep", {0, 2}}});
  PhraseResolution r = Resolve(table, "falling asleep");
  EXPECT_EQ(r.strategy_used, ResolveStrategy::kTokenMean);
  EXPECT_EQ(*r.vector, (std::vector<double>{1, 1}));
  EXPECT_EQ(r.tokens_used, (std::vector<std::string>{"falling", "asleep"}));
}

TEST(ResolveTest, ExactMatchAndMissing) {
  EmbeddingTable table = MakeTable({{"sad", {1, 2}}});
  EXPECT_EQ(Resolve(table, "  SAD ").strategy_used, ResolveStrategy::kExact);
  PhraseResolution missing = Resolve(table, "zzzz");
  EXPECT_EQ(missing.strategy_used, ResolveStrategy::kMissing);
  EXPECT_FALSE(missing.vector.has_value());
}

TEST(ResolveTest, TokenMeanMatchesSumAndDivide) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  EmbeddingTable table("m", 5, CasePolicy::kFoldLower);
  const std::vector<std::string> words = {"loss", "of", "interest", "low", "mood"};
  for (const std::string& w : words) {
    std::vector<double> v(5);
    for (double& x : v) x = unit(rng);
    table.Insert(w, v);
  }
  PhraseResolution r = Resolve(table, "loss of unknown interest");
  ASSERT_EQ(r.strategy_used, ResolveStrategy::kTokenMean);
  ASSERT_EQ(r.tokens_used.size(), 3u);
  for (size_t j = 0; j < 5; ++j) {
    const double expected =
        ((*table.Find("loss"))[j] + (*table.Find("of"))[j] + (*table.Find("interest"))[j]) / 3.0;
    EXPECT_NEAR((*r.vector)[j], expected, 1e-15);
  }
}

TEST(ResolveTest, BlankQueryThrows) {
  EmbeddingTable table = MakeTable({{"sad", {1, 2}}});
  EXPECT_THROW(Resolve(table, "   "), InvalidArgument);
}

}  // namespace
}  // namespace fairembed
