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

#include "fairembed/gender_geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fairembed/errors.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "test_util.h"

namespace fairembed {
namespace {

using ::fairembed::testing::MakeTable;
using ::fairembed::testing::TempDir;
using Vec = std::vector<double>;

double AbsCos(const Vec& a, const Vec& b) { return std::abs(oracle::Cos(a, b)); }

// Table with `n` random pairs (f<i>, m<i>) in `dim` dimensions.
EmbeddingTable RandomPairTable(std::mt19937_64& rng, int n, int dim,
                               std::vector<GenderPair>* pairs) {
  EmbeddingTable table("random", dim, CasePolicy::kPreserve);
  const Vec axis = oracle::RandomVector(rng, dim);
  for (int i = 0; i < n; ++i) {
    Vec base = oracle::RandomVector(rng, dim);
    Vec f = base, m = base;
    const double s = 0.5 + std::abs(oracle::Gaussian(rng));
    const Vec noise_f = oracle::RandomVector(rng, dim, 0.3);
    const Vec noise_m = oracle::RandomVector(rng, dim, 0.3);
    for (int d = 0; d < dim; ++d) {
      f[d] += s * axis[d] + noise_f[d];
      m[d] += noise_m[d];
    }
    table.Insert("f" + std::to_string(i), f);
    table.Insert("m" + std::to_string(i), m);
    pairs->push_back({"f" + std::to_string(i), "m" + std::to_string(i)});
  }
  return table;
}

oracle::Mat Differences(const EmbeddingTable& table, const std::vector<GenderPair>& pairs) {
  oracle::Mat rows;
  for (const GenderPair& p : pairs) {
    auto f = *table.Find(p.female_word);
    auto m = *table.Find(p.male_word);
    Vec d(f.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = f[i] - m[i];
    rows.push_back(d);
  }
  return rows;
}

TEST(GenderDirectionTest, SingleAxisDifferences) {
  GenderDirection dir = DirectionFromDifferences({{2, 0}, {1, 0}, {3, 0}});
  EXPECT_NEAR(dir.g[0], 1.0, 1e-12);
  EXPECT_NEAR(dir.g[1], 0.0, 1e-12);
  ASSERT_EQ(dir.spectrum.size(), 2u);
  EXPECT_NEAR(dir.spectrum[0], 1.0, 1e-12);
  EXPECT_NEAR(dir.spectrum[1], 0.0, 1e-12);
  EXPECT_FALSE(dir.degenerate);
  EXPECT_EQ(SpectrumReport(dir).size(), 2u);
  EXPECT_EQ(SpectrumReport(dir)[0].component, 1);
}

TEST(GenderDirectionTest, SingleAxisMatchesJacobiOracle) {
  const oracle::Mat diffs = {{2, 0}, {1, 0}, {3, 0}};
  oracle::PcaResult expected = oracle::PcaTopComponent(diffs, true);
  GenderDirection dir = DirectionFromDifferences(diffs);
  EXPECT_GT(oracle::Dot(dir.g, expected.g), 1 - 1e-12);
  EXPECT_NEAR(dir.spectrum[0], expected.spectrum[0], 1e-12);
}

TEST(GenderDirectionTest, IdenticalDifferencesFallBackToMean) {
  GenderDirection dir = DirectionFromDifferences({{0, 3, 4}, {0, 3, 4}, {0, 3, 4}});
  EXPECT_TRUE(dir.degenerate);
  EXPECT_NEAR(dir.g[1], 0.6, 1e-12);
  EXPECT_NEAR(dir.g[2], 0.8, 1e-12);
  EXPECT_EQ(dir.spectrum, (Vec{1.0, 0.0, 0.0}));
}

TEST(GenderDirectionTest, AllZeroDifferencesAreAMathError) {
  EXPECT_THROW(DirectionFromDifferences({{0, 0}, {0, 0}}), MathError);
}

TEST(GenderDirectionTest, NeedsTwoResolvablePairs) {
  EmbeddingTable table = MakeTable({{"she", {1, 0}}, {"he", {0, 1}}, {"her", {1, 1}}});
  const std::vector<GenderPair> pairs = {{"she", "he"}, {"her", "his"}};
  EXPECT_THROW(ComputeGenderDirection(table, pairs), InvalidArgument);
}

TEST(GenderDirectionTest, SkipsAndRecordsUnresolvedPairs) {
  EmbeddingTable table = MakeTable({{"she", {2, 0.1}},
                                    {"woman", {3, 1}},
                                    {"man", {0, 1.2}},
                                    {"girl", {1, 1}}});
  const std::vector<GenderPair> pairs = {{"she", "woman"}, {"woman", "man"}, {"girl", "boy"},
                                         {"girl", "man"}};
  GenderDirection dir = ComputeGenderDirection(table, pairs);
  ASSERT_EQ(dir.pairs_skipped.size(), 1u);
  EXPECT_EQ(dir.pairs_skipped[0].male_word, "boy");
  EXPECT_EQ(dir.pairs_used.size(), 3u);
}

TEST(GenderDirectionTest, RandomPairsMatchOracleAndInvariants) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GenderPair> pairs;
    EmbeddingTable table = RandomPairTable(rng, 10, 8, &pairs);
    GenderDirection dir = ComputeGenderDirection(table, pairs);
    const oracle::Mat diffs = Differences(table, pairs);
    oracle::PcaResult expected = oracle::PcaTopComponent(diffs, true);
    EXPECT_GT(AbsCos(dir.g, expected.g), 1 - 1e-6);
    EXPECT_NEAR(oracle::Norm(dir.g), 1.0, 1e-9);
    double sum = 0.0;
    for (size_t k = 0; k < dir.spectrum.size(); ++k) {
      EXPECT_NEAR(dir.spectrum[k], expected.spectrum[k], 1e-8);
      EXPECT_GE(dir.spectrum[k], 0.0);
      if (k > 0) {
        EXPECT_LE(dir.spectrum[k], dir.spectrum[k - 1]);
      }
      sum += dir.spectrum[k];
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
    double orientation = 0.0;
    for (const Vec& d : diffs) orientation += oracle::Cos(dir.g, d);
    EXPECT_GE(orientation, 0.0);
  }
}

TEST(GenderDirectionTest, GramPathMatchesCovariancePath) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<GenderPair> pairs;
    EmbeddingTable table = RandomPairTable(rng, 10, 24, &pairs);
    GenderDirection dir = ComputeGenderDirection(table, pairs);
    oracle::PcaResult expected = oracle::PcaTopComponent(Differences(table, pairs), true);
    EXPECT_GT(AbsCos(dir.g, expected.g), 1 - 1e-6);
    ASSERT_EQ(dir.spectrum.size(), 10u);
    for (size_t k = 0; k < 10; ++k) EXPECT_NEAR(dir.spectrum[k], expected.spectrum[k], 1e-8);
    for (size_t k = 10; k < expected.spectrum.size(); ++k) EXPECT_NEAR(expected.spectrum[k], 0, 1e-8);
  }
}

TEST(GenderDirectionTest, UncenteredVariantMatchesOracle) {
  std::mt19937_64 rng(7);
  std::vector<GenderPair> pairs;
  EmbeddingTable table = RandomPairTable(rng, 10, 6, &pairs);
  GenderDirection dir = ComputeGenderDirection(table, pairs, {.center = false});
  oracle::PcaResult expected = oracle::PcaTopComponent(Differences(table, pairs), false);
  EXPECT_GT(AbsCos(dir.g, expected.g), 1 - 1e-6);
  EXPECT_FALSE(dir.options.center);
}

TEST(GenderDirectionTest, PermutingPairsLeavesDirectionUnchanged) {
  std::mt19937_64 rng(31);
  std::vector<GenderPair> pairs;
  EmbeddingTable table = RandomPairTable(rng, 10, 8, &pairs);
  GenderDirection a = ComputeGenderDirection(table, pairs);
  std::reverse(pairs.begin(), pairs.end());
  std::swap(pairs[1], pairs[6]);
  GenderDirection b = ComputeGenderDirection(table, pairs);
  for (size_t i = 0; i < a.g.size(); ++i) EXPECT_NEAR(a.g[i], b.g[i], 1e-9);
}

TEST(GenderDirectionTest, NormalizeFirstUsesUnitVectors) {
  EmbeddingTable table = MakeTable(
      {{"a", {10, 0, 0}}, {"b", {0, 1, 0}}, {"c", {0, 0, 3}}, {"d", {1, 1, 0}},
       {"e", {0, 5, 5}}, {"f", {2, 0, 0}}});
  const std::vector<GenderPair> pairs = {{"a", "b"}, {"c", "d"}, {"e", "f"}};
  GenderDirection dir = ComputeGenderDirection(table, pairs, {.normalize_first = true});
  oracle::Mat diffs;
  for (const GenderPair& p : pairs) {
    Vec f(table.Find(p.female_word)->begin(), table.Find(p.female_word)->end());
    Vec m(table.Find(p.male_word)->begin(), table.Find(p.male_word)->end());
    const double nf = oracle::Norm(f), nm = oracle::Norm(m);
    Vec d(3);
    for (int i = 0; i < 3; ++i) d[i] = f[i] / nf - m[i] / nm;
    diffs.push_back(d);
  }
  EXPECT_GT(AbsCos(dir.g, oracle::PcaTopComponent(diffs, true).g), 1 - 1e-9);
}

GenderDirection AxisDirection(int dim, int axis) {
  Vec g(dim, 0.0);
  g[axis] = 1.0;
  GenderDirection dir;
  dir.g = g;
  dir.spectrum = {1.0};
  return dir;
}

TEST(DirectBiasTest, TargetsEqualToGScoreOne) {
  EmbeddingTable table = MakeTable({{"sad", {0, 2}}, {"low", {0, 0.5}}});
  BiasScore score = DirectBias(table, AxisDirection(2, 1), std::vector<std::string>{"sad", "low"});
  EXPECT_DOUBLE_EQ(score.db, 1.0);
  EXPECT_EQ(score.direction, BiasDirection::kFemale);
  for (const TermCosine& t : score.per_word) EXPECT_DOUBLE_EQ(t.cosine, 1.0);
}

TEST(DirectBiasTest, OrthogonalTargetsAreNeutral) {
  EmbeddingTable table = MakeTable({{"sad", {3, 0}}, {"low", {-1, 0}}});
  BiasScore score = DirectBias(table, AxisDirection(2, 1), std::vector<std::string>{"sad", "low"});
  EXPECT_EQ(score.db, 0.0);
  EXPECT_EQ(score.direction, BiasDirection::kNeutral);
}

TEST(DirectBiasTest, PlantedAnglesGiveMeanAbsCos) {
  const double degrees[] = {10, 40, 80};
  EmbeddingTable table("planted", 3, CasePolicy::kFoldLower);
  std::vector<std::string> targets;
  double expected = 0.0;
  for (double d : degrees) {
    const double t = d * std::numbers::pi / 180.0;
    table.Insert("t" + std::to_string(static_cast<int>(d)), Vec{std::sin(t), std::cos(t), 0.0});
    targets.push_back("t" + std::to_string(static_cast<int>(d)));
    expected += std::abs(std::cos(t)) / 3.0;
  }
  BiasScore score = DirectBias(table, AxisDirection(3, 1), targets);
  EXPECT_NEAR(score.db, expected, 1e-9);
  EXPECT_EQ(score.n_resolved, 3);
}

TEST(DirectBiasTest, MatchesBruteForceLoopOnRandomTables) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 3 + trial % 10;
    EmbeddingTable table("r", dim, CasePolicy::kFoldLower);
    std::vector<std::string> targets;
    for (int i = 0; i < 15; ++i) {
      table.Insert("w" + std::to_string(i), oracle::RandomVector(rng, dim));
      targets.push_back("w" + std::to_string(i));
    }
    targets.push_back("absent");
    Vec g = oracle::RandomVector(rng, dim);
    const double n = oracle::Norm(g);
    for (double& x : g) x /= n;
    GenderDirection dir;
    dir.g = g;
    BiasScore score = DirectBias(table, dir, targets);
    EXPECT_NEAR(score.db, oracle::DirectBias(table, g, targets), 1e-12);
    EXPECT_EQ(score.n_missing, 1);
    EXPECT_EQ(score.missing, (std::vector<std::string>{"absent"}));
    double mean_abs = 0.0, mean_signed = 0.0;
    for (const TermCosine& t : score.per_word) {
      mean_abs += std::abs(t.cosine) / score.per_word.size();
      mean_signed += t.cosine / score.per_word.size();
    }
    EXPECT_NEAR(score.db, mean_abs, 1e-12);
    const BiasDirection expected_dir = mean_signed > kDirectionEpsilon    ? BiasDirection::kFemale
                                       : mean_signed < -kDirectionEpsilon ? BiasDirection::kMale
                                                                          : BiasDirection::kNeutral;
    EXPECT_EQ(score.direction, expected_dir);
  }
}

TEST(DirectBiasTest, ScaleInvariant) {
  std::mt19937_64 rng(8);
  std::vector<GenderPair> pairs;
  EmbeddingTable table = RandomPairTable(rng, 10, 6, &pairs);
  EmbeddingTable scaled("scaled", 6, CasePolicy::kPreserve);
  std::vector<std::string> targets;
  for (size_t i = 0; i < table.size(); ++i) {
    Vec v(table.row(i).begin(), table.row(i).end());
    for (double& x : v) x *= 37.5;
    scaled.Insert(table.words()[i], v);
    targets.push_back(table.words()[i]);
  }
  BiasScore a = DirectBias(table, ComputeGenderDirection(table, pairs), targets);
  BiasScore b = DirectBias(scaled, ComputeGenderDirection(scaled, pairs), targets);
  EXPECT_NEAR(a.db, b.db, 1e-9);
}

TEST(DirectBiasTest, DuplicateTargetsCountOnce) {
  EmbeddingTable table = MakeTable({{"sad", {1, 1}}, {"low", {1, 0}}});
  BiasScore score =
      DirectBias(table, AxisDirection(2, 1), std::vector<std::string>{"sad", "low", "sad"});
  EXPECT_EQ(score.n_resolved, 2);
}

TEST(DirectBiasTest, ErrorsOnNothingResolved) {
  EmbeddingTable table = MakeTable({{"sad", {1, 1}}});
  EXPECT_THROW(DirectBias(table, AxisDirection(2, 1), std::vector<std::string>{"zzz"}),
               InvalidArgument);
}

TEST(DirectBiasTest, StrictnessExponent) {
  EmbeddingTable table = MakeTable({{"a", {1, 1}}});
  BiasScore score = DirectBias(table, AxisDirection(2, 1), std::vector<std::string>{"a"}, 2.0);
  EXPECT_NEAR(score.db, 0.5, 1e-12);
}

TEST(DirectBiasTest, MultiWordTargetsResolveByTokenMean) {
  EmbeddingTable table = MakeTable({{"falling", {0, 2}}, {"asleep", {2, 0}}});
  BiasScore score =
      DirectBias(table, AxisDirection(2, 1), std::vector<std::string>{"falling asleep"});
  ASSERT_EQ(score.per_word.size(), 1u);
  EXPECT_EQ(score.per_word[0].strategy, ResolveStrategy::kTokenMean);
  EXPECT_NEAR(score.per_word[0].cosine, std::sqrt(0.5), 1e-12);
}

TEST(BiasFormatTest, LabelsCarryDirectionSubscript) {
  BiasScore score;
  score.db = 0.0912;
  score.direction = BiasDirection::kMale;
  EXPECT_EQ(FormatBias(score), "0.09_M");
  score.direction = BiasDirection::kFemale;
  score.db = 0.256;
  EXPECT_EQ(FormatBias(score), "0.26_F");
  score.direction = BiasDirection::kNeutral;
  EXPECT_EQ(FormatBias(score), "0.26");
}

TEST(BiasFormatTest, JsonCarriesCounts) {
  EmbeddingTable table = MakeTable({{"sad", {1, 1}}});
  BiasScore score =
      DirectBias(table, AxisDirection(2, 1), std::vector<std::string>{"sad", "gone"});
  nlohmann::json json = ToJson(score);
  EXPECT_EQ(json["n_resolved"], 1);
  EXPECT_EQ(json["n_missing"], 1);
  EXPECT_EQ(json["direction"], "F");
  EXPECT_TRUE(json["per_word"].contains("sad"));
}

TEST(SpectrumTest, RowsSortedDescending) {
  GenderDirection dir;
  dir.spectrum = {0.6, 0.3, 0.1};
  std::vector<SpectrumRow> rows = SpectrumReport(dir);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].component, 1);
  EXPECT_DOUBLE_EQ(rows[0].ratio, 0.6);
  EXPECT_EQ(rows[2].component, 3);
  EXPECT_DOUBLE_EQ(rows[2].ratio, 0.1);
  const std::string csv = SpectrumCsv(rows, "w2v");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "embedding,component,explained_variance_ratio");
  EXPECT_NE(csv.find("w2v,1,0.6"), std::string::npos);
}

TEST(PairFilesTest, ParsesPairsAndTargets) {
  TempDir dir("pairs");
  const std::string pairs_path = dir.Write("p.tsv", "# comment\nshe\the\n\nwoman\tman\n");
  std::vector<GenderPair> pairs = LoadGenderPairs(pairs_path);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[1].female_word, "woman");
  const std::string targets_path = dir.Write("t.txt", "sad\n# x\n falling asleep \n");
  EXPECT_EQ(LoadTargetTerms(targets_path), (std::vector<std::string>{"sad", "falling asleep"}));
  EXPECT_THROW(LoadGenderPairs(dir.Write("bad.tsv", "she he\n")), ParseError);
  EXPECT_THROW(LoadTargetTerms(dir.File("absent.txt")), IoError);
}

TEST(PairFilesTest, DefaultPairsAreTheTenDefinitionalPairs) {
  std::vector<GenderPair> pairs = DefaultGenderPairs();
  EXPECT_EQ(pairs.size(), 10u);
  EXPECT_EQ(pairs[2].female_word, "she");
  EXPECT_EQ(pairs[2].male_word, "he");
}

}  // namespace
}  // namespace fairembed
