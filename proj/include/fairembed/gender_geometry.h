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

#ifndef FAIREMBED_GENDER_GEOMETRY_H_
#define FAIREMBED_GENDER_GEOMETRY_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairembed/embedding_store.h"
#include "nlohmann/json.hpp"

namespace fairembed {

struct GenderPair {
  std::string female_word;
  std::string male_word;

  bool operator==(const GenderPair&) const = default;
};

// The ten definitional pairs (female first): woman-man, girl-boy, she-he,
// mother-father, daughter-son, gal-guy, female-male, her-his,
// herself-himself, Mary-John.
std::vector<GenderPair> DefaultGenderPairs();

// Two-column TSV "female_word\tmale_word". Blank lines and lines starting
// with '#' are ignored.
std::vector<GenderPair> ParseGenderPairs(std::string_view content,
                                         const std::string& source);
std::vector<GenderPair> LoadGenderPairs(const std::string& path);

// One term per line; surrounding whitespace trimmed, blanks and '#' lines
// skipped.
std::vector<std::string> ParseTargetTerms(std::string_view content);
std::vector<std::string> LoadTargetTerms(const std::string& path);

struct DirectionOptions {
  // Subtract the mean difference vector before the eigendecomposition.
  bool center = true;
  // Unit-normalize word vectors before taking pair differences.
  bool normalize_first = false;
};

// Unit gender axis. The positive side is female: the mean cosine between g
// and the female-minus-male differences is non-negative.
struct GenderDirection {
  std::vector<double> g;
  // Explained-variance ratios, non-increasing, summing to one. Length is
  // min(number of pairs used, dim).
  std::vector<double> spectrum;
  std::vector<GenderPair> pairs_used;
  std::vector<GenderPair> pairs_skipped;
  // True when the covariance vanished and g fell back to the normalized mean
  // difference.
  bool degenerate = false;
  DirectionOptions options;
};

// PCA over the female-minus-male difference vectors. Pairs with either word
// out of vocabulary are skipped and recorded. Throws InvalidArgument when
// fewer than two pairs resolve and MathError when neither the covariance nor
// the mean difference carries any signal.
GenderDirection ComputeGenderDirection(const EmbeddingTable& table,
                                       std::span<const GenderPair> pairs,
                                       const DirectionOptions& options = {});

// Core of ComputeGenderDirection on explicit difference rows (each of the
// same length). Exposed for testing against independent eigensolvers.
GenderDirection DirectionFromDifferences(
    const std::vector<std::vector<double>>& differences, bool center = true);

enum class BiasDirection { kFemale, kMale, kNeutral };
std::string_view BiasDirectionName(BiasDirection direction);

struct TermCosine {
  std::string term;
  double cosine = 0.0;
  ResolveStrategy strategy = ResolveStrategy::kMissing;
};

struct BiasScore {
  double db = 0.0;
  BiasDirection direction = BiasDirection::kNeutral;
  // Resolved terms in input order (duplicates removed).
  std::vector<TermCosine> per_word;
  std::vector<std::string> missing;
  int n_resolved = 0;
  int n_missing = 0;
  double strictness = 1.0;
};

inline constexpr double kDirectionEpsilon = 1e-9;

// Mean of |cos(v(t), g)|^strictness over the resolvable targets. Missing
// terms are counted, never imputed. Throws InvalidArgument when nothing
// resolves and MathError when a resolved vector has zero norm.
BiasScore DirectBias(const EmbeddingTable& table,
                     const GenderDirection& direction,
                     std::span<const std::string> targets,
                     double strictness = 1.0);

// "0.09_M" style label used in report tables.
std::string FormatBias(const BiasScore& score, int precision = 2);

nlohmann::json ToJson(const BiasScore& score);

struct SpectrumRow {
  int component = 0;  // 1-based
  double ratio = 0.0;
};

std::vector<SpectrumRow> SpectrumReport(const GenderDirection& direction);
std::string SpectrumCsv(std::span<const SpectrumRow> rows,
                        std::string_view label = "");

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);
// Throws MathError if either vector has zero norm.
double Cosine(std::span<const double> a, std::span<const double> b);

}  // namespace fairembed

#endif  // FAIREMBED_GENDER_GEOMETRY_H_
