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
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "Eigen/Dense"
#include "fairembed/errors.h"
#include "fairembed/text_util.h"
#include "spdlog/spdlog.h"

namespace fairembed {

std::vector<GenderPair> DefaultGenderPairs() {
  return {{"woman", "man"},     {"girl", "boy"},        {"she", "he"},
          {"mother", "father"}, {"daughter", "son"},    {"gal", "guy"},
          {"female", "male"},   {"her", "his"},         {"herself", "himself"},
          {"Mary", "John"}};
}

std::vector<GenderPair> ParseGenderPairs(std::string_view content,
                                         const std::string& source) {
  std::vector<GenderPair> pairs;
  std::vector<std::string_view> lines = SplitLines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = Trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields = SplitOn(line, '\t');
    if (fields.size() != 2) {
      throw ParseError(source + ":" + std::to_string(i + 1) +
                       ": expected \"female_word<TAB>male_word\"");
    }
    GenderPair pair{std::string(Trim(fields[0])), std::string(Trim(fields[1]))};
    if (pair.female_word.empty() || pair.male_word.empty() ||
        pair.female_word == pair.male_word) {
      throw ParseError(source + ":" + std::to_string(i + 1) +
                       ": pair words must be non-empty and distinct");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<GenderPair> LoadGenderPairs(const std::string& path) {
  return ParseGenderPairs(ReadFile(path), path);
}

std::vector<std::string> ParseTargetTerms(std::string_view content) {
  std::vector<std::string> terms;
  for (std::string_view line : SplitLines(content)) {
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    terms.emplace_back(line);
  }
  return terms;
}

std::vector<std::string> LoadTargetTerms(const std::string& path) {
  return ParseTargetTerms(ReadFile(path));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

double Cosine(std::span<const double> a, std::span<const double> b) {
  const double na = Norm(a);
  const double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) {
    throw MathError("cosine similarity of a zero-norm vector");
  }
  return Dot(a, b) / (na * nb);
}

namespace {

constexpr double kDegenerateTrace = 1e-12;

// Flips g so that the mean cosine with the raw differences is non-negative.
// An exact zero mean falls back to making the largest-magnitude component
// positive, which keeps the sign deterministic.
void Orient(const Eigen::MatrixXd& raw, Eigen::VectorXd& g) {
  double mean_cos = 0.0;
  int counted = 0;
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    const double n = raw.row(i).norm();
    if (n == 0.0) continue;
    mean_cos += raw.row(i).dot(g) / n;
    ++counted;
  }
  if (counted > 0) mean_cos /= counted;
  if (mean_cos < 0.0) {
    g = -g;
  } else if (mean_cos == 0.0) {
    Eigen::Index arg = 0;
    g.cwiseAbs().maxCoeff(&arg);
    if (g(arg) < 0.0) g = -g;
  }
}

}  // namespace

GenderDirection DirectionFromDifferences(
    const std::vector<std::vector<double>>& differences, bool center) {
  if (differences.size() < 2) {
    throw InvalidArgument("gender direction needs at least 2 difference vectors");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(differences.size());
  const Eigen::Index dim = static_cast<Eigen::Index>(differences[0].size());
  if (dim == 0) throw InvalidArgument("difference vectors are empty");
  Eigen::MatrixXd raw(n, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(differences[i].size()) != dim) {
      throw InvalidArgument("difference vectors have inconsistent dimensions");
    }
    raw.row(i) = Eigen::Map<const Eigen::RowVectorXd>(differences[i].data(), dim);
  }

  const Eigen::RowVectorXd mean = raw.colwise().mean();
  Eigen::MatrixXd data = raw;
  if (center) data.rowwise() -= mean;

  GenderDirection out;
  out.options.center = center;
  const Eigen::Index n_components = std::min(n, dim);
  const double denom = center ? static_cast<double>(n - 1) : static_cast<double>(n);
  const double trace = data.squaredNorm() / denom;

  if (trace < kDegenerateTrace) {
    if (mean.norm() < kDegenerateTrace) {
      throw MathError("no gender signal: difference vectors are all zero");
    }
    Eigen::VectorXd g = mean.transpose().normalized();
    Orient(raw, g);
    out.g.assign(g.data(), g.data() + dim);
    out.spectrum.assign(n_components, 0.0);
    out.spectrum[0] = 1.0;
    out.degenerate = true;
    return out;
  }

  Eigen::VectorXd g;
  Eigen::VectorXd eigenvalues;
  if (dim <= n) {
    const Eigen::MatrixXd cov = data.transpose() * data;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
      throw MathError("covariance eigendecomposition failed");
    }
    eigenvalues = solver.eigenvalues().reverse();
    g = solver.eigenvectors().col(dim - 1);
  } else {
    // Fewer samples than dimensions: the non-zero spectrum of X^T X equals
    // that of the n x n Gram matrix X X^T, and X^T u maps its eigenvectors
    // back to feature space.
    const Eigen::MatrixXd gram = data * data.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) {
      throw MathError("Gram eigendecomposition failed");
    }
    eigenvalues = solver.eigenvalues().reverse();
    g = data.transpose() * solver.eigenvectors().col(n - 1);
  }
  g.normalize();
  Orient(raw, g);

  out.spectrum.resize(n_components);
  double total = 0.0;
  for (Eigen::Index i = 0; i < n_components; ++i) {
    out.spectrum[i] = std::max(0.0, eigenvalues(i));
    total += out.spectrum[i];
  }
  for (double& v : out.spectrum) v /= total;
  out.g.assign(g.data(), g.data() + dim);
  return out;
}

GenderDirection ComputeGenderDirection(const EmbeddingTable& table,
                                       std::span<const GenderPair> pairs,
                                       const DirectionOptions& options) {
  std::vector<std::vector<double>> differences;
  std::vector<GenderPair> used;
  std::vector<GenderPair> skipped;
  for (const GenderPair& pair : pairs) {
    auto female = table.Find(pair.female_word);
    auto male = table.Find(pair.male_word);
    if (!female || !male) {
      skipped.push_back(pair);
      continue;
    }
    std::vector<double> diff(table.dim());
    const double nf = options.normalize_first ? Norm(*female) : 1.0;
    const double nm = options.normalize_first ? Norm(*male) : 1.0;
    for (size_t d = 0; d < diff.size(); ++d) {
      diff[d] = (*female)[d] / nf - (*male)[d] / nm;
    }
    differences.push_back(std::move(diff));
    used.push_back(pair);
  }
  if (used.size() < 2) {
    throw InvalidArgument("only " + std::to_string(used.size()) +
                          " gender pair(s) resolve in '" + table.name() +
                          "'; at least 2 are required");
  }
  for (const GenderPair& pair : skipped) {
    spdlog::info("gender pair {}/{} not in vocabulary, skipped",
                 pair.female_word, pair.male_word);
  }
  GenderDirection out = DirectionFromDifferences(differences, options.center);
  out.pairs_used = std::move(used);
  out.pairs_skipped = std::move(skipped);
  out.options = options;
  return out;
}

std::string_view BiasDirectionName(BiasDirection direction) {
  switch (direction) {
    case BiasDirection::kFemale:
      return "F";
    case BiasDirection::kMale:
      return "M";
    case BiasDirection::kNeutral:
      break;
  }
  return "neutral";
}

BiasScore DirectBias(const EmbeddingTable& table,
                     const GenderDirection& direction,
                     std::span<const std::string> targets, double strictness) {
  if (direction.g.size() != table.dim()) {
    throw InvalidArgument("gender direction dim does not match the table");
  }
  if (!(strictness > 0.0)) throw InvalidArgument("strictness must be positive");
  BiasScore score;
  score.strictness = strictness;
  std::set<std::string> seen;
  double abs_sum = 0.0;
  double signed_sum = 0.0;
  for (const std::string& target : targets) {
    if (Trim(target).empty() || !seen.insert(std::string(Trim(target))).second) {
      continue;
    }
    PhraseResolution hit = Resolve(table, target);
    if (!hit.vector) {
      score.missing.push_back(hit.query);
      continue;
    }
    if (Norm(*hit.vector) == 0.0) {
      throw MathError("target '" + hit.query + "' resolves to a zero vector");
    }
    const double cos = Cosine(*hit.vector, direction.g);
    score.per_word.push_back({hit.query, cos, hit.strategy_used});
    abs_sum += std::pow(std::abs(cos), strictness);
    signed_sum += cos;
  }
  score.n_resolved = static_cast<int>(score.per_word.size());
  score.n_missing = static_cast<int>(score.missing.size());
  if (score.n_resolved == 0) {
    throw InvalidArgument("none of the " + std::to_string(score.n_missing) +
                          " target terms resolve in '" + table.name() + "'");
  }
  score.db = abs_sum / score.n_resolved;
  const double signed_mean = signed_sum / score.n_resolved;
  if (signed_mean > kDirectionEpsilon) {
    score.direction = BiasDirection::kFemale;
  } else if (signed_mean < -kDirectionEpsilon) {
    score.direction = BiasDirection::kMale;
  }
  return score;
}

std::string FormatBias(const BiasScore& score, int precision) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", precision, score.db);
  std::string out(buffer);
  if (score.direction != BiasDirection::kNeutral) {
    out += "_";
    out += BiasDirectionName(score.direction);
  }
  return out;
}

nlohmann::json ToJson(const BiasScore& score) {
  nlohmann::json per_word = nlohmann::json::object();
  for (const TermCosine& entry : score.per_word) {
    per_word[entry.term] = entry.cosine;
  }
  return {{"db", score.db},
          {"direction", BiasDirectionName(score.direction)},
          {"n_resolved", score.n_resolved},
          {"n_missing", score.n_missing},
          {"missing", score.missing},
          {"strictness", score.strictness},
          {"per_word", per_word}};
}

std::vector<SpectrumRow> SpectrumReport(const GenderDirection& direction) {
  std::vector<SpectrumRow> rows;
  for (size_t i = 0; i < direction.spectrum.size(); ++i) {
    rows.push_back({static_cast<int>(i + 1), direction.spectrum[i]});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SpectrumRow& a, const SpectrumRow& b) {
                     return a.ratio > b.ratio;
                   });
  return rows;
}

std::string SpectrumCsv(std::span<const SpectrumRow> rows,
                        std::string_view label) {
  std::string out = "embedding,component,explained_variance_ratio\n";
  char buffer[64];
  for (const SpectrumRow& row : rows) {
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), row.ratio);
    out += std::string(label) + "," + std::to_string(row.component) + ",";
    out.append(buffer, end);
    out += "\n";
  }
  return out;
}

}  // namespace fairembed
