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

#ifndef FAIREMBED_EMBEDDING_STORE_H_
#define FAIREMBED_EMBEDDING_STORE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fairembed {

enum class CasePolicy { kPreserve, kFoldLower };
enum class VectorFormat { kW2vText, kTsv };

std::string_view CasePolicyName(CasePolicy policy);
CasePolicy ParseCasePolicy(std::string_view name);
std::string_view VectorFormatName(VectorFormat format);
VectorFormat ParseVectorFormat(std::string_view name);

// ASCII lower-casing; bytes outside ASCII are left untouched.
std::string AsciiLower(std::string_view text);

// Word -> dense vector table. Vectors are stored row-major in one buffer and
// kept in insertion order. Once loaded, a table is never mutated and may be
// shared across threads.
class EmbeddingTable {
 public:
  EmbeddingTable(std::string name, size_t dim, CasePolicy case_policy);

  // Inserts `word` unless an entry with the same key (after case policy) is
  // already present, in which case the table is unchanged and false is
  // returned. Throws InvalidArgument for a wrong-length, all-zero or
  // non-finite vector.
  bool Insert(std::string_view word, std::span<const double> vector);

  // Returns the stored vector for `word` after applying the case policy.
  std::optional<std::span<const double>> Find(std::string_view word) const;
  bool Contains(std::string_view word) const { return Find(word).has_value(); }

  const std::string& name() const { return name_; }
  size_t dim() const { return dim_; }
  size_t size() const { return words_.size(); }
  CasePolicy case_policy() const { return case_policy_; }

  // Stored keys in insertion order.
  const std::vector<std::string>& words() const { return words_; }
  std::span<const double> row(size_t index) const {
    return {data_.data() + index * dim_, dim_};
  }

  std::string Key(std::string_view word) const;

 private:
  std::string name_;
  size_t dim_;
  CasePolicy case_policy_;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::unordered_map<std::string, size_t> index_;
};

// Parses a text vector file. Duplicate words keep their first vector and
// append a warning to `warnings` (and the log). Throws IoError when the file
// cannot be read and ParseError for malformed content; parse errors name the
// 1-based line number.
EmbeddingTable LoadVectors(const std::string& path, VectorFormat format,
                           CasePolicy case_policy,
                           std::vector<std::string>* warnings = nullptr);

// Same as LoadVectors over in-memory content; `name` labels the table.
EmbeddingTable ParseVectors(std::string_view content, std::string name,
                            VectorFormat format, CasePolicy case_policy,
                            std::vector<std::string>* warnings = nullptr);

// Shortest round-trip decimal formatting, so re-loading is exact.
std::string SerializeTsv(const EmbeddingTable& table);
void WriteTsv(const EmbeddingTable& table, const std::string& path);

enum class ResolveStrategy { kExact, kUnderscoreJoined, kTokenMean, kMissing };
std::string_view ResolveStrategyName(ResolveStrategy strategy);

struct PhraseResolution {
  std::string query;
  ResolveStrategy strategy_used = ResolveStrategy::kMissing;
  std::optional<std::vector<double>> vector;
  // Tokens that contributed to a token-mean resolution.
  std::vector<std::string> tokens_used;
};

// Looks up a word or multi-word phrase: exact match, then the whitespace runs
// joined by '_', then the mean of the in-vocabulary whitespace tokens. Throws
// InvalidArgument if the query is blank.
PhraseResolution Resolve(const EmbeddingTable& table, std::string_view query);

}  // namespace fairembed

#endif  // FAIREMBED_EMBEDDING_STORE_H_
