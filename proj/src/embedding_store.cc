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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fairembed/errors.h"
#include "fairembed/text_util.h"
#include "spdlog/spdlog.h"

namespace fairembed {

std::string_view CasePolicyName(CasePolicy policy) {
  return policy == CasePolicy::kPreserve ? "preserve" : "fold-lower";
}

CasePolicy ParseCasePolicy(std::string_view name) {
  if (name == "preserve") return CasePolicy::kPreserve;
  if (name == "fold-lower") return CasePolicy::kFoldLower;
  throw InvalidArgument("unknown case policy '" + std::string(name) +
                        "' (expected preserve or fold-lower)");
}

std::string_view VectorFormatName(VectorFormat format) {
  return format == VectorFormat::kTsv ? "tsv" : "w2v-text";
}

VectorFormat ParseVectorFormat(std::string_view name) {
  if (name == "tsv") return VectorFormat::kTsv;
  if (name == "w2v-text" || name == "w2v") return VectorFormat::kW2vText;
  throw InvalidArgument("unknown vector format '" + std::string(name) +
                        "' (expected tsv or w2v-text)");
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

EmbeddingTable::EmbeddingTable(std::string name, size_t dim,
                               CasePolicy case_policy)
    : name_(std::move(name)), dim_(dim), case_policy_(case_policy) {
  if (dim_ == 0) throw InvalidArgument("embedding dimension must be positive");
}

std::string EmbeddingTable::Key(std::string_view word) const {
  return case_policy_ == CasePolicy::kFoldLower ? AsciiLower(word)
                                                : std::string(word);
}

bool EmbeddingTable::Insert(std::string_view word,
                            std::span<const double> vector) {
  if (vector.size() != dim_) {
    throw InvalidArgument("vector for '" + std::string(word) + "' has " +
                          std::to_string(vector.size()) +
                          " components, table dim is " + std::to_string(dim_));
  }
  bool all_zero = true;
  for (double v : vector) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("vector for '" + std::string(word) +
                            "' contains a non-finite value");
    }
    if (v != 0.0) all_zero = false;
  }
  if (all_zero) {
    throw InvalidArgument("vector for '" + std::string(word) + "' is all zeros");
  }
  std::string key = Key(word);
  if (index_.contains(key)) return false;
  index_.emplace(key, words_.size());
  words_.push_back(std::move(key));
  data_.insert(data_.end(), vector.begin(), vector.end());
  return true;
}

std::optional<std::span<const double>> EmbeddingTable::Find(
    std::string_view word) const {
  auto it = case_policy_ == CasePolicy::kFoldLower
                ? index_.find(AsciiLower(word))
                : index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

namespace {

struct Row {
  std::string word;
  std::vector<std::string_view> fields;
};

Row SplitRow(std::string_view line, VectorFormat format) {
  Row row;
  if (format == VectorFormat::kTsv) {
    std::vector<std::string_view> parts = SplitOn(line, '\t');
    row.word = std::string(parts.front());
    row.fields.assign(parts.begin() + 1, parts.end());
  } else {
    std::vector<std::string_view> parts = SplitWhitespace(line);
    row.word = std::string(parts.front());
    row.fields.assign(parts.begin() + 1, parts.end());
  }
  return row;
}

std::string LineTag(const std::string& source, size_t line_number) {
  return source + ":" + std::to_string(line_number);
}

double ParseComponent(std::string_view field, const std::string& source,
                      size_t line_number, const std::string& word) {
  field = Trim(field);
  double value = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(LineTag(source, line_number) + ": value '" +
                     std::string(field) + "' for word '" + word +
                     "' is out of range");
  }
  if (ec != std::errc() || ptr != end) {
    throw ParseError(LineTag(source, line_number) + ": cannot parse '" +
                     std::string(field) + "' as a number for word '" + word +
                     "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(LineTag(source, line_number) + ": non-finite value '" +
                     std::string(field) + "' for word '" + word + "'");
  }
  return value;
}

}  // namespace

EmbeddingTable ParseVectors(std::string_view content, std::string name,
                            VectorFormat format, CasePolicy case_policy,
                            std::vector<std::string>* warnings) {
  std::vector<std::string_view> lines = SplitLines(content);
  size_t first_data = 0;
  // Skip leading blank lines so the header is the first meaningful line.
  while (first_data < lines.size() && Trim(lines[first_data]).empty()) {
    ++first_data;
  }
  if (first_data == lines.size()) {
    throw ParseError(name + ": empty vector file");
  }

  size_t declared_count = 0;
  size_t dim = 0;
  if (format == VectorFormat::kW2vText) {
    std::vector<std::string_view> header = SplitWhitespace(lines[first_data]);
    auto parse_size = [&](std::string_view text, size_t& out) {
      auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), out);
      return ec == std::errc() && ptr == text.data() + text.size();
    };
    if (header.size() != 2 || !parse_size(header[0], declared_count) ||
        !parse_size(header[1], dim) || dim == 0) {
      throw ParseError(LineTag(name, first_data + 1) +
                       ": malformed header, expected \"vocab_count dim\"");
    }
    ++first_data;
  }

  std::optional<EmbeddingTable> table;
  if (dim > 0) table.emplace(name, dim, case_policy);
  size_t data_rows = 0;
  std::vector<double> values;
  for (size_t i = first_data; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const size_t line_number = i + 1;
    Row row = SplitRow(lines[i], format);
    if (row.word.empty()) {
      throw ParseError(LineTag(name, line_number) + ": empty word field");
    }
    if (!table) {
      if (row.fields.empty()) {
        throw ParseError(LineTag(name, line_number) + ": row for '" +
                         row.word + "' has no vector components");
      }
      table.emplace(name, row.fields.size(), case_policy);
    }
    if (row.fields.size() != table->dim()) {
      throw ParseError(LineTag(name, line_number) + ": row for '" + row.word +
                       "' has " + std::to_string(row.fields.size()) +
                       " components, expected " +
                       std::to_string(table->dim()));
    }
    values.clear();
    for (std::string_view field : row.fields) {
      values.push_back(ParseComponent(field, name, line_number, row.word));
    }
    if (std::all_of(values.begin(), values.end(),
                    [](double v) { return v == 0.0; })) {
      throw ParseError(LineTag(name, line_number) + ": vector for '" +
                       row.word + "' is all zeros");
    }
    ++data_rows;
    if (!table->Insert(row.word, values)) {
      std::string message = LineTag(name, line_number) + ": duplicate word '" +
                            row.word + "', keeping the first occurrence";
      spdlog::warn("{}", message);
      if (warnings) warnings->push_back(std::move(message));
    }
  }
  if (!table || data_rows == 0) {
    throw ParseError(name + ": vector file has no data rows");
  }
  if (format == VectorFormat::kW2vText && data_rows != declared_count) {
    throw ParseError(name + ": header declares " +
                     std::to_string(declared_count) + " rows but file has " +
                     std::to_string(data_rows));
  }
  return std::move(*table);
}

EmbeddingTable LoadVectors(const std::string& path, VectorFormat format,
                           CasePolicy case_policy,
                           std::vector<std::string>* warnings) {
  return ParseVectors(ReadFile(path), path, format, case_policy, warnings);
}

std::string SerializeTsv(const EmbeddingTable& table) {
  std::string out;
  char buffer[64];
  for (size_t i = 0; i < table.size(); ++i) {
    out += table.words()[i];
    for (double v : table.row(i)) {
      auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
      out += '\t';
      out.append(buffer, ptr);
    }
    out += '\n';
  }
  return out;
}

void WriteTsv(const EmbeddingTable& table, const std::string& path) {
  WriteFile(path, SerializeTsv(table));
}

std::string_view ResolveStrategyName(ResolveStrategy strategy) {
  switch (strategy) {
    case ResolveStrategy::kExact:
      return "exact";
    case ResolveStrategy::kUnderscoreJoined:
      return "underscore-joined";
    case ResolveStrategy::kTokenMean:
      return "token-mean";
    case ResolveStrategy::kMissing:
      break;
  }
  return "missing";
}

PhraseResolution Resolve(const EmbeddingTable& table, std::string_view query) {
  std::string_view trimmed = Trim(query);
  if (trimmed.empty()) throw InvalidArgument("resolve: blank query");

  PhraseResolution result;
  result.query = std::string(trimmed);
  if (auto hit = table.Find(trimmed)) {
    result.strategy_used = ResolveStrategy::kExact;
    result.vector.emplace(hit->begin(), hit->end());
    return result;
  }

  std::vector<std::string_view> tokens = SplitWhitespace(trimmed);
  if (tokens.size() < 2) return result;

  std::string joined;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) joined += '_';
    joined += tokens[i];
  }
  if (auto hit = table.Find(joined)) {
    result.strategy_used = ResolveStrategy::kUnderscoreJoined;
    result.vector.emplace(hit->begin(), hit->end());
    return result;
  }

  std::vector<double> sum(table.dim(), 0.0);
  for (std::string_view token : tokens) {
    auto hit = table.Find(token);
    if (!hit) continue;
    for (size_t d = 0; d < sum.size(); ++d) sum[d] += (*hit)[d];
    result.tokens_used.emplace_back(token);
  }
  if (result.tokens_used.empty()) return result;
  const double count = static_cast<double>(result.tokens_used.size());
  for (double& v : sum) v /= count;
  result.strategy_used = ResolveStrategy::kTokenMean;
  result.vector = std::move(sum);
  return result;
}

}  // namespace fairembed
