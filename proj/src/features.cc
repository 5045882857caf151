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

#include "fairembed/features.h"

#include "fairembed/tokenizer.h"

namespace fairembed {

FeatureVector Featurize(const LabeledNote& note, const EmbeddingTable& table,
                        const FeaturizeOptions& options) {
  FeatureVector out;
  out.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(table.dim()));
  for (const Token& token : Tokenize(note.text)) {
    if (options.strip_pronouns && options.rules.IsPronoun(AsciiLower(token.text))) {
      continue;
    }
    auto hit = table.Find(token.text);
    if (!hit) {
      ++out.n_oov;
      continue;
    }
    out.values += Eigen::Map<const Eigen::VectorXd>(
        hit->data(), static_cast<Eigen::Index>(hit->size()));
    ++out.n_tokens_used;
  }
  if (out.n_tokens_used == 0) {
    out.empty = true;
  } else {
    out.values /= static_cast<double>(out.n_tokens_used);
  }
  return out;
}

Eigen::MatrixXd FeatureMatrix(std::span<const LabeledNote> notes,
                              const EmbeddingTable& table,
                              const FeaturizeOptions& options) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(notes.size()),
                    static_cast<Eigen::Index>(table.dim()));
  for (size_t i = 0; i < notes.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) =
        Featurize(notes[i], table, options).values.transpose();
  }
  return x;
}

std::vector<int> LabelVector(std::span<const LabeledNote> notes) {
  std::vector<int> y;
  y.reserve(notes.size());
  for (const LabeledNote& note : notes) {
    y.push_back(note.label == Label::kDepression ? 1 : 0);
  }
  return y;
}

}  // namespace fairembed
