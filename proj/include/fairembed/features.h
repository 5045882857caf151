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

#ifndef FAIREMBED_FEATURES_H_
#define FAIREMBED_FEATURES_H_

#include <span>
#include <vector>

#include "Eigen/Dense"
#include "fairembed/corpus.h"
#include "fairembed/embedding_store.h"
#include "fairembed/swap_rules.h"

namespace fairembed {

// Mean-pooled embedding of a note's in-vocabulary tokens.
struct FeatureVector {
  Eigen::VectorXd values;
  int n_tokens_used = 0;
  int n_oov = 0;
  // Set when no token was in vocabulary; values is then all zeros.
  bool empty = false;
};

struct FeaturizeOptions {
  // Drop pronoun-lexicon tokens before pooling (diagnostic use).
  bool strip_pronouns = false;
  SwapRules rules = SwapRules::Default();
};

FeatureVector Featurize(const LabeledNote& note, const EmbeddingTable& table,
                        const FeaturizeOptions& options = {});

// Rows are notes in input order.
Eigen::MatrixXd FeatureMatrix(std::span<const LabeledNote> notes,
                              const EmbeddingTable& table,
                              const FeaturizeOptions& options = {});

// 1 for depression, 0 for none.
std::vector<int> LabelVector(std::span<const LabeledNote> notes);

}  // namespace fairembed

#endif  // FAIREMBED_FEATURES_H_
