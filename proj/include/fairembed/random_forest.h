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

#ifndef FAIREMBED_RANDOM_FOREST_H_
#define FAIREMBED_RANDOM_FOREST_H_

#include <cstdint>
#include <span>
#include <vector>

#include "Eigen/Dense"
#include "fairembed/rng.h"
#include "nlohmann/json.hpp"

namespace fairembed {

// Internal nodes send x[feature] <= threshold to `left`. Leaves have
// feature == -1 and predict the majority class (ties go to class 0).
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int prediction = 0;
  int count0 = 0;
  int count1 = 0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  int Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  int Depth() const;
  bool operator==(const DecisionTree&) const = default;
};

struct TreeOptions {
  // A root-only tree has depth 0; max_depth = 1 grows a stump.
  int max_depth = 1;
  // Features examined per split; 0 selects floor(sqrt(dim)), at least 1.
  int max_features = 0;
};

// CART with Gini impurity. `samples` lists row indices (repeats allowed, as
// in a bootstrap draw). Candidate thresholds are midpoints between
// consecutive distinct values; the first feature (ascending index) and then
// the smallest threshold win ties. A node splits only if the weighted child
// impurity is strictly below its own.
DecisionTree GrowTree(const Eigen::MatrixXd& x, std::span<const int> y,
                      std::span<const int> samples, const TreeOptions& options,
                      Rng& rng);

struct ForestOptions {
  int n_trees = 100;
  int max_depth = 1;
  bool bootstrap = true;
  int max_features = 0;
};

class ForestModel {
 public:
  std::vector<DecisionTree> trees;

  // Majority vote; ties go to class 0.
  int Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  nlohmann::json ToJson() const;
  static ForestModel FromJson(const nlohmann::json& json);
  bool operator==(const ForestModel&) const = default;
};

// Tree t draws from the stream DeriveSeed(seed, {t}), so trees are
// independent of build order. A single-class input yields constant trees.
// Throws InvalidArgument for max_depth outside [1, 50] or n_trees < 1.
ForestModel TrainForest(const Eigen::MatrixXd& x, std::span<const int> y,
                        const ForestOptions& options, uint64_t seed);

}  // namespace fairembed

#endif  // FAIREMBED_RANDOM_FOREST_H_
