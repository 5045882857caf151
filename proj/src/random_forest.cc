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

#include "fairembed/random_forest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairembed/errors.h"

namespace fairembed {

int DecisionTree::Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  int index = 0;
  while (!nodes[index].is_leaf()) {
    const TreeNode& node = nodes[index];
    index = x(node.feature) <= node.threshold ? node.left : node.right;
  }
  return nodes[index].prediction;
}

int DecisionTree::Depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int deepest = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, depth[i]);
    if (!nodes[i].is_leaf()) {
      depth[nodes[i].left] = depth[i] + 1;
      depth[nodes[i].right] = depth[i] + 1;
    }
  }
  return deepest;
}

namespace {

// n * gini for a node with the given class counts.
double WeightedGini(double c0, double c1) {
  const double total = c0 + c1;
  if (total == 0) return 0.0;
  return total - (c0 * c0 + c1 * c1) / total;
}

constexpr double kImprovementEps = 1e-12;

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& x, std::span<const int> y,
              const TreeOptions& options, Rng& rng)
      : x_(x), y_(y), options_(options), rng_(rng) {
    const int dim = static_cast<int>(x.cols());
    max_features_ = options.max_features > 0
                        ? std::min(options.max_features, dim)
                        : std::max(1, static_cast<int>(std::sqrt(static_cast<double>(dim))));
  }

  DecisionTree Build(std::vector<int> samples) {
    Grow(std::move(samples), 0);
    return std::move(tree_);
  }

 private:
  int Grow(std::vector<int> samples, int depth) {
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    TreeNode node;
    for (int s : samples) (y_[s] == 1 ? node.count1 : node.count0)++;
    node.prediction = node.count1 > node.count0 ? 1 : 0;

    const double parent = WeightedGini(node.count0, node.count1);
    if (depth < options_.max_depth && samples.size() >= 2 && parent > 0.0) {
      int best_feature = -1;
      double best_threshold = 0.0;
      double best_impurity = parent - kImprovementEps;
      std::vector<std::pair<double, int>> column(samples.size());
      for (int f : CandidateFeatures()) {
        for (size_t k = 0; k < samples.size(); ++k) {
          column[k] = {x_(samples[k], f), y_[samples[k]]};
        }
        std::sort(column.begin(), column.end());
        double left0 = 0, left1 = 0;
        for (size_t k = 0; k + 1 < column.size(); ++k) {
          (column[k].second == 1 ? left1 : left0) += 1;
          if (column[k].first == column[k + 1].first) continue;
          const double right0 = node.count0 - left0;
          const double right1 = node.count1 - left1;
          const double impurity =
              WeightedGini(left0, left1) + WeightedGini(right0, right1);
          if (impurity < best_impurity - (best_feature < 0 ? 0.0 : kImprovementEps)) {
            best_impurity = impurity;
            best_feature = f;
            double threshold = 0.5 * (column[k].first + column[k + 1].first);
            if (!(threshold < column[k + 1].first)) threshold = column[k].first;
            best_threshold = threshold;
          }
        }
      }
      if (best_feature >= 0) {
        std::vector<int> left, right;
        for (int s : samples) {
          (x_(s, best_feature) <= best_threshold ? left : right).push_back(s);
        }
        samples.clear();
        samples.shrink_to_fit();
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = Grow(std::move(left), depth + 1);
        node.right = Grow(std::move(right), depth + 1);
      }
    }
    tree_.nodes[index] = node;
    return index;
  }

  std::vector<int> CandidateFeatures() {
    const int dim = static_cast<int>(x_.cols());
    std::vector<int> features(dim);
    std::iota(features.begin(), features.end(), 0);
    if (max_features_ >= dim) return features;
    for (int k = 0; k < max_features_; ++k) {
      const int pick = k + static_cast<int>(UniformIndex(rng_, dim - k));
      std::swap(features[k], features[pick]);
    }
    features.resize(max_features_);
    std::sort(features.begin(), features.end());
    return features;
  }

  const Eigen::MatrixXd& x_;
  std::span<const int> y_;
  TreeOptions options_;
  Rng& rng_;
  int max_features_ = 1;
  DecisionTree tree_;
};

}  // namespace

DecisionTree GrowTree(const Eigen::MatrixXd& x, std::span<const int> y,
                      std::span<const int> samples, const TreeOptions& options,
                      Rng& rng) {
  if (samples.empty()) throw InvalidArgument("tree: no samples");
  TreeBuilder builder(x, y, options, rng);
  return builder.Build(std::vector<int>(samples.begin(), samples.end()));
}

int ForestModel::Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  size_t votes = 0;
  for (const DecisionTree& tree : trees) votes += tree.Predict(x);
  return 2 * votes > trees.size() ? 1 : 0;
}

ForestModel TrainForest(const Eigen::MatrixXd& x, std::span<const int> y,
                        const ForestOptions& options, uint64_t seed) {
  if (options.max_depth < 1 || options.max_depth > 50) {
    throw InvalidArgument("forest: max_depth must be in [1, 50]");
  }
  if (options.n_trees < 1) throw InvalidArgument("forest: n_trees must be >= 1");
  const int n = static_cast<int>(x.rows());
  if (n == 0 || static_cast<size_t>(n) != y.size()) {
    throw InvalidArgument("forest: feature rows and labels differ in count");
  }
  TreeOptions tree_options{options.max_depth, options.max_features};
  ForestModel model;
  model.trees.reserve(options.n_trees);
  std::vector<int> samples(n);
  for (int t = 0; t < options.n_trees; ++t) {
    Rng rng(DeriveSeed(seed, {static_cast<uint64_t>(t)}));
    if (options.bootstrap) {
      for (int& s : samples) s = static_cast<int>(UniformIndex(rng, n));
    } else {
      std::iota(samples.begin(), samples.end(), 0);
    }
    model.trees.push_back(GrowTree(x, y, samples, tree_options, rng));
  }
  return model;
}

nlohmann::json ForestModel::ToJson() const {
  nlohmann::json out = nlohmann::json::array();
  for (const DecisionTree& tree : trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& node : tree.nodes) {
      nodes.push_back({node.feature, node.threshold, node.left, node.right,
                       node.prediction, node.count0, node.count1});
    }
    out.push_back(std::move(nodes));
  }
  return {{"trees", std::move(out)}};
}

ForestModel ForestModel::FromJson(const nlohmann::json& json) {
  ForestModel model;
  for (const auto& tree_json : json.at("trees")) {
    DecisionTree tree;
    for (const auto& n : tree_json) {
      if (!n.is_array() || n.size() != 7) throw ParseError("forest: malformed node");
      TreeNode node;
      node.feature = n[0].get<int>();
      node.threshold = n[1].get<double>();
      node.left = n[2].get<int>();
      node.right = n[3].get<int>();
      node.prediction = n[4].get<int>();
      node.count0 = n[5].get<int>();
      node.count1 = n[6].get<int>();
      tree.nodes.push_back(node);
    }
    if (tree.nodes.empty()) throw ParseError("forest: empty tree");
    const int size = static_cast<int>(tree.nodes.size());
    for (const TreeNode& node : tree.nodes) {
      if (!node.is_leaf() && (node.left <= 0 || node.left >= size ||
                              node.right <= 0 || node.right >= size)) {
        throw ParseError("forest: child index out of range");
      }
    }
    model.trees.push_back(std::move(tree));
  }
  if (model.trees.empty()) throw ParseError("forest: no trees");
  return model;
}

}  // namespace fairembed
