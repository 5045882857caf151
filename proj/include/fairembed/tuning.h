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

#ifndef FAIREMBED_TUNING_H_
#define FAIREMBED_TUNING_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "fairembed/trained_model.h"
#include "nlohmann/json.hpp"

namespace fairembed {

struct HyperparamGrid {
  std::vector<double> svm_c;
  std::vector<KernelKind> svm_kernels;
  std::vector<int> rf_max_depth;
  std::vector<double> mlp_alpha;

  // C in {0.01, 0.1, 1, 10, 100}; kernels {rbf, sigmoid, linear};
  // max_depth in {1, 2, 3, 5, 8, 12, 18, 27, 38, 50}; alpha in
  // {0.1, 0.3, 1, 3, 10}.
  static HyperparamGrid Default();
  // Default() with every max_depth in [1, 50].
  static HyperparamGrid FullDepthRange();

  // Throws InvalidArgument for an empty grid or a value outside
  // C in [0.01, 100], max_depth in [1, 50], alpha in [0.1, 10].
  void Validate() const;

  // Grid points for `kind` ordered from simplest to most complex: ascending
  // C (then linear, rbf, sigmoid), ascending max_depth, descending alpha.
  std::vector<Hyperparams> Points(LearnerKind kind) const;

  nlohmann::json ToJson() const;
  static HyperparamGrid FromJson(const nlohmann::json& json);
};

// Fold index in [0, k) for each sample: each class is shuffled with `seed`
// and dealt round-robin. Throws InvalidArgument if a class has fewer than k
// members.
std::vector<int> StratifiedFolds(std::span<const int> y, int k, uint64_t seed);

struct GridPointScore {
  Hyperparams hyperparams;
  std::vector<double> fold_macro_f1;
  double mean_macro_f1 = 0.0;
  // Non-empty if any fold failed to train; the point is then not eligible.
  std::string error;
};

struct TuneResult {
  TrainedModel model;
  std::vector<GridPointScore> scores;
  size_t selected = 0;
  std::vector<int> folds;
};

inline constexpr int kCvFolds = 3;

// Stratified 3-fold CV over the grid, maximizing mean macro-F1; the first
// (simplest) of tied points wins. Fold f of grid point g trains with seed
// DeriveSeed(seed, {f, g}); the refit on all rows uses `seed` itself, so a
// one-point grid reproduces TrainModel(x, y, kind, point, seed).
TuneResult Tune(const Eigen::MatrixXd& x, std::span<const int> y,
                LearnerKind kind, const HyperparamGrid& grid, uint64_t seed,
                const LearnerSettings& settings = {}, int threads = 1);

}  // namespace fairembed

#endif  // FAIREMBED_TUNING_H_
