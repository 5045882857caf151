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

#ifndef FAIREMBED_TRAINED_MODEL_H_
#define FAIREMBED_TRAINED_MODEL_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "Eigen/Dense"
#include "fairembed/mlp.h"
#include "fairembed/random_forest.h"
#include "fairembed/svm.h"
#include "nlohmann/json.hpp"

namespace fairembed {

enum class LearnerKind { kSvm, kRf, kMlp };
inline constexpr LearnerKind kAllLearners[] = {LearnerKind::kSvm, LearnerKind::kRf,
                                               LearnerKind::kMlp};
std::string_view LearnerName(LearnerKind kind);
LearnerKind ParseLearner(std::string_view name);

// Only the fields relevant to the learner are meaningful.
struct Hyperparams {
  double c = 1.0;
  KernelKind kernel = KernelKind::kLinear;
  int max_depth = 1;
  double alpha = 1.0;

  nlohmann::json ToJson(LearnerKind kind) const;
  static Hyperparams FromJson(LearnerKind kind, const nlohmann::json& json);
};

// Fixed (untuned) learner settings.
struct LearnerSettings {
  SvmSolverOptions svm;
  int rf_n_trees = 100;
  MlpOptions mlp;

  nlohmann::json ToJson() const;
};

inline constexpr int kModelFormatVersion = 1;

class TrainedModel {
 public:
  LearnerKind kind = LearnerKind::kSvm;
  Hyperparams hyperparams;
  uint64_t seed = 0;
  std::variant<SvmModel, ForestModel, MlpModel> model;

  int Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  std::vector<int> PredictAll(const Eigen::MatrixXd& x) const;

  // {"format_version", "kind", "hyperparams", "seed", "parameters"}.
  nlohmann::json ToJson() const;
  // Throws ParseError for an unknown version or malformed parameters.
  static TrainedModel FromJson(const nlohmann::json& json);
};

TrainedModel TrainModel(const Eigen::MatrixXd& x, std::span<const int> y,
                        LearnerKind kind, const Hyperparams& hyperparams,
                        uint64_t seed, const LearnerSettings& settings = {});

}  // namespace fairembed

#endif  // FAIREMBED_TRAINED_MODEL_H_
