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

#ifndef FAIREMBED_MLP_H_
#define FAIREMBED_MLP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "Eigen/Dense"
#include "nlohmann/json.hpp"

namespace fairembed {

// dim -> hidden (ReLU) -> 1 (sigmoid).
struct MlpParams {
  Eigen::MatrixXd w1;  // hidden x dim
  Eigen::VectorXd b1;  // hidden
  Eigen::VectorXd w2;  // hidden
  double b2 = 0.0;

  Eigen::Index size() const { return w1.size() + b1.size() + w2.size() + 1; }
  // Flat layout: w1 (column-major), b1, w2, b2.
  Eigen::VectorXd Pack() const;
  static MlpParams Unpack(const Eigen::VectorXd& flat, Eigen::Index dim,
                          Eigen::Index hidden);
  bool operator==(const MlpParams& other) const;
};

// Mean binary cross-entropy over the rows of `x` plus
// (alpha / (2 * rows)) * (|w1|^2 + |w2|^2); biases are not penalized. Fills
// `grad` with the analytic gradient when non-null.
double MlpLoss(const MlpParams& params, const Eigen::MatrixXd& x,
               std::span<const int> y, double alpha, MlpParams* grad = nullptr);

struct MlpOptions {
  int hidden = 100;
  int batch_size = 32;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int max_epochs = 500;
  // Stop after more than `patience` consecutive epochs whose loss fails to
  // improve on the best loss by at least `tolerance`.
  double tolerance = 1e-5;
  int patience = 10;

  nlohmann::json ToJson() const;
};

struct MlpTrainInfo {
  int epochs = 0;
  std::vector<double> loss_curve;
};

class MlpModel {
 public:
  MlpParams params;

  double Probability(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  int Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return Probability(x) >= 0.5 ? 1 : 0;
  }

  nlohmann::json ToJson() const;
  static MlpModel FromJson(const nlohmann::json& json);
  bool operator==(const MlpModel& other) const { return params == other.params; }
};

// Glorot-uniform initialization, shuffled mini-batches and Adam updates, all
// drawn from `seed`. Throws InvalidArgument for single-class input or
// negative alpha and MathError if the loss becomes non-finite.
MlpModel TrainMlp(const Eigen::MatrixXd& x, std::span<const int> y,
                  double alpha, uint64_t seed, const MlpOptions& options = {},
                  MlpTrainInfo* info = nullptr);

}  // namespace fairembed

#endif  // FAIREMBED_MLP_H_
