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

#include "fairembed/mlp.h"

#include <cmath>
#include <random>
#include <vector>

#include "fairembed/errors.h"
#include "fairembed/metrics.h"
#include "gtest/gtest.h"

namespace fairembed {
namespace {

Eigen::MatrixXd Gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

MlpParams RandomParams(std::mt19937_64& rng, int dim, int hidden) {
  MlpParams p;
  p.w1 = Gaussian(rng, hidden, dim);
  p.b1 = Gaussian(rng, hidden, 1).col(0);
  p.w2 = Gaussian(rng, hidden, 1).col(0);
  p.b2 = 0.3;
  return p;
}

TEST(MlpTest, PackUnpackRoundTrip) {
  std::mt19937_64 rng(1);
  MlpParams p = RandomParams(rng, 4, 3);
  EXPECT_EQ(p.size(), 4 * 3 + 3 + 3 + 1);
  EXPECT_TRUE(MlpParams::Unpack(p.Pack(), 4, 3) == p);
}

TEST(MlpTest, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const int dim = 3 + trial, hidden = 4 + trial, n = 12;
    const Eigen::MatrixXd x = Gaussian(rng, n, dim);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) y[i] = static_cast<int>(rng() % 2);
    const MlpParams params = RandomParams(rng, dim, hidden);
    const double alpha = 0.3 * (trial + 1);

    MlpParams grad;
    MlpLoss(params, x, y, alpha, &grad);
    const Eigen::VectorXd analytic = grad.Pack();
    const Eigen::VectorXd flat = params.Pack();
    Eigen::VectorXd numeric(flat.size());
    const double h = 1e-5;
    for (Eigen::Index k = 0; k < flat.size(); ++k) {
      Eigen::VectorXd plus = flat, minus = flat;
      plus(k) += h;
      minus(k) -= h;
      numeric(k) = (MlpLoss(MlpParams::Unpack(plus, dim, hidden), x, y, alpha) -
                    MlpLoss(MlpParams::Unpack(minus, dim, hidden), x, y, alpha)) /
                   (2 * h);
    }
    const double rel = (analytic - numeric).norm() /
                       std::max(1e-12, analytic.norm() + numeric.norm());
    EXPECT_LT(rel, 1e-4) << "trial " << trial;
  }
}

TEST(MlpTest, LossIncludesScaledL2Penalty) {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd x = Gaussian(rng, 8, 2);
  const std::vector<int> y = {0, 1, 0, 1, 1, 0, 0, 1};
  const MlpParams p = RandomParams(rng, 2, 3);
  const double penalty = p.w1.squaredNorm() + p.w2.squaredNorm();
  EXPECT_NEAR(MlpLoss(p, x, y, 2.0) - MlpLoss(p, x, y, 0.0), 2.0 * penalty / (2 * 8), 1e-12);
}

TEST(MlpTest, LearnsSeparableData) {
  std::mt19937_64 rng(4);
  const int n = 200;
  Eigen::MatrixXd x = Gaussian(rng, n, 5);
  std::vector<int> y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = i % 2;
    x(i, 0) += y[i] == 1 ? 2.5 : -2.5;
  }
  MlpTrainInfo info;
  const MlpModel model = TrainMlp(x, y, 0.1, 7, {}, &info);
  std::vector<int> predicted(n);
  for (int i = 0; i < n; ++i) predicted[i] = model.Predict(x.row(i).transpose());
  EXPECT_GE(MacroF1(y, predicted), 0.95);
  EXPECT_GT(info.epochs, 0);
  EXPECT_EQ(info.loss_curve.size(), static_cast<size_t>(info.epochs));
  EXPECT_LT(info.loss_curve.back(), info.loss_curve.front());
}

TEST(MlpTest, HeavyPenaltyCollapsesToPrior) {
  std::mt19937_64 rng(5);
  const int n = 120;
  const Eigen::MatrixXd x = Gaussian(rng, n, 4);
  std::vector<int> y(n, 0);
  for (int i = 0; i < 36; ++i) y[i] = 1;
  const MlpModel model = TrainMlp(x, y, 1e6, 3, {.max_epochs = 2000});
  EXPECT_LT(model.params.w1.norm(), 1e-3);
  EXPECT_LT(model.params.w2.norm(), 1e-3);
  for (int i = 0; i < n; ++i) {
    EXPECT_NEAR(model.Probability(x.row(i).transpose()), 0.3, 0.05);
    EXPECT_EQ(model.Predict(x.row(i).transpose()), 0);
  }
}

TEST(MlpTest, DeterministicForSeed) {
  std::mt19937_64 rng(6);
  const Eigen::MatrixXd x = Gaussian(rng, 50, 3);
  std::vector<int> y(50);
  for (int i = 0; i < 50; ++i) y[i] = x(i, 1) > 0;
  const MlpOptions options{.hidden = 8, .max_epochs = 40};
  EXPECT_TRUE(TrainMlp(x, y, 1.0, 11, options) == TrainMlp(x, y, 1.0, 11, options));
  EXPECT_FALSE(TrainMlp(x, y, 1.0, 11, options) == TrainMlp(x, y, 1.0, 12, options));
}

TEST(MlpTest, RejectsSingleClassAndNegativeAlpha) {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Ones(4, 2);
  EXPECT_THROW(TrainMlp(x, std::vector<int>{1, 1, 1, 1}, 1.0, 1), InvalidArgument);
  EXPECT_THROW(TrainMlp(x, std::vector<int>{0, 1, 0, 1}, -1.0, 1), InvalidArgument);
}

TEST(MlpTest, JsonRoundTrip) {
  std::mt19937_64 rng(7);
  MlpModel model;
  model.params = RandomParams(rng, 3, 5);
  const MlpModel back = MlpModel::FromJson(nlohmann::json::parse(model.ToJson().dump()));
  EXPECT_TRUE(back == model);
}

}  // namespace
}  // namespace fairembed
