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
#include <numeric>

#include "fairembed/errors.h"
#include "fairembed/json_util.h"
#include "fairembed/rng.h"

namespace fairembed {

Eigen::VectorXd MlpParams::Pack() const {
  Eigen::VectorXd flat(size());
  Eigen::Index at = 0;
  flat.segment(at, w1.size()) = Eigen::Map<const Eigen::VectorXd>(w1.data(), w1.size());
  at += w1.size();
  flat.segment(at, b1.size()) = b1;
  at += b1.size();
  flat.segment(at, w2.size()) = w2;
  at += w2.size();
  flat(at) = b2;
  return flat;
}

MlpParams MlpParams::Unpack(const Eigen::VectorXd& flat, Eigen::Index dim,
                            Eigen::Index hidden) {
  MlpParams p;
  Eigen::Index at = 0;
  p.w1 = Eigen::Map<const Eigen::MatrixXd>(flat.data(), hidden, dim);
  at += hidden * dim;
  p.b1 = flat.segment(at, hidden);
  at += hidden;
  p.w2 = flat.segment(at, hidden);
  at += hidden;
  p.b2 = flat(at);
  return p;
}

bool MlpParams::operator==(const MlpParams& other) const {
  return w1 == other.w1 && b1 == other.b1 && w2 == other.w2 && b2 == other.b2;
}

namespace {

double Softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double MlpLoss(const MlpParams& params, const Eigen::MatrixXd& x,
               std::span<const int> y, double alpha, MlpParams* grad) {
  const Eigen::Index rows = x.rows();
  const double n = static_cast<double>(rows);
  Eigen::MatrixXd z1 = x * params.w1.transpose();
  z1.rowwise() += params.b1.transpose();
  const Eigen::MatrixXd a1 = z1.cwiseMax(0.0);
  const Eigen::VectorXd z2 = (a1 * params.w2).array() + params.b2;

  double data_loss = 0.0;
  Eigen::VectorXd dz2(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double target = y[i];
    data_loss += Softplus(z2(i)) - target * z2(i);
    dz2(i) = (Sigmoid(z2(i)) - target) / n;
  }
  const double penalty = params.w1.squaredNorm() + params.w2.squaredNorm();
  const double loss = data_loss / n + 0.5 * alpha * penalty / n;

  if (grad) {
    grad->w2 = a1.transpose() * dz2 + (alpha / n) * params.w2;
    grad->b2 = dz2.sum();
    Eigen::MatrixXd dz1 = dz2 * params.w2.transpose();
    dz1.array() *= (z1.array() > 0.0).cast<double>();
    grad->w1 = dz1.transpose() * x + (alpha / n) * params.w1;
    grad->b1 = dz1.colwise().sum().transpose();
  }
  return loss;
}

nlohmann::json MlpOptions::ToJson() const {
  return {{"hidden", hidden},         {"activation", "relu"},
          {"batch_size", batch_size}, {"learning_rate", learning_rate},
          {"optimizer", "adam"},      {"beta1", beta1},
          {"beta2", beta2},           {"epsilon", epsilon},
          {"max_epochs", max_epochs}, {"tolerance", tolerance},
          {"patience", patience}};
}

double MlpModel::Probability(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::VectorXd a1 = (params.w1 * x + params.b1).cwiseMax(0.0);
  return Sigmoid(a1.dot(params.w2) + params.b2);
}

nlohmann::json MlpModel::ToJson() const {
  return {{"w1", MatrixToJson(params.w1)},
          {"b1", VectorToJson(params.b1)},
          {"w2", VectorToJson(params.w2)},
          {"b2", params.b2}};
}

MlpModel MlpModel::FromJson(const nlohmann::json& json) {
  MlpModel model;
  model.params.w1 = MatrixFromJson(json.at("w1"));
  model.params.b1 = VectorFromJson(json.at("b1"));
  model.params.w2 = VectorFromJson(json.at("w2"));
  model.params.b2 = json.at("b2").get<double>();
  const Eigen::Index hidden = model.params.w1.rows();
  if (model.params.b1.size() != hidden || model.params.w2.size() != hidden) {
    throw ParseError("mlp model: layer sizes are inconsistent");
  }
  return model;
}

MlpModel TrainMlp(const Eigen::MatrixXd& x, std::span<const int> y,
                  double alpha, uint64_t seed, const MlpOptions& options,
                  MlpTrainInfo* info) {
  const Eigen::Index n = x.rows();
  const Eigen::Index dim = x.cols();
  if (static_cast<size_t>(n) != y.size() || n == 0) {
    throw InvalidArgument("mlp: feature rows and labels differ in count");
  }
  if (!(alpha >= 0.0)) throw InvalidArgument("mlp: alpha must be non-negative");
  const int positives = std::accumulate(y.begin(), y.end(), 0);
  if (positives == 0 || positives == n) {
    throw InvalidArgument("mlp: training data contains a single class");
  }

  Rng rng(seed);
  const Eigen::Index hidden = options.hidden;
  MlpParams params;
  auto glorot = [&](Eigen::Index fan_in, Eigen::Index fan_out) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    return [&rng, bound] { return (2.0 * UniformUnit(rng) - 1.0) * bound; };
  };
  {
    auto draw = glorot(dim, hidden);
    params.w1.resize(hidden, dim);
    for (Eigen::Index c = 0; c < dim; ++c)
      for (Eigen::Index r = 0; r < hidden; ++r) params.w1(r, c) = draw();
    params.b1.resize(hidden);
    for (Eigen::Index r = 0; r < hidden; ++r) params.b1(r) = draw();
  }
  {
    auto draw = glorot(hidden, 1);
    params.w2.resize(hidden);
    for (Eigen::Index r = 0; r < hidden; ++r) params.w2(r) = draw();
    params.b2 = draw();
  }

  Eigen::VectorXd theta = params.Pack();
  Eigen::VectorXd m = Eigen::VectorXd::Zero(theta.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(theta.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const Eigen::Index batch = std::max<Eigen::Index>(1, std::min<Eigen::Index>(options.batch_size, n));
  Eigen::MatrixXd xb;
  std::vector<int> yb;
  MlpParams grad;
  int64_t step = 0;
  double best_loss = std::numeric_limits<double>::infinity();
  int no_improvement = 0;
  MlpTrainInfo local;
  for (int epoch = 0; epoch < options.max_epochs; ++epoch) {
    Shuffle(order, rng);
    double epoch_loss = 0.0;
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index rows = std::min(batch, n - start);
      xb.resize(rows, dim);
      yb.resize(rows);
      for (Eigen::Index r = 0; r < rows; ++r) {
        xb.row(r) = x.row(order[start + r]);
        yb[r] = y[order[start + r]];
      }
      const double loss = MlpLoss(params, xb, yb, alpha, &grad);
      if (!std::isfinite(loss)) {
        throw MathError("mlp: non-finite loss at epoch " + std::to_string(epoch));
      }
      epoch_loss += loss * static_cast<double>(rows);
      ++step;
      const Eigen::VectorXd g = grad.Pack();
      m = options.beta1 * m + (1.0 - options.beta1) * g;
      v = options.beta2 * v + (1.0 - options.beta2) * g.cwiseProduct(g);
      const double lr = options.learning_rate *
                        std::sqrt(1.0 - std::pow(options.beta2, step)) /
                        (1.0 - std::pow(options.beta1, step));
      theta -= lr * (m.array() / (v.array().sqrt() + options.epsilon)).matrix();
      params = MlpParams::Unpack(theta, dim, hidden);
    }
    epoch_loss /= static_cast<double>(n);
    local.loss_curve.push_back(epoch_loss);
    local.epochs = epoch + 1;
    if (epoch_loss > best_loss - options.tolerance) {
      ++no_improvement;
    } else {
      no_improvement = 0;
    }
    best_loss = std::min(best_loss, epoch_loss);
    if (no_improvement > options.patience) break;
  }
  if (info) *info = std::move(local);
  MlpModel model;
  model.params = std::move(params);
  return model;
}

}  // namespace fairembed
