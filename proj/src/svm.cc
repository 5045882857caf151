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

#include "fairembed/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairembed/errors.h"
#include "fairembed/json_util.h"

namespace fairembed {

std::string_view KernelName(KernelKind kind) {
  switch (kind) {
    case KernelKind::kLinear:
      return "linear";
    case KernelKind::kRbf:
      return "rbf";
    case KernelKind::kSigmoid:
      break;
  }
  return "sigmoid";
}

KernelKind ParseKernel(std::string_view name) {
  if (name == "linear") return KernelKind::kLinear;
  if (name == "rbf") return KernelKind::kRbf;
  if (name == "sigmoid") return KernelKind::kSigmoid;
  throw InvalidArgument("unknown kernel '" + std::string(name) + "'");
}

double KernelParams::operator()(const Eigen::Ref<const Eigen::VectorXd>& u,
                                const Eigen::Ref<const Eigen::VectorXd>& v) const {
  switch (kind) {
    case KernelKind::kLinear:
      return u.dot(v);
    case KernelKind::kRbf:
      return std::exp(-gamma * (u - v).squaredNorm());
    case KernelKind::kSigmoid:
      break;
  }
  return std::tanh(gamma * u.dot(v) + coef0);
}

KernelParams DefaultKernelParams(KernelKind kind, const Eigen::MatrixXd& x) {
  KernelParams params;
  params.kind = kind;
  const double count = static_cast<double>(x.size());
  double var = 0.0;
  if (count > 0) {
    const double mean = x.sum() / count;
    var = (x.array() - mean).square().sum() / count;
  }
  params.gamma = var > 0.0 ? 1.0 / (static_cast<double>(x.cols()) * var) : 1.0;
  return params;
}

double SvmModel::Decision(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < support_vectors.rows(); ++i) {
    sum += coef(i) * kernel(support_vectors.row(i).transpose(), x);
  }
  return sum + bias;
}

nlohmann::json SvmModel::ToJson() const {
  return {{"kernel", KernelName(kernel.kind)},
          {"gamma", kernel.gamma},
          {"coef0", kernel.coef0},
          {"C", c},
          {"bias", bias},
          {"coef", VectorToJson(coef)},
          {"support_vectors", MatrixToJson(support_vectors)}};
}

SvmModel SvmModel::FromJson(const nlohmann::json& json) {
  SvmModel model;
  model.kernel.kind = ParseKernel(json.at("kernel").get<std::string>());
  model.kernel.gamma = json.at("gamma").get<double>();
  model.kernel.coef0 = json.at("coef0").get<double>();
  model.c = json.at("C").get<double>();
  model.bias = json.at("bias").get<double>();
  model.coef = VectorFromJson(json.at("coef"));
  model.support_vectors = MatrixFromJson(json.at("support_vectors"));
  if (model.coef.size() != model.support_vectors.rows()) {
    throw ParseError("svm model: coef and support vector counts differ");
  }
  return model;
}

bool SvmModel::operator==(const SvmModel& other) const {
  return kernel.kind == other.kernel.kind && kernel.gamma == other.kernel.gamma &&
         kernel.coef0 == other.kernel.coef0 && c == other.c &&
         bias == other.bias && coef == other.coef &&
         support_vectors == other.support_vectors;
}

namespace {

constexpr double kTau = 1e-12;

}  // namespace

SvmModel TrainSvm(const Eigen::MatrixXd& x, std::span<const int> labels,
                  double c, const KernelParams& kernel,
                  const SvmSolverOptions& options, SvmTrainInfo* info) {
  const Eigen::Index n = x.rows();
  if (static_cast<size_t>(n) != labels.size()) {
    throw InvalidArgument("svm: feature rows and labels differ in count");
  }
  if (!(c > 0.0)) throw InvalidArgument("svm: C must be positive");
  Eigen::VectorXd y(n);
  int positives = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = labels[i] == 1 ? 1.0 : -1.0;
    positives += labels[i] == 1;
  }
  if (positives == 0 || positives == n) {
    throw InvalidArgument("svm: training data contains a single class");
  }

  Eigen::MatrixXd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      q(i, j) = y(i) * y(j) * kernel(x.row(i).transpose(), x.row(j).transpose());
      q(j, i) = q(i, j);
    }
  }

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);
  const int64_t max_iterations =
      options.max_iterations > 0
          ? options.max_iterations
          : std::max<int64_t>(10'000'000, 100 * static_cast<int64_t>(n));
  const double inf = std::numeric_limits<double>::infinity();
  auto dual_objective = [&] { return -0.5 * alpha.dot(grad - Eigen::VectorXd::Ones(n)); };

  int64_t iter = 0;
  double gap = inf;
  std::vector<double> trace;
  if (options.record_objective) trace.push_back(dual_objective());
  while (true) {
    // Maximal violating i from I_up, then j from I_low by second-order gain.
    double gmax = -inf;
    Eigen::Index i = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (y(t) > 0) {
        if (alpha(t) < c && -grad(t) >= gmax) {
          gmax = -grad(t);
          i = t;
        }
      } else if (alpha(t) > 0 && grad(t) >= gmax) {
        gmax = grad(t);
        i = t;
      }
    }
    double gmax2 = -inf;
    Eigen::Index j = -1;
    double obj_min = inf;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (y(t) > 0) {
        if (alpha(t) > 0) {
          const double grad_diff = gmax + grad(t);
          gmax2 = std::max(gmax2, grad(t));
          if (i >= 0 && grad_diff > 0) {
            double quad = q(i, i) + q(t, t) - 2.0 * y(i) * q(i, t);
            const double obj = -(grad_diff * grad_diff) / (quad > 0 ? quad : kTau);
            if (obj <= obj_min) {
              obj_min = obj;
              j = t;
            }
          }
        }
      } else if (alpha(t) < c) {
        const double grad_diff = gmax - grad(t);
        gmax2 = std::max(gmax2, -grad(t));
        if (i >= 0 && grad_diff > 0) {
          double quad = q(i, i) + q(t, t) + 2.0 * y(i) * q(i, t);
          const double obj = -(grad_diff * grad_diff) / (quad > 0 ? quad : kTau);
          if (obj <= obj_min) {
            obj_min = obj;
            j = t;
          }
        }
      }
    }
    gap = gmax + gmax2;
    if (i < 0 || j < 0 || gap < options.tolerance) break;
    if (iter >= max_iterations) {
      throw MathError("svm: SMO did not reach KKT tolerance within " +
                      std::to_string(max_iterations) + " iterations (gap " +
                      std::to_string(gap) + ")");
    }
    ++iter;

    const double old_i = alpha(i);
    const double old_j = alpha(j);
    if (y(i) != y(j)) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (-grad(i) - grad(j)) / quad;
      const double diff = alpha(i) - alpha(j);
      alpha(i) += delta;
      alpha(j) += delta;
      if (diff > 0) {
        if (alpha(j) < 0) {
          alpha(j) = 0;
          alpha(i) = diff;
        }
      } else if (alpha(i) < 0) {
        alpha(i) = 0;
        alpha(j) = -diff;
      }
      if (diff > 0) {
        if (alpha(i) > c) {
          alpha(i) = c;
          alpha(j) = c - diff;
        }
      } else if (alpha(j) > c) {
        alpha(j) = c;
        alpha(i) = c + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (grad(i) - grad(j)) / quad;
      const double sum = alpha(i) + alpha(j);
      alpha(i) -= delta;
      alpha(j) += delta;
      if (sum > c) {
        if (alpha(i) > c) {
          alpha(i) = c;
          alpha(j) = sum - c;
        }
      } else if (alpha(j) < 0) {
        alpha(j) = 0;
        alpha(i) = sum;
      }
      if (sum > c) {
        if (alpha(j) > c) {
          alpha(j) = c;
          alpha(i) = sum - c;
        }
      } else if (alpha(i) < 0) {
        alpha(i) = 0;
        alpha(j) = sum;
      }
    }
    const double d_i = alpha(i) - old_i;
    const double d_j = alpha(j) - old_j;
    grad += q.col(i) * d_i + q.col(j) * d_j;
    if (options.record_objective) trace.push_back(dual_objective());
  }

  // Bias from free vectors, or the midpoint of the feasible interval.
  double upper = inf;
  double lower = -inf;
  double free_sum = 0.0;
  int free_count = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = y(t) * grad(t);
    if (alpha(t) >= c) {
      if (y(t) < 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
    } else if (alpha(t) <= 0) {
      if (y(t) > 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / free_count : 0.5 * (upper + lower);

  SvmModel model;
  model.kernel = kernel;
  model.c = c;
  model.bias = -rho;
  std::vector<Eigen::Index> support;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (alpha(t) > 0) support.push_back(t);
  }
  model.support_vectors.resize(static_cast<Eigen::Index>(support.size()), x.cols());
  model.coef.resize(static_cast<Eigen::Index>(support.size()));
  for (size_t k = 0; k < support.size(); ++k) {
    const Eigen::Index t = support[k];
    model.support_vectors.row(static_cast<Eigen::Index>(k)) = x.row(t);
    model.coef(static_cast<Eigen::Index>(k)) = alpha(t) * y(t);
  }
  if (info) {
    info->alpha = alpha;
    info->y = y;
    info->iterations = iter;
    info->kkt_gap = gap;
    info->dual_objective = std::move(trace);
  }
  return model;
}

}  // namespace fairembed
