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

#ifndef FAIREMBED_SVM_H_
#define FAIREMBED_SVM_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "Eigen/Dense"
#include "nlohmann/json.hpp"

namespace fairembed {

enum class KernelKind { kLinear, kRbf, kSigmoid };
std::string_view KernelName(KernelKind kind);
KernelKind ParseKernel(std::string_view name);

// k_lin(u,v) = u.v, k_rbf(u,v) = exp(-gamma |u-v|^2),
// k_sig(u,v) = tanh(gamma u.v + coef0).
struct KernelParams {
  KernelKind kind = KernelKind::kLinear;
  double gamma = 1.0;
  double coef0 = 0.0;

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& u,
                    const Eigen::Ref<const Eigen::VectorXd>& v) const;
};

// gamma = 1 / (dim * var(X)) over all entries of X (1 when X is constant),
// coef0 = 0.
KernelParams DefaultKernelParams(KernelKind kind, const Eigen::MatrixXd& x);

struct SvmSolverOptions {
  // Stop when the maximal KKT violation m(alpha) - M(alpha) drops below this.
  double tolerance = 1e-3;
  // 0 selects max(10'000'000, 100 * n).
  int64_t max_iterations = 0;
  // Record the dual objective after every iteration.
  bool record_objective = false;
};

struct SvmTrainInfo {
  Eigen::VectorXd alpha;
  // Labels as used by the solver (+1 depression, -1 none).
  Eigen::VectorXd y;
  int64_t iterations = 0;
  double kkt_gap = 0.0;
  std::vector<double> dual_objective;
};

class SvmModel {
 public:
  KernelParams kernel;
  double c = 1.0;
  Eigen::MatrixXd support_vectors;  // one per row
  Eigen::VectorXd coef;             // alpha_i * y_i
  double bias = 0.0;

  double Decision(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  // 1 (depression) when the decision value is >= 0.
  int Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return Decision(x) >= 0.0 ? 1 : 0;
  }

  nlohmann::json ToJson() const;
  static SvmModel FromJson(const nlohmann::json& json);
  bool operator==(const SvmModel& other) const;
};

// Soft-margin C-SVM dual solved by SMO with second-order working-set
// selection. `y` holds 0/1 labels. Throws InvalidArgument for single-class
// input or C <= 0 and MathError when the iteration bound is hit.
SvmModel TrainSvm(const Eigen::MatrixXd& x, std::span<const int> y, double c,
                  const KernelParams& kernel,
                  const SvmSolverOptions& options = {},
                  SvmTrainInfo* info = nullptr);

}  // namespace fairembed

#endif  // FAIREMBED_SVM_H_
