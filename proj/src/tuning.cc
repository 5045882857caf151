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

#include "fairembed/tuning.h"

#include <algorithm>
#include <numeric>

#include "fairembed/errors.h"
#include "fairembed/metrics.h"
#include "fairembed/parallel.h"
#include "fairembed/rng.h"
#include "spdlog/spdlog.h"

namespace fairembed {

HyperparamGrid HyperparamGrid::Default() {
  HyperparamGrid grid;
  grid.svm_c = {0.01, 0.1, 1.0, 10.0, 100.0};
  grid.svm_kernels = {KernelKind::kRbf, KernelKind::kSigmoid, KernelKind::kLinear};
  grid.rf_max_depth = {1, 2, 3, 5, 8, 12, 18, 27, 38, 50};
  grid.mlp_alpha = {0.1, 0.3, 1.0, 3.0, 10.0};
  return grid;
}

HyperparamGrid HyperparamGrid::FullDepthRange() {
  HyperparamGrid grid = Default();
  grid.rf_max_depth.resize(50);
  std::iota(grid.rf_max_depth.begin(), grid.rf_max_depth.end(), 1);
  return grid;
}

void HyperparamGrid::Validate() const {
  if (svm_c.empty() || svm_kernels.empty() || rf_max_depth.empty() ||
      mlp_alpha.empty()) {
    throw InvalidArgument("hyperparameter grid has an empty axis");
  }
  for (double c : svm_c) {
    if (!(c >= 0.01 && c <= 100.0)) {
      throw InvalidArgument("svm C " + std::to_string(c) + " outside [0.01, 100]");
    }
  }
  for (int depth : rf_max_depth) {
    if (depth < 1 || depth > 50) {
      throw InvalidArgument("rf max_depth " + std::to_string(depth) +
                            " outside [1, 50]");
    }
  }
  for (double alpha : mlp_alpha) {
    if (!(alpha >= 0.1 && alpha <= 10.0)) {
      throw InvalidArgument("mlp alpha " + std::to_string(alpha) +
                            " outside [0.1, 10]");
    }
  }
}

namespace {

int KernelComplexity(KernelKind kind) {
  switch (kind) {
    case KernelKind::kLinear:
      return 0;
    case KernelKind::kRbf:
      return 1;
    case KernelKind::kSigmoid:
      break;
  }
  return 2;
}

}  // namespace

std::vector<Hyperparams> HyperparamGrid::Points(LearnerKind kind) const {
  std::vector<Hyperparams> points;
  switch (kind) {
    case LearnerKind::kSvm: {
      std::vector<double> cs = svm_c;
      std::sort(cs.begin(), cs.end());
      cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
      std::vector<KernelKind> kernels = svm_kernels;
      std::sort(kernels.begin(), kernels.end(), [](KernelKind a, KernelKind b) {
        return KernelComplexity(a) < KernelComplexity(b);
      });
      kernels.erase(std::unique(kernels.begin(), kernels.end()), kernels.end());
      for (double c : cs) {
        for (KernelKind kernel : kernels) {
          Hyperparams hp;
          hp.c = c;
          hp.kernel = kernel;
          points.push_back(hp);
        }
      }
      break;
    }
    case LearnerKind::kRf: {
      std::vector<int> depths = rf_max_depth;
      std::sort(depths.begin(), depths.end());
      depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
      for (int depth : depths) {
        Hyperparams hp;
        hp.max_depth = depth;
        points.push_back(hp);
      }
      break;
    }
    case LearnerKind::kMlp: {
      std::vector<double> alphas = mlp_alpha;
      std::sort(alphas.begin(), alphas.end(), std::greater<>());
      alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
      for (double alpha : alphas) {
        Hyperparams hp;
        hp.alpha = alpha;
        points.push_back(hp);
      }
      break;
    }
  }
  return points;
}

nlohmann::json HyperparamGrid::ToJson() const {
  std::vector<std::string> kernels;
  for (KernelKind k : svm_kernels) kernels.emplace_back(KernelName(k));
  return {{"svm", {{"C", svm_c}, {"kernel", kernels}}},
          {"rf", {{"max_depth", rf_max_depth}}},
          {"mlp", {{"alpha", mlp_alpha}}}};
}

HyperparamGrid HyperparamGrid::FromJson(const nlohmann::json& json) {
  HyperparamGrid grid = Default();
  if (!json.is_object()) throw ParseError("grid: expected a JSON object");
  for (const auto& [key, value] : json.items()) {
    if (key != "svm" && key != "rf" && key != "mlp") {
      throw ParseError("grid: unknown key '" + key + "'");
    }
  }
  try {
    if (json.contains("svm")) {
      const auto& svm = json["svm"];
      if (svm.contains("C")) grid.svm_c = svm["C"].get<std::vector<double>>();
      if (svm.contains("kernel")) {
        grid.svm_kernels.clear();
        for (const auto& k : svm["kernel"]) {
          grid.svm_kernels.push_back(ParseKernel(k.get<std::string>()));
        }
      }
    }
    if (json.contains("rf") && json["rf"].contains("max_depth")) {
      const auto& depth = json["rf"]["max_depth"];
      if (depth.is_string() && depth.get<std::string>() == "full") {
        grid.rf_max_depth = FullDepthRange().rf_max_depth;
      } else {
        grid.rf_max_depth = depth.get<std::vector<int>>();
      }
    }
    if (json.contains("mlp") && json["mlp"].contains("alpha")) {
      grid.mlp_alpha = json["mlp"]["alpha"].get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("grid: ") + e.what());
  }
  grid.Validate();
  return grid;
}

std::vector<int> StratifiedFolds(std::span<const int> y, int k, uint64_t seed) {
  if (k < 2) throw InvalidArgument("folds: k must be at least 2");
  std::vector<int> folds(y.size(), -1);
  Rng rng(DeriveSeed(seed, {HashTag("folds")}));
  for (int cls : {0, 1}) {
    std::vector<int> members;
    for (size_t i = 0; i < y.size(); ++i) {
      if (y[i] == cls) members.push_back(static_cast<int>(i));
    }
    if (static_cast<int>(members.size()) < k) {
      throw InvalidArgument("folds: class " + std::to_string(cls) + " has " +
                            std::to_string(members.size()) +
                            " samples, fewer than " + std::to_string(k) + " folds");
    }
    Shuffle(members, rng);
    for (size_t r = 0; r < members.size(); ++r) {
      folds[members[r]] = static_cast<int>(r % k);
    }
  }
  return folds;
}

TuneResult Tune(const Eigen::MatrixXd& x, std::span<const int> y,
                LearnerKind kind, const HyperparamGrid& grid, uint64_t seed,
                const LearnerSettings& settings, int threads) {
  if (static_cast<size_t>(x.rows()) != y.size()) {
    throw InvalidArgument("tune: feature rows and labels differ in count");
  }
  TuneResult result;
  result.folds = StratifiedFolds(y, kCvFolds, seed);
  const std::vector<Hyperparams> points = grid.Points(kind);
  if (points.empty()) throw InvalidArgument("tune: empty grid");

  struct FoldData {
    Eigen::MatrixXd x_train, x_test;
    std::vector<int> y_train, y_test;
  };
  std::vector<FoldData> folds(kCvFolds);
  for (int f = 0; f < kCvFolds; ++f) {
    std::vector<Eigen::Index> train_rows, test_rows;
    for (size_t i = 0; i < y.size(); ++i) {
      (result.folds[i] == f ? test_rows : train_rows).push_back(static_cast<Eigen::Index>(i));
      (result.folds[i] == f ? folds[f].y_test : folds[f].y_train).push_back(y[i]);
    }
    folds[f].x_train = x(train_rows, Eigen::all);
    folds[f].x_test = x(test_rows, Eigen::all);
  }

  const size_t jobs = points.size() * kCvFolds;
  std::vector<double> scores(jobs, 0.0);
  std::vector<std::string> errors(jobs);
  ParallelFor(jobs, threads, [&](size_t job) {
    const size_t g = job / kCvFolds;
    const int f = static_cast<int>(job % kCvFolds);
    try {
      TrainedModel model =
          TrainModel(folds[f].x_train, folds[f].y_train, kind, points[g],
                     DeriveSeed(seed, {static_cast<uint64_t>(f), g}), settings);
      scores[job] = MacroF1(folds[f].y_test, model.PredictAll(folds[f].x_test));
    } catch (const Error& e) {
      errors[job] = e.what();
    }
  });

  result.scores.resize(points.size());
  bool found = false;
  for (size_t g = 0; g < points.size(); ++g) {
    GridPointScore& score = result.scores[g];
    score.hyperparams = points[g];
    double sum = 0.0;
    for (int f = 0; f < kCvFolds; ++f) {
      const size_t job = g * kCvFolds + f;
      if (!errors[job].empty() && score.error.empty()) score.error = errors[job];
      score.fold_macro_f1.push_back(scores[job]);
      sum += scores[job];
    }
    score.mean_macro_f1 = sum / kCvFolds;
    if (!score.error.empty()) {
      spdlog::warn("tune {}: grid point {} failed: {}", LearnerName(kind),
                   points[g].ToJson(kind).dump(), score.error);
      continue;
    }
    if (!found ||
        score.mean_macro_f1 > result.scores[result.selected].mean_macro_f1 + 1e-12) {
      result.selected = g;
      found = true;
    }
  }
  if (!found) throw MathError("tune: every grid point failed to train");
  result.model = TrainModel(x, y, kind, points[result.selected], seed, settings);
  return result;
}

}  // namespace fairembed
