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

#include "fairembed/trained_model.h"

#include "fairembed/errors.h"

namespace fairembed {

std::string_view LearnerName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kSvm:
      return "svm";
    case LearnerKind::kRf:
      return "rf";
    case LearnerKind::kMlp:
      break;
  }
  return "mlp";
}

LearnerKind ParseLearner(std::string_view name) {
  for (LearnerKind kind : kAllLearners) {
    if (LearnerName(kind) == name) return kind;
  }
  throw InvalidArgument("unknown learner '" + std::string(name) +
                        "' (expected svm, rf or mlp)");
}

nlohmann::json Hyperparams::ToJson(LearnerKind kind) const {
  switch (kind) {
    case LearnerKind::kSvm:
      return {{"C", c}, {"kernel", KernelName(kernel)}};
    case LearnerKind::kRf:
      return {{"max_depth", max_depth}};
    case LearnerKind::kMlp:
      break;
  }
  return {{"alpha", alpha}};
}

Hyperparams Hyperparams::FromJson(LearnerKind kind, const nlohmann::json& json) {
  Hyperparams hp;
  switch (kind) {
    case LearnerKind::kSvm:
      hp.c = json.at("C").get<double>();
      hp.kernel = ParseKernel(json.at("kernel").get<std::string>());
      break;
    case LearnerKind::kRf:
      hp.max_depth = json.at("max_depth").get<int>();
      break;
    case LearnerKind::kMlp:
      hp.alpha = json.at("alpha").get<double>();
      break;
  }
  return hp;
}

nlohmann::json LearnerSettings::ToJson() const {
  return {{"svm", {{"kkt_tolerance", svm.tolerance},
                   {"max_iterations", svm.max_iterations},
                   {"gamma", "1/(dim*var(X))"},
                   {"coef0", 0.0}}},
          {"rf", {{"n_trees", rf_n_trees},
                  {"criterion", "gini"},
                  {"max_features", "sqrt"},
                  {"bootstrap", true}}},
          {"mlp", mlp.ToJson()}};
}

int TrainedModel::Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return std::visit([&](const auto& m) { return m.Predict(x); }, model);
}

std::vector<int> TrainedModel::PredictAll(const Eigen::MatrixXd& x) const {
  std::vector<int> out(static_cast<size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    out[static_cast<size_t>(i)] = Predict(x.row(i).transpose());
  }
  return out;
}

nlohmann::json TrainedModel::ToJson() const {
  nlohmann::json parameters =
      std::visit([](const auto& m) { return m.ToJson(); }, model);
  return {{"format_version", kModelFormatVersion},
          {"kind", LearnerName(kind)},
          {"hyperparams", hyperparams.ToJson(kind)},
          {"seed", seed},
          {"parameters", std::move(parameters)}};
}

TrainedModel TrainedModel::FromJson(const nlohmann::json& json) {
  try {
    const int version = json.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw ParseError("unsupported model format version " + std::to_string(version));
    }
    TrainedModel out;
    out.kind = ParseLearner(json.at("kind").get<std::string>());
    out.hyperparams = Hyperparams::FromJson(out.kind, json.at("hyperparams"));
    out.seed = json.at("seed").get<uint64_t>();
    const nlohmann::json& p = json.at("parameters");
    switch (out.kind) {
      case LearnerKind::kSvm:
        out.model = SvmModel::FromJson(p);
        break;
      case LearnerKind::kRf:
        out.model = ForestModel::FromJson(p);
        break;
      case LearnerKind::kMlp:
        out.model = MlpModel::FromJson(p);
        break;
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model artifact: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("model artifact: ") + e.what());
  }
}

TrainedModel TrainModel(const Eigen::MatrixXd& x, std::span<const int> y,
                        LearnerKind kind, const Hyperparams& hyperparams,
                        uint64_t seed, const LearnerSettings& settings) {
  TrainedModel out;
  out.kind = kind;
  out.hyperparams = hyperparams;
  out.seed = seed;
  switch (kind) {
    case LearnerKind::kSvm:
      out.model = TrainSvm(x, y, hyperparams.c,
                           DefaultKernelParams(hyperparams.kernel, x), settings.svm);
      break;
    case LearnerKind::kRf: {
      ForestOptions options;
      options.n_trees = settings.rf_n_trees;
      options.max_depth = hyperparams.max_depth;
      out.model = TrainForest(x, y, options, seed);
      break;
    }
    case LearnerKind::kMlp:
      out.model = TrainMlp(x, y, hyperparams.alpha, seed, settings.mlp);
      break;
  }
  return out;
}

}  // namespace fairembed
