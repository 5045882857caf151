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

#include "fairembed/experiment.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <unordered_set>

#include "fairembed/errors.h"
#include "fairembed/parallel.h"
#include "fairembed/rng.h"
#include "spdlog/spdlog.h"

namespace fairembed {

nlohmann::json SplitProtocol::ToJson() const {
  return {{"train_per_cell", train_per_cell}, {"min_per_cell", min_per_cell}};
}

uint64_t SplitSeed(uint64_t seed) { return DeriveSeed(seed, {HashTag("split")}); }

uint64_t CellSeed(uint64_t seed, Condition condition, LearnerKind learner) {
  return DeriveSeed(seed, {HashTag(ConditionName(condition)), HashTag(LearnerName(learner))});
}

DataSplit SplitCorpus(const Corpus& corpus, const SplitProtocol& protocol,
                      uint64_t seed) {
  std::array<std::vector<size_t>, 4> cells;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const LabeledNote& note = corpus[i];
    if (note.provenance != Provenance::kOriginal) {
      throw InvalidArgument("split: note '" + note.id + "' is not original");
    }
    const int cell = (note.gender == Gender::kFemale ? 0 : 2) +
                     (note.label == Label::kDepression ? 1 : 0);
    cells[cell].push_back(i);
  }
  size_t smallest = corpus.size();
  for (const auto& cell : cells) smallest = std::min(smallest, cell.size());

  // At least one note of every cell stays out of training.
  const size_t available = smallest > 0 ? smallest - 1 : 0;
  DataSplit split;
  split.per_cell = static_cast<int>(
      std::min<size_t>(available, static_cast<size_t>(std::max(0, protocol.train_per_cell))));
  split.reduced = split.per_cell < protocol.train_per_cell;
  if (split.per_cell < protocol.min_per_cell) {
    throw InvalidArgument("split: smallest (gender, label) cell has " +
                          std::to_string(smallest) + " notes, too few for " +
                          std::to_string(protocol.min_per_cell) +
                          " training notes per cell plus a test note");
  }
  if (split.reduced) {
    spdlog::warn("split: using {} notes per (gender, label) cell instead of {}",
                 split.per_cell, protocol.train_per_cell);
  }
  Rng rng(seed);
  std::vector<bool> in_train(corpus.size(), false);
  for (auto& cell : cells) {
    Shuffle(cell, rng);
    for (int k = 0; k < split.per_cell; ++k) in_train[cell[k]] = true;
  }
  for (size_t i = 0; i < corpus.size(); ++i) {
    (in_train[i] ? split.train : split.test).push_back(corpus[i]);
  }
  return split;
}

nlohmann::json ExperimentSettings::ToJson() const {
  return {{"swap_rules", rules.ToJson()},
          {"neutralize_mode", NeutralizeModeName(neutralize_mode)},
          {"grid", grid.ToJson()},
          {"learner_settings", learner.ToJson()},
          {"split_protocol", protocol.ToJson()},
          {"representation", "mean of in-vocabulary token vectors"},
          {"strip_pronouns", featurize.strip_pronouns},
          {"cv_folds", kCvFolds},
          {"model_selection", "mean macro-F1, ties to the simpler model"}};
}

nlohmann::json FairnessReport::ToJson() const {
  nlohmann::json out = {{"condition", ConditionName(condition)},
                        {"learner", LearnerName(learner)},
                        {"seed", seed},
                        {"n_train", n_train},
                        {"n_pairs", n_pairs},
                        {"n_evaluated", n_evaluated}};
  if (!error.empty()) {
    out["error"] = error;
    return out;
  }
  out["error"] = nullptr;
  out["macro_f1"] = macro_f1;
  out["confusion"] = {{"F", confusion_f.ToJson()}, {"M", confusion_m.ToJson()}};
  if (fnrr) {
    out["fnr_f"] = fnrr->fnr_f;
    out["fnr_m"] = fnrr->fnr_m;
    out["fnrr"] = fnrr->fnrr;
    out["advantaged"] = AdvantageName(fnrr->advantaged);
  } else {
    out["fnr_f"] = nullptr;
    out["fnr_m"] = nullptr;
    out["fnrr"] = nullptr;
    out["advantaged"] = "not-applicable";
  }
  out["mismatch_count"] = mismatch_count;
  out["hyperparams"] = chosen.ToJson(learner);
  nlohmann::json cv = nlohmann::json::array();
  for (const GridPointScore& score : cv_scores) {
    nlohmann::json entry = {{"hyperparams", score.hyperparams.ToJson(learner)},
                            {"mean_macro_f1", score.mean_macro_f1}};
    if (!score.error.empty()) entry["error"] = score.error;
    cv.push_back(std::move(entry));
  }
  out["cv"] = std::move(cv);
  return out;
}

namespace {

struct PairFeatures {
  Eigen::MatrixXd original;
  Eigen::MatrixXd twin;
};

PairFeatures FeaturizePairs(std::span<const NotePair> pairs,
                            const EmbeddingTable& table,
                            const FeaturizeOptions& options) {
  PairFeatures out;
  const auto rows = static_cast<Eigen::Index>(pairs.size());
  const auto dim = static_cast<Eigen::Index>(table.dim());
  out.original.resize(rows, dim);
  out.twin.resize(rows, dim);
  for (Eigen::Index i = 0; i < rows; ++i) {
    out.original.row(i) = Featurize(pairs[i].original, table, options).values.transpose();
    out.twin.row(i) = Featurize(pairs[i].twin, table, options).values.transpose();
  }
  return out;
}

}  // namespace

int MismatchCount(const TrainedModel& model, std::span<const NotePair> pairs,
                  const EmbeddingTable& table, const FeaturizeOptions& options) {
  if (pairs.empty()) throw InvalidArgument("mismatch_count: no pairs");
  const PairFeatures features = FeaturizePairs(pairs, table, options);
  int mismatches = 0;
  for (Eigen::Index i = 0; i < features.original.rows(); ++i) {
    mismatches += model.Predict(features.original.row(i).transpose()) !=
                  model.Predict(features.twin.row(i).transpose());
  }
  return mismatches;
}

void ScorePairs(const TrainedModel& model, std::span<const NotePair> pairs,
                const EmbeddingTable& table, const FeaturizeOptions& options,
                FairnessReport& report) {
  const PairFeatures features = FeaturizePairs(pairs, table, options);
  report.confusion_f = GroupConfusion{Gender::kFemale};
  report.confusion_m = GroupConfusion{Gender::kMale};
  report.mismatch_count = 0;
  std::vector<int> truth, predicted;
  truth.reserve(2 * pairs.size());
  predicted.reserve(2 * pairs.size());
  auto count = [&](const LabeledNote& note, int prediction) {
    const int label = note.label == Label::kDepression ? 1 : 0;
    (note.gender == Gender::kFemale ? report.confusion_f : report.confusion_m)
        .Add(label, prediction);
    truth.push_back(label);
    predicted.push_back(prediction);
  };
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const int p_original = model.Predict(features.original.row(row).transpose());
    const int p_twin = model.Predict(features.twin.row(row).transpose());
    count(pairs[i].original, p_original);
    count(pairs[i].twin, p_twin);
    report.mismatch_count += p_original != p_twin;
  }
  report.n_pairs = static_cast<int>(pairs.size());
  report.n_evaluated = static_cast<int>(truth.size());
  report.macro_f1 = MacroF1(truth, predicted);
  try {
    report.fnrr = ComputeFnrr(report.confusion_f, report.confusion_m);
  } catch (const InvalidArgument& e) {
    spdlog::warn("{}", e.what());
    report.fnrr.reset();
  }
}

FairnessReport RunExperiment(const DataSplit& split, const EmbeddingTable& table,
                             Condition condition, LearnerKind learner,
                             const ExperimentSettings& settings, uint64_t seed) {
  FairnessReport report;
  report.condition = condition;
  report.learner = learner;
  report.seed = CellSeed(seed, condition, learner);

  const Corpus train = BuildCondition(split.train, condition, settings.rules,
                                      settings.neutralize_mode);
  const std::vector<NotePair> pairs = BuildPairedTestset(split.test, settings.rules);
  report.n_train = static_cast<int>(train.size());
  report.n_pairs = static_cast<int>(pairs.size());
  report.n_evaluated = 2 * report.n_pairs;
  if (pairs.empty()) throw InvalidArgument("experiment: empty test set");

  const Eigen::MatrixXd x = FeatureMatrix(train, table, settings.featurize);
  const std::vector<int> y = LabelVector(train);
  TuneResult tuned = Tune(x, y, learner, settings.grid, report.seed, settings.learner);
  report.chosen = tuned.model.hyperparams;
  report.cv_scores = std::move(tuned.scores);
  ScorePairs(tuned.model, pairs, table, settings.featurize, report);
  return report;
}

FairnessReport RunExperiment(const Corpus& corpus, const EmbeddingTable& table,
                             Condition condition, LearnerKind learner,
                             const ExperimentSettings& settings, uint64_t seed) {
  return RunExperiment(SplitCorpus(corpus, settings.protocol, SplitSeed(seed)),
                       table, condition, learner, settings, seed);
}

ReportMatrix RunReportMatrix(const Corpus& corpus, const EmbeddingTable& table,
                             const ExperimentSettings& settings, uint64_t seed,
                             std::span<const LearnerKind> learners,
                             std::optional<BiasScore> bias) {
  ReportMatrix matrix;
  matrix.embedding_name = table.name();
  matrix.dim = table.dim();
  matrix.bias = std::move(bias);
  matrix.seed = seed;
  matrix.settings = settings;
  matrix.n_corpus = static_cast<int>(corpus.size());

  const DataSplit split = SplitCorpus(corpus, settings.protocol, SplitSeed(seed));
  matrix.n_train = static_cast<int>(split.train.size());
  matrix.n_test_pairs = static_cast<int>(split.test.size());
  matrix.per_cell = split.per_cell;
  matrix.reduced_split = split.reduced;

  for (LearnerKind learner : learners) {
    for (Condition condition : kAllConditions) {
      FairnessReport cell;
      cell.condition = condition;
      cell.learner = learner;
      cell.seed = CellSeed(seed, condition, learner);
      matrix.cells.push_back(std::move(cell));
    }
  }
  ParallelFor(matrix.cells.size(), settings.threads, [&](size_t i) {
    FairnessReport& cell = matrix.cells[i];
    try {
      cell = RunExperiment(split, table, cell.condition, cell.learner, settings, seed);
    } catch (const Error& e) {
      spdlog::error("cell {}/{} failed: {}", ConditionName(cell.condition),
                    LearnerName(cell.learner), e.what());
      cell.error = e.what();
    }
  });
  return matrix;
}

nlohmann::json ToJson(const ReportMatrix& matrix) {
  nlohmann::json cells = nlohmann::json::array();
  nlohmann::json failures = nlohmann::json::array();
  for (const FairnessReport& cell : matrix.cells) {
    cells.push_back(cell.ToJson());
    if (!cell.error.empty()) {
      failures.push_back({{"condition", ConditionName(cell.condition)},
                          {"learner", LearnerName(cell.learner)},
                          {"error", cell.error}});
    }
  }
  return {{"schema_version", kReportSchemaVersion},
          {"embedding", {{"name", matrix.embedding_name}, {"dim", matrix.dim}}},
          {"bias", matrix.bias ? ToJson(*matrix.bias) : nlohmann::json(nullptr)},
          {"seed", matrix.seed},
          {"settings", matrix.settings.ToJson()},
          {"split", {{"n_corpus", matrix.n_corpus},
                     {"n_train", matrix.n_train},
                     {"n_test_pairs", matrix.n_test_pairs},
                     {"n_evaluated", 2 * matrix.n_test_pairs},
                     {"per_cell", matrix.per_cell},
                     {"reduced", matrix.reduced_split}}},
          {"cells", std::move(cells)},
          {"failures", std::move(failures)}};
}

namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw ParseError("report schema: " + what);
}

}  // namespace

void ValidateReportJson(const nlohmann::json& report) {
  Require(report.is_object(), "top level must be an object");
  Require(report.value("schema_version", -1) == kReportSchemaVersion,
          "schema_version must be " + std::to_string(kReportSchemaVersion));
  Require(report.contains("embedding") && report["embedding"].is_object() &&
              report["embedding"].contains("name"),
          "missing embedding.name");
  Require(report.contains("bias"), "missing bias");
  if (!report["bias"].is_null()) {
    const auto& bias = report["bias"];
    Require(bias.contains("db") && bias["db"].is_number(), "bias.db must be a number");
    Require(bias.contains("direction") && bias["direction"].is_string(),
            "bias.direction must be a string");
  }
  Require(report.contains("split") && report["split"].is_object(), "missing split");
  Require(report.contains("cells") && report["cells"].is_array(), "cells must be an array");
  for (const auto& cell : report["cells"]) {
    Require(cell.is_object(), "cell must be an object");
    for (const char* key : {"condition", "learner", "n_pairs", "n_evaluated"}) {
      Require(cell.contains(key), std::string("cell missing ") + key);
    }
    ParseCondition(cell["condition"].get<std::string>());
    ParseLearner(cell["learner"].get<std::string>());
    Require(cell["n_evaluated"].get<int>() == 2 * cell["n_pairs"].get<int>(),
            "n_evaluated must equal 2 * n_pairs");
    if (cell.contains("error") && !cell["error"].is_null()) continue;
    for (const char* key : {"macro_f1", "fnrr", "advantaged", "mismatch_count", "confusion"}) {
      Require(cell.contains(key), std::string("cell missing ") + key);
    }
    const double f1 = cell["macro_f1"].get<double>();
    Require(f1 >= 0.0 && f1 <= 1.0, "macro_f1 outside [0, 1]");
    if (!cell["fnrr"].is_null()) {
      const double fnrr = cell["fnrr"].get<double>();
      Require(fnrr >= 0.0 && fnrr <= 1.0, "fnrr outside [0, 1]");
    }
    const int mismatches = cell["mismatch_count"].get<int>();
    Require(mismatches >= 0 && mismatches <= cell["n_pairs"].get<int>(),
            "mismatch_count outside [0, n_pairs]");
  }
}

std::string FormatFnrr(const std::optional<FnrrResult>& fnrr) {
  if (!fnrr) return "n/a";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", fnrr->fnrr);
  std::string out = buffer;
  if (fnrr->advantaged != Advantage::kTie) {
    out += "_";
    out += AdvantageName(fnrr->advantaged);
  }
  return out;
}

namespace {

std::string Fixed2(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string LearnerLabel(std::string_view learner) {
  std::string out(learner);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string RenderMarkdown(const nlohmann::json& report) {
  ValidateReportJson(report);
  const std::string name = report["embedding"]["name"].get<std::string>();
  std::string db = "n/a";
  if (!report["bias"].is_null()) {
    BiasScore score;
    score.db = report["bias"]["db"].get<double>();
    const std::string dir = report["bias"]["direction"].get<std::string>();
    score.direction = dir == "F"   ? BiasDirection::kFemale
                      : dir == "M" ? BiasDirection::kMale
                                   : BiasDirection::kNeutral;
    db = FormatBias(score);
  }

  std::vector<std::string> learners;
  for (const auto& cell : report["cells"]) {
    const std::string learner = cell["learner"].get<std::string>();
    if (std::find(learners.begin(), learners.end(), learner) == learners.end()) {
      learners.push_back(learner);
    }
  }
  auto find_cell = [&](const std::string& learner, Condition condition) -> const nlohmann::json* {
    for (const auto& cell : report["cells"]) {
      if (cell["learner"] == learner && cell["condition"] == ConditionName(condition)) {
        return &cell;
      }
    }
    return nullptr;
  };

  std::string out = "| Model | DB |";
  std::string rule = "|---|---|";
  for (Condition condition : kAllConditions) {
    out += " " + std::string(ConditionName(condition)) + " FNRR | " +
           std::string(ConditionName(condition)) + " F1 |";
    rule += "---|---|";
  }
  out += "\n" + rule + "\n";
  std::string mismatch = "\n| Model | mismatches / pairs |";
  for (Condition condition : kAllConditions) {
    mismatch += " " + std::string(ConditionName(condition)) + " |";
  }
  mismatch += "\n|---|---|---|---|---|---|\n";

  for (const std::string& learner : learners) {
    const std::string label = name + " (" + LearnerLabel(learner) + ")";
    out += "| " + label + " | " + db + " |";
    mismatch += "| " + label + " | |";
    for (Condition condition : kAllConditions) {
      const nlohmann::json* cell = find_cell(learner, condition);
      if (!cell) {
        out += " - | - |";
        mismatch += " - |";
        continue;
      }
      if (!(*cell)["error"].is_null()) {
        out += " error | error |";
        mismatch += " error |";
        continue;
      }
      std::optional<FnrrResult> fnrr;
      if (!(*cell)["fnrr"].is_null()) {
        FnrrResult r;
        r.fnrr = (*cell)["fnrr"].get<double>();
        const std::string adv = (*cell)["advantaged"].get<std::string>();
        r.advantaged = adv == "F"   ? Advantage::kFemale
                       : adv == "M" ? Advantage::kMale
                                    : Advantage::kTie;
        fnrr = r;
      }
      out += " " + FormatFnrr(fnrr) + " | " + Fixed2((*cell)["macro_f1"].get<double>()) + " |";
      mismatch += " " + std::to_string((*cell)["mismatch_count"].get<int>()) + "/" +
                  std::to_string((*cell)["n_pairs"].get<int>()) + " |";
    }
    out += "\n";
    mismatch += "\n";
  }
  return out + mismatch;
}

}  // namespace fairembed
