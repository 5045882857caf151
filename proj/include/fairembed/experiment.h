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

#ifndef FAIREMBED_EXPERIMENT_H_
#define FAIREMBED_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairembed/corpus.h"
#include "fairembed/corpus_transform.h"
#include "fairembed/embedding_store.h"
#include "fairembed/features.h"
#include "fairembed/gender_geometry.h"
#include "fairembed/metrics.h"
#include "fairembed/trained_model.h"
#include "fairembed/tuning.h"
#include "nlohmann/json.hpp"

namespace fairembed {

// Balanced training split: `train_per_cell` notes from each (gender, label)
// cell, the rest held out for the paired test set.
struct SplitProtocol {
  int train_per_cell = 90;
  // Smallest acceptable per-cell count when the corpus cannot supply
  // train_per_cell everywhere.
  int min_per_cell = 3;

  nlohmann::json ToJson() const;
};

struct DataSplit {
  Corpus train;
  Corpus test;
  int per_cell = 0;
  // True when some cell held fewer than train_per_cell notes.
  bool reduced = false;
};

// Draws per_cell = min(train_per_cell, smallest cell) notes per cell after a
// seeded shuffle; train and test keep corpus order. Throws InvalidArgument
// if per_cell < min_per_cell or a note is not original.
DataSplit SplitCorpus(const Corpus& corpus, const SplitProtocol& protocol,
                      uint64_t seed);

struct ExperimentSettings {
  SwapRules rules = SwapRules::Default();
  NeutralizeMode neutralize_mode = NeutralizeMode::kReplace;
  HyperparamGrid grid = HyperparamGrid::Default();
  LearnerSettings learner;
  SplitProtocol protocol;
  FeaturizeOptions featurize;
  // Worker threads for the report matrix (0 = hardware concurrency).
  int threads = 1;

  nlohmann::json ToJson() const;
};

struct FairnessReport {
  Condition condition = Condition::kOriginal;
  LearnerKind learner = LearnerKind::kSvm;
  uint64_t seed = 0;
  int n_train = 0;
  int n_pairs = 0;
  int n_evaluated = 0;
  double macro_f1 = 0.0;
  GroupConfusion confusion_f{Gender::kFemale};
  GroupConfusion confusion_m{Gender::kMale};
  // Absent when a group has no positive members.
  std::optional<FnrrResult> fnrr;
  int mismatch_count = 0;
  Hyperparams chosen;
  std::vector<GridPointScore> cv_scores;
  // Set when the cell failed; the metrics are then meaningless.
  std::string error;

  nlohmann::json ToJson() const;
};

// Number of pairs whose original and twin receive different predictions.
int MismatchCount(const TrainedModel& model, std::span<const NotePair> pairs,
                  const EmbeddingTable& table,
                  const FeaturizeOptions& options = {});

// Confusions for the paired test set: each note (original or twin) counts
// toward the group of its own gender field, i.e. the gender it presents.
void ScorePairs(const TrainedModel& model, std::span<const NotePair> pairs,
                const EmbeddingTable& table, const FeaturizeOptions& options,
                FairnessReport& report);

// One cell: build the condition's training corpus, featurize, tune and
// refit, then evaluate on the paired test set. Condition/learner streams
// come from DeriveSeed(seed, {condition, learner}).
FairnessReport RunExperiment(const DataSplit& split, const EmbeddingTable& table,
                             Condition condition, LearnerKind learner,
                             const ExperimentSettings& settings, uint64_t seed);

// Splits `corpus` with the protocol first (split stream derived from seed).
FairnessReport RunExperiment(const Corpus& corpus, const EmbeddingTable& table,
                             Condition condition, LearnerKind learner,
                             const ExperimentSettings& settings, uint64_t seed);

uint64_t SplitSeed(uint64_t seed);
uint64_t CellSeed(uint64_t seed, Condition condition, LearnerKind learner);

struct ReportMatrix {
  std::string embedding_name;
  size_t dim = 0;
  std::optional<BiasScore> bias;
  uint64_t seed = 0;
  ExperimentSettings settings;
  int n_corpus = 0;
  int n_train = 0;
  int n_test_pairs = 0;
  int per_cell = 0;
  bool reduced_split = false;
  // Learner-major, conditions in canonical order.
  std::vector<FairnessReport> cells;
};

// Conditions x learners. A failing cell records its error and does not stop
// the others.
ReportMatrix RunReportMatrix(const Corpus& corpus, const EmbeddingTable& table,
                             const ExperimentSettings& settings, uint64_t seed,
                             std::span<const LearnerKind> learners,
                             std::optional<BiasScore> bias = std::nullopt);

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json ToJson(const ReportMatrix& matrix);
// Throws ParseError describing the first schema violation.
void ValidateReportJson(const nlohmann::json& report);
// Markdown laid out as DB followed by FNRR and F1 for each condition, one row
// per learner, plus a mismatch table.
std::string RenderMarkdown(const nlohmann::json& report);

// "0.81_F", "1.00", or "n/a".
std::string FormatFnrr(const std::optional<FnrrResult>& fnrr);

}  // namespace fairembed

#endif  // FAIREMBED_EXPERIMENT_H_
