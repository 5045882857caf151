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

#ifndef FAIREMBED_RUN_CONFIG_H_
#define FAIREMBED_RUN_CONFIG_H_

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "fairembed/corpus_transform.h"
#include "fairembed/embedding_store.h"
#include "fairembed/trained_model.h"
#include "fairembed/tuning.h"
#include "nlohmann/json.hpp"

namespace fairembed {

inline constexpr char kOutputDirEnv[] = "FAIREMBED_OUTPUT_DIR";
inline constexpr char kDefaultOutputDir[] = "fairembed_out";

// Everything a command needs, after merging the config file, the preset and
// command-line flags (flags win). Empty paths mean "not given".
struct RunConfig {
  std::string embedding_path;
  VectorFormat embedding_format = VectorFormat::kTsv;
  CasePolicy case_policy = CasePolicy::kFoldLower;
  // Defaults to the embedding file's stem.
  std::string embedding_name;
  std::string corpus_path;
  // Empty = the built-in definitional pairs.
  std::string pairs_path;
  std::string targets_path;
  // Empty = the built-in swap rules.
  std::string swap_rules_path;
  NeutralizeMode neutralize_mode = NeutralizeMode::kReplace;
  std::vector<LearnerKind> learners = {std::begin(kAllLearners), std::end(kAllLearners)};
  HyperparamGrid grid = HyperparamGrid::Default();
  int train_per_cell = 90;
  int min_per_cell = 3;
  bool strip_pronouns = false;
  std::optional<uint64_t> seed;
  std::string output_dir;
  std::string preset;
  int threads = 1;

  // Overlays the keys present in `json` onto this config. Unknown keys are a
  // ParseError.
  void Merge(const nlohmann::json& json);
  // Presets: "mimic-iii" (90 notes per gender and label for training, all
  // three learners, default grids).
  void ApplyPreset(const std::string& name);
  nlohmann::json ToJson() const;

  // Output directory: explicit value, else $FAIREMBED_OUTPUT_DIR, else
  // kDefaultOutputDir.
  std::string ResolvedOutputDir() const;
  std::string ResolvedEmbeddingName() const;
};

RunConfig LoadRunConfig(const std::string& path);

// Throws InvalidArgument naming the first path that is required but unset or
// that does not exist.
void RequireExistingFile(const std::string& path, const std::string& what);
void RequireSeed(const RunConfig& config);

}  // namespace fairembed

#endif  // FAIREMBED_RUN_CONFIG_H_
