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

#include "fairembed/run_config.h"

#include <cstdlib>
#include <filesystem>
#include <set>

#include "fairembed/errors.h"
#include "fairembed/text_util.h"

namespace fairembed {
namespace {

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "embedding",  "embedding_format", "case_policy",    "embedding_name",
      "corpus",     "pairs",            "targets",        "swap_rules",
      "neutralize_mode", "learners",    "grid",           "train_per_cell",
      "min_per_cell", "strip_pronouns", "seed",           "output_dir",
      "preset",     "threads"};
  return keys;
}

}  // namespace

void RunConfig::Merge(const nlohmann::json& json) {
  if (!json.is_object()) throw ParseError("config: top level must be an object");
  for (const auto& [key, value] : json.items()) {
    if (!KnownKeys().count(key)) throw ParseError("config: unknown key '" + key + "'");
  }
  try {
    if (json.contains("preset") && !json["preset"].is_null()) {
      ApplyPreset(json["preset"].get<std::string>());
    }
    if (json.contains("embedding")) embedding_path = json["embedding"].get<std::string>();
    if (json.contains("embedding_format")) {
      embedding_format = ParseVectorFormat(json["embedding_format"].get<std::string>());
    }
    if (json.contains("case_policy")) {
      case_policy = ParseCasePolicy(json["case_policy"].get<std::string>());
    }
    if (json.contains("embedding_name")) embedding_name = json["embedding_name"].get<std::string>();
    if (json.contains("corpus")) corpus_path = json["corpus"].get<std::string>();
    if (json.contains("pairs")) pairs_path = json["pairs"].get<std::string>();
    if (json.contains("targets")) targets_path = json["targets"].get<std::string>();
    if (json.contains("swap_rules")) swap_rules_path = json["swap_rules"].get<std::string>();
    if (json.contains("neutralize_mode")) {
      neutralize_mode = ParseNeutralizeMode(json["neutralize_mode"].get<std::string>());
    }
    if (json.contains("learners")) {
      learners.clear();
      for (const auto& name : json["learners"]) {
        learners.push_back(ParseLearner(name.get<std::string>()));
      }
      if (learners.empty()) throw InvalidArgument("config: learners must not be empty");
    }
    if (json.contains("grid")) grid = HyperparamGrid::FromJson(json["grid"]);
    if (json.contains("train_per_cell")) train_per_cell = json["train_per_cell"].get<int>();
    if (json.contains("min_per_cell")) min_per_cell = json["min_per_cell"].get<int>();
    if (json.contains("strip_pronouns")) strip_pronouns = json["strip_pronouns"].get<bool>();
    if (json.contains("seed")) seed = json["seed"].get<uint64_t>();
    if (json.contains("output_dir")) output_dir = json["output_dir"].get<std::string>();
    if (json.contains("threads")) threads = json["threads"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

void RunConfig::ApplyPreset(const std::string& name) {
  if (name != "mimic-iii") throw InvalidArgument("unknown preset '" + name + "'");
  preset = name;
  train_per_cell = 90;
  min_per_cell = 90;
  neutralize_mode = NeutralizeMode::kReplace;
  learners.assign(std::begin(kAllLearners), std::end(kAllLearners));
  grid = HyperparamGrid::Default();
  strip_pronouns = false;
}

nlohmann::json RunConfig::ToJson() const {
  nlohmann::json names = nlohmann::json::array();
  for (LearnerKind kind : learners) names.push_back(LearnerName(kind));
  return {{"embedding", embedding_path},
          {"embedding_format", VectorFormatName(embedding_format)},
          {"case_policy", CasePolicyName(case_policy)},
          {"embedding_name", ResolvedEmbeddingName()},
          {"corpus", corpus_path},
          {"pairs", pairs_path},
          {"targets", targets_path},
          {"swap_rules", swap_rules_path},
          {"neutralize_mode", NeutralizeModeName(neutralize_mode)},
          {"learners", std::move(names)},
          {"grid", grid.ToJson()},
          {"train_per_cell", train_per_cell},
          {"min_per_cell", min_per_cell},
          {"strip_pronouns", strip_pronouns},
          {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
          {"output_dir", ResolvedOutputDir()},
          {"preset", preset.empty() ? nlohmann::json() : nlohmann::json(preset)},
          {"threads", threads}};
}

std::string RunConfig::ResolvedOutputDir() const {
  if (!output_dir.empty()) return output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    return env;
  }
  return kDefaultOutputDir;
}

std::string RunConfig::ResolvedEmbeddingName() const {
  if (!embedding_name.empty()) return embedding_name;
  if (embedding_path.empty()) return "";
  return std::filesystem::path(embedding_path).stem().string();
}

RunConfig LoadRunConfig(const std::string& path) {
  RunConfig config;
  const std::string content = ReadFile(path);
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  config.Merge(json);
  return config;
}

void RequireExistingFile(const std::string& path, const std::string& what) {
  if (path.empty()) throw InvalidArgument(what + " path is required");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError(what + " file not found: " + path);
  }
}

void RequireSeed(const RunConfig& config) {
  if (!config.seed) throw InvalidArgument("an explicit seed is required (--seed or config \"seed\")");
}

}  // namespace fairembed
