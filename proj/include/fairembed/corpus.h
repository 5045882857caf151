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

#ifndef FAIREMBED_CORPUS_H_
#define FAIREMBED_CORPUS_H_

#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"

namespace fairembed {

// "depression" is the positive class; false negatives are missed depression.
enum class Label { kNone = 0, kDepression = 1 };
enum class Gender { kFemale, kMale };
enum class Provenance { kOriginal, kSwapped, kNeutralized };

std::string_view LabelName(Label label);
Label ParseLabel(std::string_view name);
std::string_view GenderName(Gender gender);
Gender ParseGender(std::string_view name);
Gender Opposite(Gender gender);
std::string_view ProvenanceName(Provenance provenance);
Provenance ParseProvenance(std::string_view name);

struct LabeledNote {
  std::string id;
  std::string text;
  Label label = Label::kNone;
  Gender gender = Gender::kFemale;
  Provenance provenance = Provenance::kOriginal;

  bool operator==(const LabeledNote&) const = default;
};

using Corpus = std::vector<LabeledNote>;

inline constexpr std::string_view kSwapIdSuffix = "#swap";

nlohmann::json ToJson(const LabeledNote& note);
// Throws ParseError on missing or ill-typed fields, an empty id or text.
LabeledNote NoteFromJson(const nlohmann::json& record);

struct CorpusReadOptions {
  // Abort on the first malformed line; otherwise skip it and record it.
  bool strict = true;
};

// JSON-lines corpus. Malformed lines raise ParseError naming the 1-based line
// number when strict; otherwise they are appended to `errors` and skipped.
// Duplicate ids are always an error.
Corpus ParseCorpusJsonl(std::string_view content, const std::string& source,
                        const CorpusReadOptions& options = {},
                        std::vector<std::string>* errors = nullptr);
Corpus ReadCorpusJsonl(const std::string& path,
                       const CorpusReadOptions& options = {},
                       std::vector<std::string>* errors = nullptr);
std::string SerializeCorpusJsonl(const Corpus& corpus);
void WriteCorpusJsonl(const Corpus& corpus, const std::string& path);

// Throws InvalidArgument naming the first repeated id.
void CheckUniqueIds(const Corpus& corpus);

}  // namespace fairembed

#endif  // FAIREMBED_CORPUS_H_
