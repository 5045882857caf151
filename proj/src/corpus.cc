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

#include "fairembed/corpus.h"

#include <unordered_set>

#include "fairembed/errors.h"
#include "fairembed/text_util.h"

namespace fairembed {

std::string_view LabelName(Label label) {
  return label == Label::kDepression ? "depression" : "none";
}

Label ParseLabel(std::string_view name) {
  if (name == "depression") return Label::kDepression;
  if (name == "none") return Label::kNone;
  throw ParseError("unknown label '" + std::string(name) +
                   "' (expected depression or none)");
}

std::string_view GenderName(Gender gender) {
  return gender == Gender::kFemale ? "F" : "M";
}

Gender ParseGender(std::string_view name) {
  if (name == "F") return Gender::kFemale;
  if (name == "M") return Gender::kMale;
  throw ParseError("unknown gender '" + std::string(name) +
                   "' (expected F or M)");
}

Gender Opposite(Gender gender) {
  return gender == Gender::kFemale ? Gender::kMale : Gender::kFemale;
}

std::string_view ProvenanceName(Provenance provenance) {
  switch (provenance) {
    case Provenance::kOriginal:
      return "original";
    case Provenance::kSwapped:
      return "swapped";
    case Provenance::kNeutralized:
      break;
  }
  return "neutralized";
}

Provenance ParseProvenance(std::string_view name) {
  if (name == "original") return Provenance::kOriginal;
  if (name == "swapped") return Provenance::kSwapped;
  if (name == "neutralized") return Provenance::kNeutralized;
  throw ParseError("unknown provenance '" + std::string(name) + "'");
}

nlohmann::json ToJson(const LabeledNote& note) {
  return {{"id", note.id},
          {"text", note.text},
          {"label", LabelName(note.label)},
          {"gender", GenderName(note.gender)},
          {"provenance", ProvenanceName(note.provenance)}};
}

LabeledNote NoteFromJson(const nlohmann::json& record) {
  if (!record.is_object()) throw ParseError("record is not a JSON object");
  auto field = [&](const char* key) -> std::string {
    auto it = record.find(key);
    if (it == record.end()) {
      throw ParseError(std::string("missing field '") + key + "'");
    }
    if (!it->is_string()) {
      throw ParseError(std::string("field '") + key + "' must be a string");
    }
    return it->get<std::string>();
  };
  LabeledNote note;
  note.id = field("id");
  note.text = field("text");
  note.label = ParseLabel(field("label"));
  note.gender = ParseGender(field("gender"));
  if (record.contains("provenance")) {
    note.provenance = ParseProvenance(field("provenance"));
  }
  if (note.id.empty()) throw ParseError("empty id");
  if (note.text.empty()) throw ParseError("empty text for id '" + note.id + "'");
  return note;
}

void CheckUniqueIds(const Corpus& corpus) {
  std::unordered_set<std::string_view> ids;
  for (const LabeledNote& note : corpus) {
    if (!ids.insert(note.id).second) {
      throw InvalidArgument("duplicate note id '" + note.id + "'");
    }
  }
}

Corpus ParseCorpusJsonl(std::string_view content, const std::string& source,
                        const CorpusReadOptions& options,
                        std::vector<std::string>* errors) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  std::vector<std::string_view> lines = SplitLines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const std::string where = source + ":" + std::to_string(i + 1);
    LabeledNote note;
    try {
      note = NoteFromJson(nlohmann::json::parse(lines[i]));
    } catch (const nlohmann::json::exception& e) {
      if (options.strict) throw ParseError(where + ": invalid JSON: " + e.what());
      if (errors) errors->push_back(where + ": invalid JSON: " + e.what());
      continue;
    } catch (const ParseError& e) {
      if (options.strict) throw ParseError(where + ": " + e.what());
      if (errors) errors->push_back(where + ": " + e.what());
      continue;
    }
    if (!ids.insert(note.id).second) {
      throw ParseError(where + ": duplicate note id '" + note.id + "'");
    }
    corpus.push_back(std::move(note));
  }
  return corpus;
}

Corpus ReadCorpusJsonl(const std::string& path,
                       const CorpusReadOptions& options,
                       std::vector<std::string>* errors) {
  return ParseCorpusJsonl(ReadFile(path), path, options, errors);
}

std::string SerializeCorpusJsonl(const Corpus& corpus) {
  std::string out;
  for (const LabeledNote& note : corpus) {
    out += ToJson(note).dump();
    out += '\n';
  }
  return out;
}

void WriteCorpusJsonl(const Corpus& corpus, const std::string& path) {
  WriteFile(path, SerializeCorpusJsonl(corpus));
}

}  // namespace fairembed
