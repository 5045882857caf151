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

#include "fairembed/corpus_transform.h"

#include <optional>

#include "fairembed/embedding_store.h"
#include "fairembed/errors.h"
#include "fairembed/text_util.h"
#include "fairembed/tokenizer.h"
#include "spdlog/spdlog.h"

namespace fairembed {

std::string_view NeutralizeModeName(NeutralizeMode mode) {
  return mode == NeutralizeMode::kReplace ? "replace" : "remove";
}

NeutralizeMode ParseNeutralizeMode(std::string_view name) {
  if (name == "replace") return NeutralizeMode::kReplace;
  if (name == "remove") return NeutralizeMode::kRemove;
  throw InvalidArgument("unknown neutralize mode '" + std::string(name) +
                        "' (expected replace or remove)");
}

std::string_view ConditionName(Condition condition) {
  switch (condition) {
    case Condition::kOriginal:
      return "original";
    case Condition::kSwapped:
      return "swapped";
    case Condition::kNeutralized:
      return "neutralized";
    case Condition::kAugmented:
      break;
  }
  return "augmented";
}

Condition ParseCondition(std::string_view name) {
  for (Condition c : kAllConditions) {
    if (ConditionName(c) == name) return c;
  }
  throw InvalidArgument("unknown condition '" + std::string(name) + "'");
}

namespace {

// A byte-range edit of the source text. An empty replacement deletes.
struct Edit {
  size_t begin;
  size_t end;
  std::string replacement;
};

std::string ApplyEdits(std::string_view source, const std::vector<Edit>& edits) {
  std::string out;
  size_t cursor = 0;
  for (const Edit& edit : edits) {
    out.append(source.substr(cursor, edit.begin - cursor));
    out += edit.replacement;
    cursor = edit.end;
  }
  out.append(source.substr(cursor));
  return out;
}

std::string_view NextText(const std::vector<Token>& tokens, size_t i) {
  return i + 1 < tokens.size() ? std::string_view(tokens[i + 1].text)
                               : std::string_view();
}

}  // namespace

TextRewrite SwapText(std::string_view text, const SwapRules& rules) {
  std::vector<Token> tokens = Tokenize(text);
  std::vector<Edit> edits;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string lower = AsciiLower(tokens[i].text);
    std::optional<std::string> counterpart;
    if (auto it = rules.ambiguous.find(lower); it != rules.ambiguous.end()) {
      counterpart = rules.SelectsObject(NextText(tokens, i))
                        ? it->second.object
                        : it->second.possessive;
    } else {
      counterpart = rules.SwapOf(lower);
    }
    if (!counterpart) continue;
    edits.push_back({tokens[i].begin, tokens[i].end,
                     ApplyCasePattern(tokens[i].text, *counterpart)});
  }
  return {ApplyEdits(text, edits), static_cast<int>(edits.size())};
}

TextRewrite NeutralizeText(std::string_view text, NeutralizeMode mode,
                           const SwapRules& rules) {
  std::vector<Token> tokens = Tokenize(text);
  std::vector<Edit> edits;
  size_t last_end = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token& token = tokens[i];
    const std::string lower = AsciiLower(token.text);
    if (!rules.IsPronoun(lower)) continue;
    if (mode == NeutralizeMode::kRemove) {
      // Drop the token with the whitespace after it, or the whitespace
      // before it when the token is followed by punctuation or ends the text.
      size_t begin = token.begin;
      size_t end = token.end;
      if (end < text.size() && IsAsciiSpace(text[end])) {
        while (end < text.size() && IsAsciiSpace(text[end])) ++end;
      } else {
        // Adjacent to the previous deletion: merge so the whitespace before
        // that one goes too.
        if (!edits.empty() && edits.back().end == begin && edits.back().replacement.empty()) {
          begin = edits.back().begin;
          edits.pop_back();
          last_end = edits.empty() ? 0 : edits.back().end;
        }
        while (begin > last_end && IsAsciiSpace(text[begin - 1])) --begin;
      }
      edits.push_back({begin, end, ""});
      last_end = end;
      continue;
    }
    std::optional<std::string> neutral;
    if (auto it = rules.neutral_ambiguous.find(lower);
        it != rules.neutral_ambiguous.end()) {
      neutral = rules.SelectsObject(NextText(tokens, i)) ? it->second.object
                                                         : it->second.possessive;
    } else if (auto it = rules.neutral_map.find(lower);
               it != rules.neutral_map.end()) {
      neutral = it->second;
    } else if (auto it = rules.ambiguous.find(lower); it != rules.ambiguous.end()) {
      // Gendered in the swap map but without a neutral counterpart: leave it.
      continue;
    }
    if (!neutral) continue;
    edits.push_back({token.begin, token.end, ApplyCasePattern(token.text, *neutral)});
    last_end = token.end;
  }
  return {ApplyEdits(text, edits), static_cast<int>(edits.size())};
}

namespace {

void RequireOriginal(const LabeledNote& note, std::string_view op) {
  if (note.provenance != Provenance::kOriginal) {
    throw InvalidArgument(std::string(op) + ": note '" + note.id +
                          "' is not an original note");
  }
}

}  // namespace

SwapResult SwapGenderCounted(const LabeledNote& note, const SwapRules& rules) {
  RequireOriginal(note, "swap_gender");
  TextRewrite rewrite = SwapText(note.text, rules);
  if (rewrite.n_rewritten == 0) {
    spdlog::warn("note '{}' has no gendered tokens; swap only flips its gender field",
                 note.id);
  }
  SwapResult result;
  result.note = note;
  result.note.id += kSwapIdSuffix;
  result.note.text = std::move(rewrite.text);
  result.note.gender = Opposite(note.gender);
  result.note.provenance = Provenance::kSwapped;
  result.n_swapped = rewrite.n_rewritten;
  return result;
}

LabeledNote SwapGender(const LabeledNote& note, const SwapRules& rules) {
  return SwapGenderCounted(note, rules).note;
}

LabeledNote Neutralize(const LabeledNote& note, NeutralizeMode mode,
                       const SwapRules& rules) {
  RequireOriginal(note, "neutralize");
  LabeledNote out = note;
  out.text = NeutralizeText(note.text, mode, rules).text;
  out.provenance = Provenance::kNeutralized;
  return out;
}

Corpus BuildCondition(const Corpus& train, Condition condition,
                      const SwapRules& rules, NeutralizeMode mode) {
  for (const LabeledNote& note : train) RequireOriginal(note, "build_condition");
  Corpus out;
  switch (condition) {
    case Condition::kOriginal:
      out = train;
      break;
    case Condition::kSwapped:
      out.reserve(train.size());
      for (const LabeledNote& note : train) out.push_back(SwapGender(note, rules));
      break;
    case Condition::kNeutralized:
      out.reserve(train.size());
      for (const LabeledNote& note : train) {
        out.push_back(Neutralize(note, mode, rules));
      }
      break;
    case Condition::kAugmented:
      out = train;
      out.reserve(2 * train.size());
      for (const LabeledNote& note : train) out.push_back(SwapGender(note, rules));
      break;
  }
  CheckUniqueIds(out);
  return out;
}

std::vector<NotePair> BuildPairedTestset(const Corpus& test,
                                         const SwapRules& rules) {
  std::vector<NotePair> pairs;
  pairs.reserve(test.size());
  for (const LabeledNote& note : test) {
    RequireOriginal(note, "build_paired_testset");
    pairs.push_back({note, SwapGender(note, rules)});
  }
  return pairs;
}

}  // namespace fairembed
