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

#ifndef FAIREMBED_CORPUS_TRANSFORM_H_
#define FAIREMBED_CORPUS_TRANSFORM_H_

#include <string_view>
#include <vector>

#include "fairembed/corpus.h"
#include "fairembed/swap_rules.h"

namespace fairembed {

enum class NeutralizeMode { kReplace, kRemove };
std::string_view NeutralizeModeName(NeutralizeMode mode);
NeutralizeMode ParseNeutralizeMode(std::string_view name);

enum class Condition { kOriginal, kSwapped, kNeutralized, kAugmented };
inline constexpr Condition kAllConditions[] = {
    Condition::kOriginal, Condition::kSwapped, Condition::kNeutralized,
    Condition::kAugmented};
std::string_view ConditionName(Condition condition);
Condition ParseCondition(std::string_view name);

struct TextRewrite {
  std::string text;
  int n_rewritten = 0;
};

// Text-level swap: every gendered token is replaced by its counterpart.
TextRewrite SwapText(std::string_view text, const SwapRules& rules);
// Text-level neutralization.
TextRewrite NeutralizeText(std::string_view text, NeutralizeMode mode,
                           const SwapRules& rules);

struct SwapResult {
  LabeledNote note;
  int n_swapped = 0;
};

// Gender-swapped twin: flipped gender, provenance swapped, id + "#swap".
// A note with no gendered tokens is still returned (with a warning logged).
// Throws InvalidArgument if the note is not original.
SwapResult SwapGenderCounted(const LabeledNote& note, const SwapRules& rules);
LabeledNote SwapGender(const LabeledNote& note, const SwapRules& rules);

// Gender-neutral copy; the gender field is kept for evaluation grouping.
LabeledNote Neutralize(const LabeledNote& note, NeutralizeMode mode,
                       const SwapRules& rules = SwapRules::Default());

// Training corpus for an experimental condition. Output order follows input
// order (augmented: all originals, then all twins). Throws InvalidArgument if
// any input note is not original and when the result has duplicate ids.
Corpus BuildCondition(const Corpus& train, Condition condition,
                      const SwapRules& rules, NeutralizeMode mode);

struct NotePair {
  LabeledNote original;
  LabeledNote twin;
};

std::vector<NotePair> BuildPairedTestset(const Corpus& test,
                                         const SwapRules& rules);

}  // namespace fairembed

#endif  // FAIREMBED_CORPUS_TRANSFORM_H_
