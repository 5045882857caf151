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

#ifndef FAIREMBED_SWAP_RULES_H_
#define FAIREMBED_SWAP_RULES_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "nlohmann/json.hpp"

namespace fairembed {

// A gendered form whose counterpart depends on its grammatical role, e.g.
// "her" -> "him" (object) or "his" (possessive).
struct AmbiguousForm {
  std::string object;
  std::string possessive;

  bool operator==(const AmbiguousForm&) const = default;
};

// Token rewriting rules for gender swapping and neutralization. All keys are
// lower case; matching is case-insensitive and the output copies the case
// pattern of the input token.
struct SwapRules {
  // Unambiguous swaps, listed in both directions where invertible
  // (he<->she, himself<->herself) and one way for forms that collapse onto an
  // ambiguous counterpart (him->her, his->her).
  std::map<std::string, std::string> pair_map;
  std::map<std::string, AmbiguousForm> ambiguous;
  // Neutral replacements, with the same split between unambiguous and
  // role-dependent forms.
  std::map<std::string, std::string> neutral_map;
  std::map<std::string, AmbiguousForm> neutral_ambiguous;
  // Function words (conjunctions, prepositions, determiners, a few adverbs)
  // that, when they follow an ambiguous form, select its object reading.
  std::set<std::string> ambiguity_lexicon;
  // Optional gendered titles and nouns (mr<->mrs, husband<->wife, ...).
  std::map<std::string, std::string> extensions;
  bool use_extensions = false;

  // The embedded default: pronouns only, extensions present but disabled.
  static SwapRules Default();
  static SwapRules FromJson(const nlohmann::json& json);
  nlohmann::json ToJson() const;

  // Swap counterpart of a lower-cased, unambiguous token.
  std::optional<std::string> SwapOf(std::string_view lower) const;
  bool IsAmbiguous(std::string_view lower) const;
  // True if `lower` is any gendered form the rules rewrite (the pronoun
  // lexicon, plus active extensions).
  bool IsGendered(std::string_view lower) const;
  // True for the pronoun lexicon: every key of the swap and neutral maps,
  // extensions excluded.
  bool IsPronoun(std::string_view lower) const;
  // Object-vs-possessive decision for an ambiguous form followed by `next`
  // (empty when the form ends the text).
  bool SelectsObject(std::string_view next) const;
};

// Reads a rules file (see SwapRules::ToJson for the schema). Throws IoError
// or ParseError.
SwapRules LoadSwapRules(const std::string& path);

// Copies the case pattern of `pattern` onto `word`: "HE" -> upper,
// "He" -> capitalized, otherwise lower.
std::string ApplyCasePattern(std::string_view pattern, std::string_view word);

}  // namespace fairembed

#endif  // FAIREMBED_SWAP_RULES_H_
