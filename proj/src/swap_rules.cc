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

#include "fairembed/swap_rules.h"

#include "fairembed/embedding_store.h"
#include "fairembed/errors.h"
#include "fairembed/text_util.h"
#include "fairembed/tokenizer.h"

namespace fairembed {

SwapRules SwapRules::Default() {
  SwapRules rules;
  rules.pair_map = {{"he", "she"},       {"she", "he"},
                    {"him", "her"},      {"his", "her"},
                    {"himself", "herself"}, {"herself", "himself"}};
  rules.ambiguous = {{"her", {"him", "his"}}};
  rules.neutral_map = {{"he", "they"},       {"she", "they"},
                       {"him", "them"},      {"his", "their"},
                       {"himself", "themself"}, {"herself", "themself"}};
  rules.neutral_ambiguous = {{"her", {"them", "their"}}};
  rules.ambiguity_lexicon = {
      // conjunctions
      "and", "or", "but", "nor", "so", "yet", "because", "as", "if", "when",
      "while", "since", "although", "though", "until", "unless", "than",
      "that", "then", "whether",
      // prepositions and particles
      "to", "for", "with", "at", "in", "on", "about", "from", "by", "of",
      "into", "onto", "over", "under", "after", "before", "during", "through",
      "without", "within", "around", "across", "against", "toward", "towards",
      "upon", "up", "down", "out", "off", "back", "home", "via", "per",
      // determiners: "gave her a", "told her the"
      "a", "an", "the", "this", "these", "those", "some", "any",
      // temporal adverbs
      "again", "today", "yesterday", "tomorrow", "now", "later", "daily"};
  rules.extensions = {{"mr", "mrs"},          {"mrs", "mr"},
                      {"husband", "wife"},    {"wife", "husband"},
                      {"boyfriend", "girlfriend"}, {"girlfriend", "boyfriend"},
                      {"brother", "sister"},  {"sister", "brother"},
                      {"father", "mother"},   {"mother", "father"},
                      {"son", "daughter"},    {"daughter", "son"},
                      {"man", "woman"},       {"woman", "man"},
                      {"male", "female"},     {"female", "male"},
                      {"hers", "his"}};
  return rules;
}

namespace {

std::map<std::string, std::string> StringMap(const nlohmann::json& json,
                                             const char* key) {
  std::map<std::string, std::string> out;
  if (!json.is_object()) {
    throw ParseError(std::string("swap rules: '") + key + "' must be an object");
  }
  for (const auto& [from, to] : json.items()) {
    if (!to.is_string() || from.empty() || to.get<std::string>().empty()) {
      throw ParseError(std::string("swap rules: '") + key +
                       "' entries must map non-empty strings");
    }
    out[AsciiLower(from)] = AsciiLower(to.get<std::string>());
  }
  return out;
}

std::map<std::string, AmbiguousForm> AmbiguousMap(const nlohmann::json& json,
                                                  const char* key) {
  std::map<std::string, AmbiguousForm> out;
  if (!json.is_object()) {
    throw ParseError(std::string("swap rules: '") + key + "' must be an object");
  }
  for (const auto& [from, forms] : json.items()) {
    if (!forms.is_object() || !forms.contains("object") ||
        !forms.contains("possessive") || !forms["object"].is_string() ||
        !forms["possessive"].is_string()) {
      throw ParseError(std::string("swap rules: '") + key + "." + from +
                       "' needs string fields object and possessive");
    }
    out[AsciiLower(from)] = {AsciiLower(forms["object"].get<std::string>()),
                             AsciiLower(forms["possessive"].get<std::string>())};
  }
  return out;
}

nlohmann::json AmbiguousJson(const std::map<std::string, AmbiguousForm>& map) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [from, forms] : map) {
    out[from] = {{"object", forms.object}, {"possessive", forms.possessive}};
  }
  return out;
}

}  // namespace

SwapRules SwapRules::FromJson(const nlohmann::json& json) {
  if (!json.is_object()) throw ParseError("swap rules must be a JSON object");
  SwapRules rules = Default();
  if (json.contains("pair_map")) rules.pair_map = StringMap(json["pair_map"], "pair_map");
  if (json.contains("ambiguous")) {
    rules.ambiguous = AmbiguousMap(json["ambiguous"], "ambiguous");
  }
  if (json.contains("neutral_map")) {
    rules.neutral_map = StringMap(json["neutral_map"], "neutral_map");
  }
  if (json.contains("neutral_ambiguous")) {
    rules.neutral_ambiguous =
        AmbiguousMap(json["neutral_ambiguous"], "neutral_ambiguous");
  }
  if (json.contains("ambiguity_lexicon")) {
    const auto& lexicon = json["ambiguity_lexicon"];
    if (!lexicon.is_array()) {
      throw ParseError("swap rules: 'ambiguity_lexicon' must be an array");
    }
    rules.ambiguity_lexicon.clear();
    for (const auto& word : lexicon) {
      if (!word.is_string()) {
        throw ParseError("swap rules: 'ambiguity_lexicon' entries must be strings");
      }
      rules.ambiguity_lexicon.insert(AsciiLower(word.get<std::string>()));
    }
  }
  if (json.contains("extensions")) {
    rules.extensions = StringMap(json["extensions"], "extensions");
  }
  if (json.contains("use_extensions")) {
    if (!json["use_extensions"].is_boolean()) {
      throw ParseError("swap rules: 'use_extensions' must be a boolean");
    }
    rules.use_extensions = json["use_extensions"].get<bool>();
  }
  return rules;
}

nlohmann::json SwapRules::ToJson() const {
  return {{"pair_map", pair_map},
          {"ambiguous", AmbiguousJson(ambiguous)},
          {"neutral_map", neutral_map},
          {"neutral_ambiguous", AmbiguousJson(neutral_ambiguous)},
          {"ambiguity_lexicon", ambiguity_lexicon},
          {"extensions", extensions},
          {"use_extensions", use_extensions}};
}

std::optional<std::string> SwapRules::SwapOf(std::string_view lower) const {
  const std::string key(lower);
  if (auto it = pair_map.find(key); it != pair_map.end()) return it->second;
  if (use_extensions) {
    if (auto it = extensions.find(key); it != extensions.end()) return it->second;
  }
  return std::nullopt;
}

bool SwapRules::IsAmbiguous(std::string_view lower) const {
  return ambiguous.contains(std::string(lower));
}

bool SwapRules::IsGendered(std::string_view lower) const {
  return IsAmbiguous(lower) || SwapOf(lower).has_value();
}

bool SwapRules::IsPronoun(std::string_view lower) const {
  const std::string key(lower);
  return pair_map.contains(key) || ambiguous.contains(key) ||
         neutral_map.contains(key) || neutral_ambiguous.contains(key);
}

bool SwapRules::SelectsObject(std::string_view next) const {
  if (next.empty() || IsPunctuation(next)) return true;
  return ambiguity_lexicon.contains(AsciiLower(next));
}

SwapRules LoadSwapRules(const std::string& path) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
  try {
    return SwapRules::FromJson(json);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string ApplyCasePattern(std::string_view pattern, std::string_view word) {
  int letters = 0;
  int upper = 0;
  for (char c : pattern) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) ++letters;
    if (c >= 'A' && c <= 'Z') ++upper;
  }
  std::string out = AsciiLower(word);
  if (letters > 1 && upper == letters) {
    for (char& c : out) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
  } else if (!pattern.empty() && pattern[0] >= 'A' && pattern[0] <= 'Z' &&
             !out.empty() && out[0] >= 'a' && out[0] <= 'z') {
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
  }
  return out;
}

}  // namespace fairembed
