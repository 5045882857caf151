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

#ifndef FAIREMBED_TESTS_SENTENCE_GEN_H_
#define FAIREMBED_TESTS_SENTENCE_GEN_H_

#include <cctype>
#include <random>
#include <string>
#include <vector>

#include "fairembed/swap_rules.h"

namespace fairembed::testing {

// Random sentences over he/she/him/his/himself/herself plus filler words.
// "him" is always followed by punctuation or a function word from the
// ambiguity lexicon and "his" by a content word, so the "her" produced by
// the first swap reads back as the same form on the second swap.
class UnambiguousSentenceGenerator {
 public:
  explicit UnambiguousSentenceGenerator(uint64_t seed, const SwapRules& rules)
      : rng_(seed), lexicon_(rules.ambiguity_lexicon.begin(), rules.ambiguity_lexicon.end()) {}

  std::string Next() {
    std::vector<std::string> tokens;
    const int n = 1 + static_cast<int>(rng_() % 14);
    while (static_cast<int>(tokens.size()) < n) {
      switch (rng_() % 8) {
        case 0:
          tokens.push_back(Cased(Pick({"he", "she"})));
          break;
        case 1:
          tokens.push_back(Cased(Pick({"himself", "herself"})));
          break;
        case 2:
          tokens.push_back(Cased("him"));
          if (rng_() % 2 == 0) {
            tokens.push_back(Pick({".", ",", ";", "!", "?"}));
          } else {
            tokens.push_back(Cased(lexicon_[rng_() % lexicon_.size()]));
          }
          break;
        case 3:
          tokens.push_back(Cased("his"));
          tokens.push_back(Cased(Pick(kContent)));
          break;
        case 4:
          tokens.push_back(Pick({".", ",", "(", ")", "-"}));
          break;
        default:
          tokens.push_back(Cased(Pick(kContent)));
          break;
      }
    }
    std::string text;
    for (const std::string& token : tokens) {
      const bool punct = !std::isalpha(static_cast<unsigned char>(token[0]));
      if (!text.empty() && (!punct || rng_() % 3 == 0)) text += Pick({" ", " ", "  ", "\t"});
      text += token;
    }
    return text;
  }

 private:
  static inline const std::vector<std::string> kContent = {
      "pain", "mood", "leg", "sleep", "chart", "medication", "note", "patient", "reports",
      "was", "seen", "anxious", "x-ray", "follow-up", "discharged"};

  std::string Pick(const std::vector<std::string>& options) {
    return options[rng_() % options.size()];
  }

  std::string Cased(std::string word) {
    switch (rng_() % 4) {
      case 0:
        word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
        break;
      case 1:
        for (char& c : word) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        break;
      default:
        break;
    }
    return word;
  }

  std::mt19937_64 rng_;
  std::vector<std::string> lexicon_;
};

}  // namespace fairembed::testing

#endif  // FAIREMBED_TESTS_SENTENCE_GEN_H_
