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

#ifndef FAIREMBED_SYNTH_H_
#define FAIREMBED_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fairembed/corpus.h"
#include "fairembed/embedding_store.h"
#include "fairembed/gender_geometry.h"
#include "nlohmann/json.hpp"

namespace fairembed {

// Generator for a self-contained corpus + embedding fixture.
//
// Labels are carried by signal tokens drawn from a depression list and a
// "none" list; a note may contain words from both lists.
// Gender is carried only by pronouns. The planted correlation works on two
// levels, both scaled by `strength`:
//
//  * corpus: notes where (gender == favored) == (label == depression) carry
//    many pronouns, the other cells carry few, so pronoun mass is entangled
//    with the label exactly as the favored group would need;
//  * embedding: depression signal words get a component of
//    strength * embedding_bias along the gender axis, towards `favored`.
//
// With strength 0 the fixture is gender-neutral at both levels.
struct SynthOptions {
  uint64_t seed = 0;
  // Notes per (label, gender) cell; 168 gives the 672-note protocol corpus.
  int per_cell = 168;
  int dim = 16;
  double strength = 1.0;
  double embedding_bias = 0.15;
  Gender favored = Gender::kFemale;
  // Leave every pronoun out of the embedding table (gender-blind fixture).
  bool drop_pronouns = false;
  // Probability that a signal token comes from the note's own label list.
  double signal_purity = 0.75;
  int signal_tokens = 5;
  // Half the female-minus-male separation of pronoun pairs along the gender
  // axis.
  double pronoun_offset = 0.5;
  int filler_tokens = 5;

  void Validate() const;
  nlohmann::json ToJson() const;
};

struct SynthFixture {
  Corpus corpus;
  EmbeddingTable table;
  std::vector<GenderPair> pairs;
  std::vector<std::string> targets;
};

SynthFixture GenerateSynth(const SynthOptions& options);

// Writes corpus.jsonl, embedding.tsv, pairs.tsv, targets.txt and
// synth_config.json under `dir`.
void WriteSynthFixture(const SynthFixture& fixture, const SynthOptions& options,
                       const std::string& dir);

}  // namespace fairembed

#endif  // FAIREMBED_SYNTH_H_
