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

#include "fairembed/synth.h"

#include <array>
#include <cmath>
#include <numbers>
#include <string_view>

#include "fairembed/errors.h"
#include "fairembed/rng.h"
#include "fairembed/swap_rules.h"
#include "fairembed/text_util.h"

namespace fairembed {
namespace {

constexpr std::array<std::string_view, 10> kDepressionWords = {
    "depressed", "hopeless",  "anhedonia", "tearful",    "worthless",
    "suicidal",  "sad",       "insomnia",  "withdrawn",  "despondent"};
constexpr std::array<std::string_view, 10> kNoneWords = {
    "stable",    "afebrile", "ambulating", "tolerating", "pleasant",
    "euthymic",  "calm",     "improving",  "cooperative", "comfortable"};
constexpr std::array<std::string_view, 16> kFillerWords = {
    "patient", "admitted", "with",   "history", "of",    "pain",
    "was",     "noted",    "on",     "exam",    "today", "follow",
    "up",      "clinic",   "vitals", "reviewed"};
// Nouns that follow a possessive pronoun.
constexpr std::array<std::string_view, 5> kPossessed = {"mood", "sleep", "appetite",
                                                        "energy", "family"};
constexpr std::array<std::string_view, 3> kVerbs = {"reports", "denies", "endorses"};

struct Pronouns {
  std::string_view subject, possessive, reflexive;
};
constexpr Pronouns kFemalePronouns = {"she", "her", "herself"};
constexpr Pronouns kMalePronouns = {"he", "his", "himself"};

double Normal(Rng& rng) {
  double u1 = UniformUnit(rng);
  while (u1 <= 0.0) u1 = UniformUnit(rng);
  const double u2 = UniformUnit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <size_t N>
std::string_view Pick(const std::array<std::string_view, N>& words, Rng& rng) {
  return words[UniformIndex(rng, N)];
}

int UniformInt(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(UniformIndex(rng, static_cast<uint64_t>(hi - lo + 1)));
}

std::string PronounPhrase(const Pronouns& p, Rng& rng) {
  switch (UniformIndex(rng, 3)) {
    case 0:
      return std::string(p.subject) + " " + std::string(Pick(kVerbs, rng));
    case 1:
      return std::string(p.possessive) + " " + std::string(Pick(kPossessed, rng));
    default:
      return std::string(p.subject) + " calls " + std::string(p.reflexive);
  }
}

class VectorMaker {
 public:
  VectorMaker(int dim, Rng& rng) : dim_(dim), rng_(rng) {}

  // Gaussian noise on the nuisance coordinates (index >= 2).
  std::vector<double> Nuisance(double sigma) {
    std::vector<double> v(dim_, 0.0);
    for (int i = 2; i < dim_; ++i) v[i] = sigma * Normal(rng_);
    return v;
  }

 private:
  int dim_;
  Rng& rng_;
};

}  // namespace

void SynthOptions::Validate() const {
  if (per_cell < 1) throw InvalidArgument("synth: per_cell must be >= 1");
  if (dim < 4) throw InvalidArgument("synth: dim must be >= 4");
  if (!(strength >= 0.0 && strength <= 1.0)) {
    throw InvalidArgument("synth: strength must lie in [0, 1]");
  }
  if (!(signal_purity >= 0.5 && signal_purity <= 1.0)) {
    throw InvalidArgument("synth: signal_purity must lie in [0.5, 1]");
  }
  if (!std::isfinite(embedding_bias)) throw InvalidArgument("synth: embedding_bias must be finite");
  if (signal_tokens < 1 || filler_tokens < 0) {
    throw InvalidArgument("synth: need at least one signal token");
  }
  if (!(pronoun_offset > 0.0) || !std::isfinite(pronoun_offset)) {
    throw InvalidArgument("synth: pronoun_offset must be positive");
  }
}

nlohmann::json SynthOptions::ToJson() const {
  return {{"seed", seed},
          {"per_cell", per_cell},
          {"dim", dim},
          {"strength", strength},
          {"embedding_bias", embedding_bias},
          {"favored", GenderName(favored)},
          {"drop_pronouns", drop_pronouns},
          {"signal_purity", signal_purity},
          {"signal_tokens", signal_tokens},
          {"pronoun_offset", pronoun_offset},
          {"filler_tokens", filler_tokens}};
}

SynthFixture GenerateSynth(const SynthOptions& options) {
  options.Validate();
  Rng corpus_rng(DeriveSeed(options.seed, {HashTag("corpus")}));
  Rng vector_rng(DeriveSeed(options.seed, {HashTag("vectors")}));

  SynthFixture fixture{{}, EmbeddingTable("synth", options.dim, CasePolicy::kFoldLower), {}, {}};
  const int n = 4 * options.per_cell;
  fixture.corpus.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Gender gender = (i % 2 == 0) ? Gender::kFemale : Gender::kMale;
    const Label label = ((i / 2) % 2 == 0) ? Label::kDepression : Label::kNone;
    const bool depressed = label == Label::kDepression;

    int n_pronouns;
    if (UniformUnit(corpus_rng) < options.strength) {
      const bool many = (gender == options.favored) == depressed;
      n_pronouns = many ? UniformInt(corpus_rng, 4, 6) : UniformInt(corpus_rng, 1, 2);
    } else {
      n_pronouns = UniformInt(corpus_rng, 1, 6);
    }

    std::vector<std::string> phrases;
    for (int k = 0; k < options.signal_tokens; ++k) {
      const bool own = UniformUnit(corpus_rng) < options.signal_purity;
      phrases.emplace_back(own == depressed ? Pick(kDepressionWords, corpus_rng)
                                            : Pick(kNoneWords, corpus_rng));
    }
    for (int k = 0; k < options.filler_tokens; ++k) {
      phrases.emplace_back(Pick(kFillerWords, corpus_rng));
    }
    const Pronouns& pronouns = gender == Gender::kFemale ? kFemalePronouns : kMalePronouns;
    for (int k = 0; k < n_pronouns; ++k) phrases.push_back(PronounPhrase(pronouns, corpus_rng));
    Shuffle(phrases, corpus_rng);

    std::string text;
    for (const std::string& phrase : phrases) {
      if (!text.empty()) text += ' ';
      text += phrase;
    }
    text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    text += " .";

    char id[32];
    std::snprintf(id, sizeof(id), "synth-%06d", i + 1);
    fixture.corpus.push_back({id, std::move(text), label, gender, Provenance::kOriginal});
  }

  // Embedding: coordinate 0 is the label signal axis, coordinate 1 the
  // gender axis (positive = female).
  VectorMaker make(options.dim, vector_rng);
  const double towards = options.favored == Gender::kFemale ? 1.0 : -1.0;
  const double bias = options.strength * options.embedding_bias * towards;
  auto insert = [&](std::string_view word, const std::vector<double>& v) {
    fixture.table.Insert(word, v);
  };
  for (std::string_view word : kDepressionWords) {
    std::vector<double> v = make.Nuisance(0.3);
    v[0] = 1.0 + 0.1 * Normal(vector_rng);
    v[1] = bias + 0.02 * Normal(vector_rng);
    insert(word, v);
  }
  for (std::string_view word : kNoneWords) {
    std::vector<double> v = make.Nuisance(0.3);
    v[0] = -1.0 + 0.1 * Normal(vector_rng);
    v[1] = 0.02 * Normal(vector_rng);
    insert(word, v);
  }
  auto insert_neutral = [&](std::string_view word) {
    std::vector<double> v = make.Nuisance(0.5);
    v[0] = 0.05 * Normal(vector_rng);
    v[1] = 0.02 * Normal(vector_rng);
    insert(word, v);
  };
  for (std::string_view word : kFillerWords) insert_neutral(word);
  for (std::string_view word : kPossessed) insert_neutral(word);
  for (std::string_view word : kVerbs) insert_neutral(word);
  insert_neutral("calls");

  const SwapRules rules = SwapRules::Default();
  auto keep = [&](std::string_view word) {
    return !options.drop_pronouns || (!rules.IsPronoun(AsciiLower(word)) && word != "hers");
  };
  fixture.pairs = DefaultGenderPairs();
  std::vector<GenderPair> gendered = fixture.pairs;
  gendered.push_back({"hers", "him"});
  // The two words of a pair differ only along the gender axis. Pronoun pairs
  // sit at a fixed offset and the other pairs spread around it, so the
  // centered differences still vary along that axis.
  for (const GenderPair& pair : gendered) {
    const std::vector<double> base = make.Nuisance(0.5);
    const double offset = rules.IsPronoun(AsciiLower(pair.female_word)) ||
                                  rules.IsPronoun(AsciiLower(pair.male_word))
                              ? options.pronoun_offset
                              : 0.15 + 0.7 * UniformUnit(vector_rng);
    std::vector<double> female = base, male = base;
    female[1] += offset;
    male[1] -= offset;
    if (keep(pair.female_word)) insert(pair.female_word, female);
    if (keep(pair.male_word)) insert(pair.male_word, male);
  }
  for (std::string_view word : {"they", "them", "their", "themself"}) {
    if (keep(word)) insert_neutral(word);
  }

  fixture.targets.assign(kDepressionWords.begin(), kDepressionWords.end());
  return fixture;
}

void WriteSynthFixture(const SynthFixture& fixture, const SynthOptions& options,
                       const std::string& dir) {
  WriteCorpusJsonl(fixture.corpus, dir + "/corpus.jsonl");
  WriteTsv(fixture.table, dir + "/embedding.tsv");
  std::string pairs = "# female\tmale\n";
  for (const GenderPair& pair : fixture.pairs) {
    pairs += pair.female_word + "\t" + pair.male_word + "\n";
  }
  WriteFile(dir + "/pairs.tsv", pairs);
  std::string targets;
  for (const std::string& term : fixture.targets) targets += term + "\n";
  WriteFile(dir + "/targets.txt", targets);
  WriteFile(dir + "/synth_config.json", options.ToJson().dump(2) + "\n");
}

}  // namespace fairembed
