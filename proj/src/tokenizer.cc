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

#include "fairembed/tokenizer.h"

#include <array>

#include "fairembed/text_util.h"

namespace fairembed {
namespace {

bool IsAsciiPunct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
         (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

char Lower(char c) { return (c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c; }

bool EndsWithIgnoreCase(std::string_view word, std::string_view suffix) {
  if (word.size() < suffix.size()) return false;
  std::string_view tail = word.substr(word.size() - suffix.size());
  for (size_t i = 0; i < suffix.size(); ++i) {
    if (Lower(tail[i]) != suffix[i]) return false;
  }
  return true;
}

// Length of the clitic at the end of `word`, or 0. The host must keep at
// least one byte.
size_t CliticLength(std::string_view word) {
  static constexpr std::array<std::string_view, 14> kClitics = {
      "n't", "n\xE2\x80\x99t", "'s",  "'re", "'ve", "'d",  "'ll", "'m",
      "\xE2\x80\x99s", "\xE2\x80\x99re", "\xE2\x80\x99ve", "\xE2\x80\x99" "d",
      "\xE2\x80\x99ll", "\xE2\x80\x99m"};
  for (std::string_view clitic : kClitics) {
    if (word.size() > clitic.size() && EndsWithIgnoreCase(word, clitic)) {
      return clitic.size();
    }
  }
  return 0;
}

void Emit(std::string_view text, size_t begin, size_t end,
          std::vector<Token>& out) {
  out.push_back({std::string(text.substr(begin, end - begin)), begin, end});
}

}  // namespace

bool IsPunctuation(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (!IsAsciiPunct(c)) return false;
  }
  return true;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    size_t begin = i;
    while (i < text.size() && !IsAsciiSpace(text[i])) ++i;
    size_t end = i;
    if (begin == end) continue;

    while (begin < end && IsAsciiPunct(text[begin])) {
      Emit(text, begin, begin + 1, tokens);
      ++begin;
    }
    size_t core_end = end;
    while (core_end > begin && IsAsciiPunct(text[core_end - 1])) --core_end;
    if (core_end > begin) {
      std::string_view core = text.substr(begin, core_end - begin);
      const size_t clitic = CliticLength(core);
      if (clitic > 0) {
        Emit(text, begin, core_end - clitic, tokens);
        Emit(text, core_end - clitic, core_end, tokens);
      } else {
        Emit(text, begin, core_end, tokens);
      }
    }
    for (size_t p = core_end; p < end; ++p) Emit(text, p, p + 1, tokens);
  }
  return tokens;
}

std::string Detokenize(std::string_view source,
                       const std::vector<Token>& tokens) {
  std::string out;
  size_t cursor = 0;
  for (const Token& token : tokens) {
    out.append(source.substr(cursor, token.begin - cursor));
    out += token.text;
    cursor = token.end;
  }
  out.append(source.substr(cursor));
  return out;
}

}  // namespace fairembed
