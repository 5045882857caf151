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

#ifndef FAIREMBED_TOKENIZER_H_
#define FAIREMBED_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fairembed {

// A token with its byte span [begin, end) in the source text.
struct Token {
  std::string text;
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const Token&) const = default;
};

// Whitespace tokenization with leading and trailing ASCII punctuation split
// off one character at a time, and English clitics ('s 're 've 'd 'll 'm n't)
// split from their host ("she's" -> "she" "'s"). Case is preserved.
std::vector<Token> Tokenize(std::string_view text);

// Rebuilds the source text from `tokens` and the inter-token gaps of
// `source`. For tokens produced by Tokenize(source) this returns `source`.
std::string Detokenize(std::string_view source, const std::vector<Token>& tokens);

// True if every byte of `token` is ASCII punctuation.
bool IsPunctuation(std::string_view token);

}  // namespace fairembed

#endif  // FAIREMBED_TOKENIZER_H_
