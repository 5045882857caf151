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

#ifndef FAIREMBED_TEXT_UTIL_H_
#define FAIREMBED_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace fairembed {

std::string_view Trim(std::string_view text);

// Splits on '\n', dropping a trailing '\r' from each line. A final newline
// does not produce an empty trailing line.
std::vector<std::string_view> SplitLines(std::string_view text);

// Splits on every occurrence of `sep`; empty fields are kept.
std::vector<std::string_view> SplitOn(std::string_view text, char sep);

// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

bool IsAsciiSpace(char c);

// Whole-file I/O; both throw IoError naming the path.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

}  // namespace fairembed

#endif  // FAIREMBED_TEXT_UTIL_H_
