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

#ifndef FAIREMBED_TESTS_TEST_UTIL_H_
#define FAIREMBED_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <filesystem>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "fairembed/embedding_store.h"
#include "fairembed/text_util.h"

namespace fairembed::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("fairembed_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string path() const { return path_.string(); }
  std::string File(const std::string& name) const { return (path_ / name).string(); }
  std::string Write(const std::string& name, const std::string& content) const {
    WriteFile(File(name), content);
    return File(name);
  }

 private:
  std::filesystem::path path_;
};

inline EmbeddingTable MakeTable(
    std::initializer_list<std::pair<std::string, std::vector<double>>> rows,
    CasePolicy policy = CasePolicy::kFoldLower) {
  EmbeddingTable table("test", rows.begin()->second.size(), policy);
  for (const auto& [word, vec] : rows) table.Insert(word, vec);
  return table;
}

}  // namespace fairembed::testing

#endif  // FAIREMBED_TESTS_TEST_UTIL_H_
