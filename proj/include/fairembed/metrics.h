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

#ifndef FAIREMBED_METRICS_H_
#define FAIREMBED_METRICS_H_

#include <span>
#include <string_view>

#include "fairembed/corpus.h"
#include "nlohmann/json.hpp"

namespace fairembed {

// Unweighted mean of the per-class F1 scores for 0/1 labels. A class with no
// true and no predicted members scores 0.
double MacroF1(std::span<const int> truth, std::span<const int> predicted);

struct GroupConfusion {
  Gender group = Gender::kFemale;
  int tp = 0;
  int fp = 0;
  int tn = 0;
  int fn = 0;

  int total() const { return tp + fp + tn + fn; }
  int positives() const { return tp + fn; }
  void Add(int truth, int predicted);
  nlohmann::json ToJson() const;
  bool operator==(const GroupConfusion&) const = default;
};

enum class Advantage { kFemale, kMale, kTie };
std::string_view AdvantageName(Advantage advantage);

struct FnrrResult {
  double fnr_f = 0.0;
  double fnr_m = 0.0;
  double fnrr = 1.0;
  // Group with the strictly lower false negative rate.
  Advantage advantaged = Advantage::kTie;
};

// fnrr = min(fnr_f, fnr_m) / max(fnr_f, fnr_m), or 1 when both are zero.
// Throws InvalidArgument when a group has no positive members (its false
// negative rate is undefined).
FnrrResult ComputeFnrr(const GroupConfusion& female, const GroupConfusion& male);

}  // namespace fairembed

#endif  // FAIREMBED_METRICS_H_
