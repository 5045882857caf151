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

#include "fairembed/metrics.h"

#include <algorithm>

#include "fairembed/errors.h"

namespace fairembed {

double MacroF1(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw InvalidArgument("macro-F1: label and prediction counts differ");
  }
  double total = 0.0;
  for (int positive : {0, 1}) {
    int tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
      const bool t = truth[i] == positive;
      const bool p = predicted[i] == positive;
      tp += t && p;
      fp += !t && p;
      fn += t && !p;
    }
    const int denom = 2 * tp + fp + fn;
    total += denom > 0 ? 2.0 * tp / denom : 0.0;
  }
  return total / 2.0;
}

void GroupConfusion::Add(int truth, int predicted) {
  if (truth == 1) {
    (predicted == 1 ? tp : fn)++;
  } else {
    (predicted == 1 ? fp : tn)++;
  }
}

nlohmann::json GroupConfusion::ToJson() const {
  return {{"group", GenderName(group)}, {"tp", tp}, {"fp", fp}, {"tn", tn}, {"fn", fn}};
}

std::string_view AdvantageName(Advantage advantage) {
  switch (advantage) {
    case Advantage::kFemale:
      return "F";
    case Advantage::kMale:
      return "M";
    case Advantage::kTie:
      break;
  }
  return "tie";
}

FnrrResult ComputeFnrr(const GroupConfusion& female, const GroupConfusion& male) {
  if (female.positives() == 0 || male.positives() == 0) {
    throw InvalidArgument(
        "FNRR not applicable: a gender group has no depression-labelled notes");
  }
  FnrrResult out;
  out.fnr_f = static_cast<double>(female.fn) / female.positives();
  out.fnr_m = static_cast<double>(male.fn) / male.positives();
  const double hi = std::max(out.fnr_f, out.fnr_m);
  const double lo = std::min(out.fnr_f, out.fnr_m);
  out.fnrr = hi > 0.0 ? lo / hi : 1.0;
  if (out.fnr_f < out.fnr_m) {
    out.advantaged = Advantage::kFemale;
  } else if (out.fnr_m < out.fnr_f) {
    out.advantaged = Advantage::kMale;
  }
  return out;
}

}  // namespace fairembed
