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

#include "fairembed/json_util.h"

#include "fairembed/errors.h"

namespace fairembed {

nlohmann::json VectorToJson(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd VectorFromJson(const nlohmann::json& json) {
  if (!json.is_array()) throw ParseError("expected a numeric array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(json.size()));
  for (size_t i = 0; i < json.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = json[i].get<double>();
  }
  return v;
}

nlohmann::json MatrixToJson(const Eigen::MatrixXd& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out.push_back(VectorToJson(m.row(r).transpose()));
  }
  return out;
}

Eigen::MatrixXd MatrixFromJson(const nlohmann::json& json) {
  if (!json.is_array()) throw ParseError("expected an array of rows");
  if (json.empty()) return Eigen::MatrixXd(0, 0);
  const size_t cols = json[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(json.size()),
                    static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < json.size(); ++r) {
    if (!json[r].is_array() || json[r].size() != cols) {
      throw ParseError("matrix rows have inconsistent lengths");
    }
    for (size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          json[r][c].get<double>();
    }
  }
  return m;
}

}  // namespace fairembed
