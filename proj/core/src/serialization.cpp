// Copyright 2026 The gmflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gmflow/serialization.hpp"

#include "gmflow/errors.hpp"

namespace gmflow {

using nlohmann::json;

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) fail("invalid-config", "expected a JSON array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail("invalid-config", "expected numeric entries");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    fail("invalid-config", "expected a non-empty array of rows");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(j.size()),
           static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail("invalid-config", "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          j[i][c].get<double>();
  }
  return m;
}

json to_json(const ModelParams& params) {
  return json{{"m", params.m}, {"n", params.n}, {"q", params.q}};
}

ModelParams params_from_json(const json& j) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "m" && key != "n" && key != "q")
      fail("invalid-config", "unknown key '" + key + "' in params");
  }
  if (!j.contains("m") || !j.contains("n") || !j.contains("q"))
    fail("invalid-config", "params need m, n and q");
  return ModelParams(j.at("m").get<double>(), j.at("n").get<double>(),
                     j.at("q").get<double>());
}

json to_json(const QuadraticObjective& obj) {
  return json{{"family", "quadratic"},
              {"eigenvalues", vector_to_json(obj.eigenvalues())},
              {"basis", matrix_to_json(obj.basis())},
              {"center", vector_to_json(obj.center())}};
}

QuadraticObjective quadratic_from_json(const json& j) {
  return QuadraticObjective(vector_from_json(j.at("eigenvalues")),
                            matrix_from_json(j.at("basis")),
                            vector_from_json(j.at("center")));
}

json to_json(const LogisticObjective& obj) {
  return json{{"family", "logistic"},
              {"data", matrix_to_json(obj.data())},
              {"labels", vector_to_json(obj.labels())},
              {"reg", obj.reg()},
              {"minimizer", vector_to_json(*obj.minimizer())},
              {"min_value", *obj.min_value()}};
}

LogisticObjective logistic_from_json(const json& j) {
  if (j.contains("minimizer") && j.contains("min_value"))
    return LogisticObjective::from_cached(
        matrix_from_json(j.at("data")), vector_from_json(j.at("labels")),
        j.at("reg").get<double>(), vector_from_json(j.at("minimizer")),
        j.at("min_value").get<double>());
  return LogisticObjective(matrix_from_json(j.at("data")),
                           vector_from_json(j.at("labels")),
                           j.at("reg").get<double>());
}

json objective_to_json(const Objective& obj) {
  if (const auto* quadratic = dynamic_cast<const QuadraticObjective*>(&obj))
    return to_json(*quadratic);
  if (const auto* logistic = dynamic_cast<const LogisticObjective*>(&obj))
    return to_json(*logistic);
  fail("invalid-config", "unknown objective type");
}

std::unique_ptr<Objective> objective_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "quadratic")
    return std::make_unique<QuadraticObjective>(quadratic_from_json(j));
  if (family == "logistic")
    return std::make_unique<LogisticObjective>(logistic_from_json(j));
  fail("invalid-config", "unknown objective family '" + family + "'");
}

}  // namespace gmflow
