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

#ifndef GMFLOW_SERIALIZATION_HPP
#define GMFLOW_SERIALIZATION_HPP

#include <memory>

#include <nlohmann/json.hpp>

#include "gmflow/integrators.hpp"
#include "gmflow/mappings.hpp"
#include "gmflow/model.hpp"
#include "gmflow/objectives.hpp"

namespace gmflow {

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModelParams& params);
ModelParams params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const QuadraticObjective& obj);
QuadraticObjective quadratic_from_json(const nlohmann::json& j);

/// The logistic document carries the cached minimizer so replays skip the
/// construction solve.
nlohmann::json to_json(const LogisticObjective& obj);
LogisticObjective logistic_from_json(const nlohmann::json& j);

/// Tagged round-trip through the "family" field.
nlohmann::json objective_to_json(const Objective& obj);
std::unique_ptr<Objective> objective_from_json(const nlohmann::json& j);

}  // namespace gmflow

#endif  // GMFLOW_SERIALIZATION_HPP
