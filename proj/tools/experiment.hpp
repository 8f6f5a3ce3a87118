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

#ifndef GMFLOW_TOOLS_EXPERIMENT_HPP
#define GMFLOW_TOOLS_EXPERIMENT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "gmflow/integrators.hpp"
#include "gmflow/mappings.hpp"
#include "gmflow/model.hpp"
#include "gmflow/objectives.hpp"

namespace gmflow::cli {

/// Rejects keys outside the allowed set; every config level is strict.
void require_keys(const nlohmann::json& j,
                  std::initializer_list<const char*> allowed,
                  const std::string& context);

struct ObjectiveConfig {
  std::string family;
  Eigen::Index dim = 0;
  double mu = 0.0;
  double lipschitz = 0.0;
  double reg = 0.0;
  Eigen::Index samples = 50;
  std::uint64_t seed = 0;

  static ObjectiveConfig parse(const nlohmann::json& j);
  std::unique_ptr<Objective> build() const;
};

struct InitConfig {
  std::optional<Vector> x0;
  std::optional<Vector> v0;
  std::uint64_t seed = 1;
  double scale = 1.0;
  double v_scale = 0.0;

  static InitConfig parse(const nlohmann::json& j);
};

struct ExperimentConfig {
  ObjectiveConfig objective;
  std::optional<ModelParams> params;
  std::optional<NamedOptimizerConfig> named;
  Method named_scheme = Method::SIE;
  IntegrationConfig integration;
  InitConfig init;
  std::string output;

  static ExperimentConfig parse(const nlohmann::json& j);

  ModelParams resolved_params() const;
  /// Builds the initial state: explicit vectors win; otherwise a seeded
  /// displacement from the minimizer, with the named-method-aligned
  /// velocity for named runs.
  PhaseState build_init(const Objective& obj) const;
};

NamedOptimizerConfig named_from_json(const nlohmann::json& j);
nlohmann::json named_to_json(const NamedOptimizerConfig& config);
IntegrationConfig integration_from_json(const nlohmann::json& j);

}  // namespace gmflow::cli

#endif  // GMFLOW_TOOLS_EXPERIMENT_HPP
