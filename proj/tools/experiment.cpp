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

#include "experiment.hpp"

#include <random>

#include "gmflow/errors.hpp"
#include "gmflow/serialization.hpp"

namespace gmflow::cli {

using nlohmann::json;

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& context) {
  if (!j.is_object()) fail("invalid-config", context + " must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const char* candidate : allowed)
      if (key == candidate) known = true;
    if (!known)
      fail("invalid-config", "unknown key '" + key + "' in " + context);
  }
}

ObjectiveConfig ObjectiveConfig::parse(const json& j) {
  require_keys(j, {"family", "dim", "mu", "L", "reg", "samples", "seed"},
               "objective");
  ObjectiveConfig config;
  if (!j.contains("family"))
    fail("invalid-config", "objective needs a family");
  config.family = j.at("family").get<std::string>();
  if (!j.contains("dim")) fail("invalid-config", "objective needs dim");
  config.dim = j.at("dim").get<Eigen::Index>();
  if (!j.contains("seed"))
    fail("invalid-config", "objective needs an explicit seed");
  config.seed = j.at("seed").get<std::uint64_t>();

  if (config.family == "quadratic") {
    if (!j.contains("mu") || !j.contains("L"))
      fail("invalid-config", "quadratic objective needs mu and L");
    config.mu = j.at("mu").get<double>();
    config.lipschitz = j.at("L").get<double>();
    if (j.contains("reg") || j.contains("samples"))
      fail("invalid-config", "reg/samples do not apply to quadratics");
  } else if (config.family == "logistic") {
    if (!j.contains("reg"))
      fail("invalid-config", "logistic objective needs reg");
    config.reg = j.at("reg").get<double>();
    if (j.contains("samples"))
      config.samples = j.at("samples").get<Eigen::Index>();
    if (j.contains("mu") || j.contains("L"))
      fail("invalid-config", "mu/L are derived for logistic objectives");
  } else {
    fail("invalid-config", "unknown objective family '" + config.family + "'");
  }
  return config;
}

std::unique_ptr<Objective> ObjectiveConfig::build() const {
  if (family == "quadratic")
    return std::make_unique<QuadraticObjective>(
        make_quadratic(dim, mu, lipschitz, seed));
  return std::make_unique<LogisticObjective>(
      make_logistic(dim, samples, reg, seed));
}

InitConfig InitConfig::parse(const json& j) {
  require_keys(j, {"x0", "v0", "seed", "scale", "v_scale"}, "init");
  InitConfig config;
  if (j.contains("x0")) config.x0 = vector_from_json(j.at("x0"));
  if (j.contains("v0")) config.v0 = vector_from_json(j.at("v0"));
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("scale")) config.scale = j.at("scale").get<double>();
  if (j.contains("v_scale")) config.v_scale = j.at("v_scale").get<double>();
  return config;
}

NamedOptimizerConfig named_from_json(const json& j) {
  require_keys(j, {"family", "s", "beta", "a", "b"}, "named");
  if (!j.contains("family") || !j.contains("s"))
    fail("invalid-config", "named optimizer needs family and s");
  const OptimizerFamily family =
      family_from_name(j.at("family").get<std::string>());
  const double s = j.at("s").get<double>();
  switch (family) {
    case OptimizerFamily::HB:
      return NamedOptimizerConfig::heavy_ball(s, j.at("beta").get<double>());
    case OptimizerFamily::NAG:
      return NamedOptimizerConfig::nesterov(s, j.at("beta").get<double>());
    case OptimizerFamily::QHM:
      return NamedOptimizerConfig::quasi_hyperbolic(
          s, j.at("a").get<double>(), j.at("b").get<double>());
  }
  fail("invalid-config", "unknown optimizer family");
}

json named_to_json(const NamedOptimizerConfig& config) {
  json out{{"family", family_name(config.family)}, {"s", config.s}};
  if (config.family == OptimizerFamily::QHM) {
    out["a"] = config.a;
    out["b"] = config.b;
  } else {
    out["beta"] = config.beta;
  }
  return out;
}

IntegrationConfig integration_from_json(const json& j) {
  require_keys(j,
               {"method", "s", "rk4_step", "num_steps", "divergence_threshold",
                "record_stride"},
               "integration");
  IntegrationConfig config;
  if (j.contains("method"))
    config.method = method_from_name(j.at("method").get<std::string>());
  if (j.contains("s")) config.s = j.at("s").get<double>();
  if (j.contains("rk4_step")) config.rk4_step = j.at("rk4_step").get<double>();
  if (j.contains("num_steps")) config.num_steps = j.at("num_steps").get<int>();
  if (j.contains("divergence_threshold"))
    config.divergence_threshold = j.at("divergence_threshold").get<double>();
  if (j.contains("record_stride"))
    config.record_stride = j.at("record_stride").get<int>();
  config.validate();
  return config;
}

ExperimentConfig ExperimentConfig::parse(const json& j) {
  require_keys(j,
               {"objective", "params", "named", "scheme", "integration",
                "init", "output", "sweep"},
               "experiment");
  ExperimentConfig config;
  if (!j.contains("objective"))
    fail("invalid-config", "experiment needs an objective");
  config.objective = ObjectiveConfig::parse(j.at("objective"));

  if (j.contains("params") == j.contains("named"))
    fail("invalid-config", "specify exactly one of params or named");
  if (j.contains("params"))
    config.params = params_from_json(j.at("params"));
  if (j.contains("named"))
    config.named = named_from_json(j.at("named"));
  if (j.contains("scheme")) {
    if (!config.named)
      fail("invalid-config", "scheme applies to named optimizers");
    config.named_scheme = method_from_name(j.at("scheme").get<std::string>());
    if (config.named_scheme == Method::RK4)
      fail("invalid-config", "named optimizers discretize with EE or SIE");
  }

  if (j.contains("integration"))
    config.integration = integration_from_json(j.at("integration"));
  if (config.named) {
    config.integration.method = config.named_scheme;
    if (j.contains("integration") && j.at("integration").contains("s") &&
        config.integration.s != config.named->s)
      fail("invalid-config", "integration.s disagrees with named.s");
    config.integration.s = config.named->s;
    if (j.contains("integration") && j.at("integration").contains("method") &&
        method_from_name(
            j.at("integration").at("method").get<std::string>()) !=
            config.named_scheme)
      fail("invalid-config", "integration.method disagrees with scheme");
  }

  if (j.contains("init")) config.init = InitConfig::parse(j.at("init"));
  if (j.contains("output"))
    config.output = j.at("output").get<std::string>();
  return config;
}

ModelParams ExperimentConfig::resolved_params() const {
  if (params) return *params;
  return named_to_gm(*named, named_scheme);
}

PhaseState ExperimentConfig::build_init(const Objective& obj) const {
  PhaseState state;
  if (init.x0) {
    state.x = *init.x0;
  } else {
    std::mt19937_64 rng(init.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector displacement(obj.dim());
    for (Eigen::Index i = 0; i < obj.dim(); ++i)
      displacement[i] = init.scale * normal(rng);
    const auto anchor = obj.minimizer();
    state.x = anchor ? *anchor + displacement : displacement;
    if (init.v_scale != 0.0) {
      Vector velocity(obj.dim());
      for (Eigen::Index i = 0; i < obj.dim(); ++i)
        velocity[i] = init.v_scale * normal(rng);
      state.v = velocity;
    }
  }
  if (init.v0) {
    state.v = *init.v0;
  } else if (state.v.size() == 0) {
    // Named runs start from the state under which the SIE iteration tracks
    // the named optimizer exactly; plain runs start at rest.
    state.v = named && named_scheme == Method::SIE
                  ? named_initial_state(*named, state.x, obj).v
                  : Vector::Zero(obj.dim());
  }
  validate_state(state, obj);
  return state;
}

}  // namespace gmflow::cli
