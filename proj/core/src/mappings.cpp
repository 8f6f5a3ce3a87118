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

#include "gmflow/mappings.hpp"

#include <cmath>

#include "gmflow/errors.hpp"

namespace gmflow {

const char* family_name(OptimizerFamily family) {
  switch (family) {
    case OptimizerFamily::HB:
      return "HB";
    case OptimizerFamily::NAG:
      return "NAG";
    case OptimizerFamily::QHM:
      return "QHM";
  }
  fail("invalid-config", "unknown optimizer family");
}

OptimizerFamily family_from_name(const std::string& name) {
  if (name == "HB") return OptimizerFamily::HB;
  if (name == "NAG") return OptimizerFamily::NAG;
  if (name == "QHM") return OptimizerFamily::QHM;
  fail("invalid-config", "unknown optimizer family '" + name + "'");
}

NamedOptimizerConfig NamedOptimizerConfig::heavy_ball(double s, double beta) {
  NamedOptimizerConfig config;
  config.family = OptimizerFamily::HB;
  config.s = s;
  config.beta = beta;
  config.validate();
  return config;
}

NamedOptimizerConfig NamedOptimizerConfig::nesterov(double s, double beta) {
  NamedOptimizerConfig config;
  config.family = OptimizerFamily::NAG;
  config.s = s;
  config.beta = beta;
  config.validate();
  return config;
}

NamedOptimizerConfig NamedOptimizerConfig::quasi_hyperbolic(double s, double a,
                                                            double b) {
  NamedOptimizerConfig config;
  config.family = OptimizerFamily::QHM;
  config.s = s;
  config.a = a;
  config.b = b;
  config.validate();
  return config;
}

void NamedOptimizerConfig::validate() const {
  if (!(s > 0.0)) fail("invalid-config", "named optimizer needs s > 0");
  switch (family) {
    case OptimizerFamily::HB:
    case OptimizerFamily::NAG:
      if (!(beta >= 0.0) || beta >= 1.0)
        fail("invalid-config", "momentum beta must lie in [0, 1)");
      break;
    case OptimizerFamily::QHM:
      if (!(a > 0.0) || a >= 1.0 || !(b > 0.0) || b >= 1.0)
        fail("invalid-config", "QHM needs a, b in (0, 1)");
      break;
  }
}

ModelParams sie_to_ee(const ModelParams& params, double s) {
  if (!(s > 0.0)) fail("invalid-config", "sie_to_ee needs s > 0");
  const double rs = std::sqrt(s);
  if (params.n == 0.0) return params;
  if (params.q * rs >= 1.0)
    fail("inadmissible-map", "sie_to_ee needs q sqrt(s) < 1");
  return ModelParams(params.m + rs * params.n,
                     (1.0 - params.q * rs) * params.n, params.q);
}

ModelParams ee_to_sie(const ModelParams& params, double s) {
  if (!(s > 0.0)) fail("invalid-config", "ee_to_sie needs s > 0");
  const double rs = std::sqrt(s);
  if (params.n == 0.0) return params;
  if (params.q * rs >= 1.0)
    fail("inadmissible-map", "ee_to_sie needs q sqrt(s) < 1");
  const double r1 = 1.0 - params.q * rs;
  const double m_sie = params.m - rs * params.n / r1;
  if (m_sie < 0.0)
    fail("inadmissible-map", "mapped m would be negative");
  return ModelParams(m_sie, params.n / r1, params.q);
}

ModelParams named_to_gm(const NamedOptimizerConfig& config, Method scheme) {
  config.validate();
  if (scheme == Method::RK4)
    fail("invalid-config", "named optimizers map to EE or SIE only");
  const double rs = std::sqrt(config.s);
  const double decay =
      config.family == OptimizerFamily::QHM ? config.b : config.beta;
  if (decay >= 1.0)
    fail("degenerate", "momentum of 1 gives q = 0; the map degenerates");
  const double q = (1.0 - decay) / rs;

  ModelParams sie_params;
  switch (config.family) {
    case OptimizerFamily::HB:
      sie_params = ModelParams(0.0, 1.0, q);
      break;
    case OptimizerFamily::NAG:
      sie_params = ModelParams(rs, config.beta, q);
      break;
    case OptimizerFamily::QHM:
      sie_params = ModelParams((1.0 - config.a) * rs, config.a, q);
      break;
  }
  if (scheme == Method::SIE) return sie_params;
  return sie_to_ee(sie_params, config.s);
}

Vector ee_equivalent_initial_velocity(const ModelParams& sie_params, double s,
                                  const PhaseState& sie_init,
                                  const Objective& obj) {
  if (!(s > 0.0)) fail("invalid-config", "needs s > 0");
  validate_state(sie_init, obj);
  const double rs = std::sqrt(s);
  if (sie_params.q * rs >= 1.0)
    fail("inadmissible-map", "needs q sqrt(s) < 1");
  return (sie_init.v - rs * obj.gradient(sie_init.x)) /
         (1.0 - sie_params.q * rs);
}

PhaseState named_initial_state(const NamedOptimizerConfig& config,
                               const Vector& x0, const Objective& obj) {
  config.validate();
  PhaseState init;
  init.x = x0;
  if (config.family == OptimizerFamily::QHM)
    init.v = std::sqrt(config.s) * obj.gradient(x0);
  else
    init.v = Vector::Zero(x0.size());
  return init;
}

int named_alignment_offset(OptimizerFamily family) {
  return family == OptimizerFamily::HB ? 1 : 0;
}

namespace {

void check_history(const Objective& obj, const Vector& x, const Vector& other,
                   const char* what) {
  if (x.size() != obj.dim() || other.size() != obj.dim())
    fail("invalid-history", std::string("missing or mismatched ") + what);
}

}  // namespace

TwoPointHistory two_point_init(const Vector& x0, const Objective& obj) {
  return {x0, x0, obj.gradient(x0)};
}

QhmHistory qhm_init(const Vector& x0) {
  return {x0, Vector::Zero(x0.size())};
}

TwoPointHistory hb_step(const NamedOptimizerConfig& config,
                        const TwoPointHistory& history, const Objective& obj) {
  check_history(obj, history.x, history.x_prev, "HB history");
  const Vector grad = obj.gradient(history.x);
  TwoPointHistory next;
  next.x = history.x + config.beta * (history.x - history.x_prev) -
           config.s * grad;
  next.x_prev = history.x;
  next.grad_prev = grad;
  return next;
}

TwoPointHistory nag_step(const NamedOptimizerConfig& config,
                         const TwoPointHistory& history, const Objective& obj) {
  check_history(obj, history.x, history.x_prev, "NAG history");
  if (history.grad_prev.size() != obj.dim())
    fail("invalid-history", "NAG history lacks the previous gradient");
  const Vector grad = obj.gradient(history.x);
  TwoPointHistory next;
  next.x = history.x + config.beta * (history.x - history.x_prev) -
           config.s * grad -
           config.beta * config.s * (grad - history.grad_prev);
  next.x_prev = history.x;
  next.grad_prev = grad;
  return next;
}

QhmHistory qhm_step(const NamedOptimizerConfig& config,
                    const QhmHistory& history, const Objective& obj) {
  check_history(obj, history.x, history.g, "QHM history");
  const Vector grad = obj.gradient(history.x);
  QhmHistory next;
  next.g = config.b * history.g + grad;
  next.x = history.x - config.s * ((1.0 - config.a) * grad + config.a * next.g);
  return next;
}

std::vector<Vector> run_named(const NamedOptimizerConfig& config,
                              const Vector& x0, int steps,
                              const Objective& obj) {
  config.validate();
  if (steps < 0) fail("invalid-config", "steps must be >= 0");
  std::vector<Vector> iterates;
  iterates.reserve(static_cast<std::size_t>(steps) + 1);
  iterates.push_back(x0);
  if (config.family == OptimizerFamily::QHM) {
    QhmHistory history = qhm_init(x0);
    for (int k = 0; k < steps; ++k) {
      history = qhm_step(config, history, obj);
      iterates.push_back(history.x);
    }
  } else {
    TwoPointHistory history = two_point_init(x0, obj);
    for (int k = 0; k < steps; ++k) {
      history = config.family == OptimizerFamily::HB
                    ? hb_step(config, history, obj)
                    : nag_step(config, history, obj);
      iterates.push_back(history.x);
    }
  }
  return iterates;
}

}  // namespace gmflow
