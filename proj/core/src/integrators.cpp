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

#include "gmflow/integrators.hpp"

#include <cmath>
#include <cstdio>

#include "gmflow/errors.hpp"

namespace gmflow {

double IntegrationConfig::step_size() const {
  return method == Method::RK4 ? rk4_step : std::sqrt(s);
}

void IntegrationConfig::validate() const {
  if (!(s > 0.0)) fail("invalid-config", "s must be > 0");
  if (!(rk4_step > 0.0)) fail("invalid-config", "rk4_step must be > 0");
  if (num_steps < 1) fail("invalid-config", "num_steps must be >= 1");
  if (record_stride < 1) fail("invalid-config", "record_stride must be >= 1");
  if (!(divergence_threshold > 0.0))
    fail("invalid-config", "divergence_threshold must be > 0");
}

double Trajectory::time_of(std::size_t record_index) const {
  return static_cast<double>(steps.at(record_index)) * config.step_size();
}

namespace {

struct StepResult {
  PhaseState state;
  Vector grad_at_x;  // gradient at the new position
};

// Shared x update; `grad` is grad f(x_k).
Vector position_update(const ModelParams& p, double rs, const PhaseState& s,
                       const Vector& grad) {
  return s.x - p.m * rs * grad - p.n * rs * s.v;
}

StepResult ee_step_cached(const ModelParams& p, double rs, const PhaseState& s,
                          const Vector& grad, const Objective& obj) {
  StepResult out;
  out.state.x = position_update(p, rs, s, grad);
  out.state.v = s.v + rs * grad - p.q * rs * s.v;
  out.grad_at_x = obj.gradient(out.state.x);
  return out;
}

StepResult sie_step_cached(const ModelParams& p, double rs, const PhaseState& s,
                           const Vector& grad, const Objective& obj) {
  StepResult out;
  out.state.x = position_update(p, rs, s, grad);
  out.grad_at_x = obj.gradient(out.state.x);
  out.state.v = s.v + rs * out.grad_at_x - p.q * rs * s.v;
  return out;
}

}  // namespace

PhaseState ee_step(const ModelParams& params, double s, const PhaseState& state,
                   const Objective& obj) {
  if (!(s > 0.0)) fail("invalid-config", "ee_step needs s > 0");
  validate_state(state, obj);
  const double rs = std::sqrt(s);
  const Vector grad = obj.gradient(state.x);
  return {position_update(params, rs, state, grad),
          state.v + rs * grad - params.q * rs * state.v};
}

PhaseState sie_step(const ModelParams& params, double s,
                    const PhaseState& state, const Objective& obj) {
  if (!(s > 0.0)) fail("invalid-config", "sie_step needs s > 0");
  validate_state(state, obj);
  const double rs = std::sqrt(s);
  const Vector grad = obj.gradient(state.x);
  PhaseState next;
  next.x = position_update(params, rs, state, grad);
  next.v = state.v + rs * obj.gradient(next.x) - params.q * rs * state.v;
  return next;
}

PhaseState rk4_step(const ModelParams& params, double h,
                    const PhaseState& state, const Objective& obj) {
  if (!(h > 0.0)) fail("invalid-config", "rk4_step needs h > 0");
  validate_state(state, obj);
  const auto rhs = [&](const PhaseState& y) {
    const Vector g = obj.gradient(y.x);
    return PhaseState{-params.m * g - params.n * y.v, g - params.q * y.v};
  };
  const auto shifted = [&](const PhaseState& y, double c,
                           const PhaseState& k) {
    return PhaseState{y.x + c * k.x, y.v + c * k.v};
  };
  const PhaseState k1 = rhs(state);
  const PhaseState k2 = rhs(shifted(state, h / 2.0, k1));
  const PhaseState k3 = rhs(shifted(state, h / 2.0, k2));
  const PhaseState k4 = rhs(shifted(state, h, k3));
  PhaseState next;
  next.x = state.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  next.v = state.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
  if (!next.x.allFinite() || !next.v.allFinite())
    fail("non-finite-input", "RK4 stage produced non-finite values");
  return next;
}

OneLineCoefficients one_line_coefficients(const ModelParams& params, double s,
                                          Method scheme) {
  if (!(s > 0.0)) fail("invalid-config", "one_line_coefficients needs s > 0");
  if (scheme == Method::RK4)
    fail("invalid-config", "one-line form exists for EE and SIE only");
  if (params.n == 0.0)
    fail("degenerate-one-line",
         "for n = 0 both schemes are plain gradient descent");
  const double rs = std::sqrt(s);
  const double momentum = 1.0 - params.q * rs;
  if (scheme == Method::EE)
    return {momentum, -params.m * rs, momentum * params.m * rs - params.n * s};
  return {momentum, -(params.m * rs + params.n * s), momentum * params.m * rs};
}

Trajectory integrate(const ModelParams& params, const IntegrationConfig& config,
                     const PhaseState& init, const Objective& obj) {
  config.validate();
  validate_state(init, obj);

  Trajectory out;
  out.params = params;
  out.config = config;
  const bool have_min = obj.min_value().has_value();
  const double rs = std::sqrt(config.s);

  const auto record = [&](int k, const PhaseState& state, const Vector& grad) {
    out.steps.push_back(k);
    out.states.push_back(state);
    out.grad_norm.push_back(grad.norm());
    if (have_min) out.f_gap.push_back(obj.f_gap(state.x));
    out.last_step = k;
  };

  PhaseState state = init;
  Vector grad = obj.gradient(state.x);
  if (!grad.allFinite()) fail("non-finite-input", "gradient at init not finite");
  record(0, state, grad);

  for (int k = 1; k <= config.num_steps; ++k) {
    StepResult next;
    switch (config.method) {
      case Method::EE:
        next = ee_step_cached(params, rs, state, grad, obj);
        break;
      case Method::SIE:
        next = sie_step_cached(params, rs, state, grad, obj);
        break;
      case Method::RK4:
        next.state = rk4_step(params, config.rk4_step, state, obj);
        next.grad_at_x = obj.gradient(next.state.x);
        break;
    }

    if (!next.state.x.allFinite() || !next.state.v.allFinite() ||
        !next.grad_at_x.allFinite()) {
      out.terminated_early = true;
      out.termination_reason = "non-finite";
      out.termination_step = k;
      break;
    }

    state = next.state;
    grad = next.grad_at_x;

    const double gap = have_min ? obj.f_gap(state.x) : 0.0;
    const bool diverged = state.x.norm() > config.divergence_threshold ||
                          (have_min && gap > config.divergence_threshold);
    if (diverged || k % config.record_stride == 0 || k == config.num_steps) {
      record(k, state, grad);
      if (diverged) {
        out.terminated_early = true;
        out.termination_reason = "threshold";
        out.termination_step = k;
        break;
      }
    }
  }
  return out;
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  out << "k,t,f_gap,grad_norm,v_norm\n";
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
    out << trajectory.steps[i] << ',' << format_double(trajectory.time_of(i))
        << ','
        << (trajectory.f_gap.empty() ? ""
                                     : format_double(trajectory.f_gap[i]))
        << ',' << format_double(trajectory.grad_norm[i]) << ','
        << format_double(trajectory.states[i].v.norm()) << '\n';
  }
}

}  // namespace gmflow
