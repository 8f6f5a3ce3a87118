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

#ifndef GMFLOW_INTEGRATORS_HPP
#define GMFLOW_INTEGRATORS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "gmflow/model.hpp"
#include "gmflow/objectives.hpp"
#include "gmflow/types.hpp"

namespace gmflow {

struct IntegrationConfig {
  Method method = Method::SIE;
  /// Squared step; EE/SIE advance by sqrt(s) per step.
  double s = 1e-2;
  /// Raw step for RK4 only.
  double rk4_step = 1e-4;
  int num_steps = 1000;
  double divergence_threshold = 1e12;
  /// States are recorded every `record_stride` steps (the final state is
  /// always recorded). Stride 1 keeps the full trajectory.
  int record_stride = 1;

  double step_size() const;
  void validate() const;
};

struct Trajectory {
  ModelParams params;
  IntegrationConfig config;
  /// Step index k of each recorded state.
  std::vector<int> steps;
  std::vector<PhaseState> states;
  /// f(x_k) - f*, one per recorded state; empty when f* is unknown.
  std::vector<double> f_gap;
  /// ||grad f(x_k)||, one per recorded state.
  std::vector<double> grad_norm;
  bool terminated_early = false;
  std::string termination_reason;
  /// Step index at which integration stopped early; -1 when it ran out.
  int termination_step = -1;
  /// Step index of the last recorded state.
  int last_step = 0;

  double time_of(std::size_t record_index) const;
};

/// One explicit-Euler step:
///   x+ = x - m sqrt(s) grad f(x) - n sqrt(s) v
///   v+ = v + sqrt(s) grad f(x) - q sqrt(s) v
/// with a single gradient evaluation at x.
PhaseState ee_step(const ModelParams& params, double s, const PhaseState& state,
                   const Objective& obj);

/// One semi-implicit-Euler step: the x update of ee_step, then
///   v+ = v + sqrt(s) grad f(x+) - q sqrt(s) v.
/// In the driver loop the gradient at x+ is reused as the next step's
/// gradient at its x, so the per-step gradient cost matches EE.
PhaseState sie_step(const ModelParams& params, double s,
                    const PhaseState& state, const Objective& obj);

/// Classical four-stage Runge-Kutta on the flow, step h.
PhaseState rk4_step(const ModelParams& params, double h,
                    const PhaseState& state, const Objective& obj);

/// Coefficients of the velocity-eliminated recurrence
///   x_{k+1} = x_k + momentum (x_k - x_{k-1})
///           + grad * grad f(x_k) + prev_grad * grad f(x_{k-1}).
struct OneLineCoefficients {
  double momentum;
  double grad;
  double prev_grad;
};

OneLineCoefficients one_line_coefficients(const ModelParams& params, double s,
                                          Method scheme);

/// Runs the configured stepper from `init`, recording states and per-step
/// diagnostics. Stops early (with a recorded reason) when ||x|| or the f-gap
/// exceeds the divergence threshold or any value turns non-finite.
Trajectory integrate(const ModelParams& params, const IntegrationConfig& config,
                     const PhaseState& init, const Objective& obj);

/// CSV columns: k, t, f_gap, grad_norm, v_norm.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

/// Deterministic shortest-exact formatting used by every CSV writer.
std::string format_double(double value);

}  // namespace gmflow

#endif  // GMFLOW_INTEGRATORS_HPP
