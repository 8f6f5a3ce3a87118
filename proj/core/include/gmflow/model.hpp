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

#ifndef GMFLOW_MODEL_HPP
#define GMFLOW_MODEL_HPP

#include "gmflow/objectives.hpp"
#include "gmflow/types.hpp"

namespace gmflow {

/// Coefficients of the generalized momentum flow
///   xdot = -m grad f(x) - n v
///   vdot =  grad f(x) - q v
/// with m the gradient-flow weight, n the momentum coupling and q the
/// friction. All three must be nonnegative and finite.
struct ModelParams {
  double m = 0.0;
  double n = 0.0;
  double q = 0.0;

  ModelParams() = default;
  ModelParams(double m_in, double n_in, double q_in);
};

/// Position-velocity pair.
struct PhaseState {
  Vector x;
  Vector v;

  static PhaseState zero(Eigen::Index dim) {
    return {Vector::Zero(dim), Vector::Zero(dim)};
  }
};

/// Validates dimensions and finiteness; throws "invalid-state".
void validate_state(const PhaseState& state, const Objective& obj);

/// Time derivative of the flow at `state`.
PhaseState gm_ode_rhs(const ModelParams& params, const PhaseState& state,
                      const Objective& obj);

/// Continuous energy
///   (qm+n)(f(x)-f*) + 1/4 ||q(x-x*) - n v||^2 + n(qm+n)/4 ||v||^2,
/// nonnegative, zero exactly at the equilibrium (x*, 0).
double continuous_energy(const ModelParams& params, const PhaseState& state,
                         const Objective& obj);

/// Continuous decay rate min(mu (n + q m) / (2q), q / 2). Undefined at q = 0.
double gamma1(const ModelParams& params, double mu);

/// q = (m + sqrt(4 mu n + m^2)) / 2 for fixed m, n; degenerate for m = n = 0.
double optimal_q(double m, double n, double mu);

}  // namespace gmflow

#endif  // GMFLOW_MODEL_HPP
