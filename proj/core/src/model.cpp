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

#include "gmflow/model.hpp"

#include <cmath>

#include "gmflow/errors.hpp"

namespace gmflow {

ModelParams::ModelParams(double m_in, double n_in, double q_in)
    : m(m_in), n(n_in), q(q_in) {
  if (!(m >= 0.0) || !(n >= 0.0) || !(q >= 0.0) || !std::isfinite(m) ||
      !std::isfinite(n) || !std::isfinite(q))
    fail("invalid-constants", "model parameters must be finite and >= 0");
}

void validate_state(const PhaseState& state, const Objective& obj) {
  if (state.x.size() != obj.dim() || state.v.size() != obj.dim())
    fail("invalid-state", "phase state dimension does not match objective");
  if (!state.x.allFinite() || !state.v.allFinite())
    fail("invalid-state", "phase state has non-finite entries");
}

PhaseState gm_ode_rhs(const ModelParams& params, const PhaseState& state,
                      const Objective& obj) {
  validate_state(state, obj);
  const Vector g = obj.gradient(state.x);
  if (!g.allFinite()) fail("non-finite-input", "gradient is not finite");
  return {-params.m * g - params.n * state.v, g - params.q * state.v};
}

double continuous_energy(const ModelParams& params, const PhaseState& state,
                         const Objective& obj) {
  const auto xstar = obj.minimizer();
  if (!xstar || !obj.min_value())
    fail("missing-minimizer", "continuous energy needs a known minimizer");
  validate_state(state, obj);
  const double weight = params.q * params.m + params.n;
  const Vector mix = params.q * (state.x - *xstar) - params.n * state.v;
  return weight * obj.f_gap(state.x) + 0.25 * mix.squaredNorm() +
         params.n * weight / 4.0 * state.v.squaredNorm();
}

double gamma1(const ModelParams& params, double mu) {
  if (params.q == 0.0)
    fail("undefined-rate", "gamma1 is undefined for q = 0");
  if (!(mu > 0.0)) fail("invalid-constants", "gamma1 needs mu > 0");
  return std::min(mu * (params.n + params.q * params.m) / (2.0 * params.q),
                  params.q / 2.0);
}

double optimal_q(double m, double n, double mu) {
  if (!(m >= 0.0) || !(n >= 0.0))
    fail("invalid-constants", "optimal_q needs m, n >= 0");
  if (!(mu > 0.0)) fail("invalid-constants", "optimal_q needs mu > 0");
  if (m == 0.0 && n == 0.0)
    fail("degenerate", "optimal_q is degenerate for m = n = 0");
  return (m + std::sqrt(4.0 * mu * n + m * m)) / 2.0;
}

}  // namespace gmflow
