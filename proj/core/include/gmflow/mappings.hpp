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

#ifndef GMFLOW_MAPPINGS_HPP
#define GMFLOW_MAPPINGS_HPP

#include <vector>

#include "gmflow/model.hpp"
#include "gmflow/objectives.hpp"
#include "gmflow/types.hpp"

namespace gmflow {

enum class OptimizerFamily { HB, NAG, QHM };

const char* family_name(OptimizerFamily family);
OptimizerFamily family_from_name(const std::string& name);

/// A named momentum optimizer:
///   HB:  x_{k+1} = x_k + beta (x_k - x_{k-1}) - s grad f(x_k)
///   NAG: HB plus the gradient extrapolation -beta s (grad f(x_k) - grad f(x_{k-1}))
///   QHM: g_{k+1} = b g_k + grad f(x_k);
///        x_{k+1} = x_k - s ((1-a) grad f(x_k) + a g_{k+1})
struct NamedOptimizerConfig {
  OptimizerFamily family = OptimizerFamily::HB;
  double s = 0.0;
  double beta = 0.0;  // HB / NAG momentum in [0, 1)
  double a = 0.0;     // QHM mixing in (0, 1)
  double b = 0.0;     // QHM buffer decay in (0, 1)

  static NamedOptimizerConfig heavy_ball(double s, double beta);
  static NamedOptimizerConfig nesterov(double s, double beta);
  static NamedOptimizerConfig quasi_hyperbolic(double s, double a, double b);

  void validate() const;
};

/// Reparameterization under which EE reproduces the SIE iteration:
///   m_EE = m_SIE + sqrt(s) n_SIE,  n_EE = (1 - q sqrt(s)) n_SIE.
/// Requires q sqrt(s) < 1; identity for n = 0.
ModelParams sie_to_ee(const ModelParams& params, double s);

/// Algebraic inverse of sie_to_ee. The resulting m must stay nonnegative.
ModelParams ee_to_sie(const ModelParams& params, double s);

/// Model parameters under which the given scheme reproduces the named
/// optimizer:
///   HB-SIE  (0, 1, (1-beta)/sqrt(s))      HB-EE  (sqrt(s), beta, ...)
///   NAG-SIE (sqrt(s), beta, ...)          NAG-EE ((1+beta) sqrt(s), beta^2, ...)
///   QHM-SIE ((1-a) sqrt(s), a, (1-b)/sqrt(s)); QHM-EE via sie_to_ee.
ModelParams named_to_gm(const NamedOptimizerConfig& config, Method scheme);

/// Initial velocity for which the EE iteration with sie_to_ee(params) emits
/// exactly the x-sequence of the SIE iteration with `params` started from
/// (x0, v0): v0_EE = (v0 - sqrt(s) grad f(x0)) / (1 - q sqrt(s)).
Vector ee_equivalent_initial_velocity(const ModelParams& sie_params, double s,
                                  const PhaseState& sie_init,
                                  const Objective& obj);

/// Initial phase state for which the SIE iteration with named_to_gm(config,
/// SIE) tracks the named optimizer started from x0 with the conventions
/// x_{-1} = x0 (HB/NAG) and g_0 = 0 (QHM). The SIE velocity corresponds to
/// sqrt(s) g_{k+1}, so g_0 = 0 means v0 = sqrt(s) grad f(x0) for QHM; HB and
/// NAG start from v0 = 0.
PhaseState named_initial_state(const NamedOptimizerConfig& config,
                               const Vector& x0, const Objective& obj);

/// Index alignment of the SIE x-sequence against the named optimizer's: the
/// named iterate x_k equals the SIE iterate x_{k + offset}. HB is shifted by
/// one (its first SIE step is a no-op under v0 = 0); NAG and QHM align
/// directly.
int named_alignment_offset(OptimizerFamily family);

/// History carried by the HB / NAG steppers: current and previous iterate
/// plus the gradient at the previous iterate.
struct TwoPointHistory {
  Vector x;
  Vector x_prev;
  Vector grad_prev;
};

/// History carried by the QHM stepper.
struct QhmHistory {
  Vector x;
  Vector g;
};

/// x_{-1} = x0 convention.
TwoPointHistory two_point_init(const Vector& x0, const Objective& obj);
/// g_0 = 0 convention.
QhmHistory qhm_init(const Vector& x0);

TwoPointHistory hb_step(const NamedOptimizerConfig& config,
                        const TwoPointHistory& history, const Objective& obj);
TwoPointHistory nag_step(const NamedOptimizerConfig& config,
                         const TwoPointHistory& history, const Objective& obj);
QhmHistory qhm_step(const NamedOptimizerConfig& config,
                    const QhmHistory& history, const Objective& obj);

/// Runs the named optimizer for `steps` iterations; returns x_0 .. x_steps.
std::vector<Vector> run_named(const NamedOptimizerConfig& config,
                              const Vector& x0, int steps,
                              const Objective& obj);

}  // namespace gmflow

#endif  // GMFLOW_MAPPINGS_HPP
