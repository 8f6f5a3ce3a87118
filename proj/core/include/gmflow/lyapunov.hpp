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

#ifndef GMFLOW_LYAPUNOV_HPP
#define GMFLOW_LYAPUNOV_HPP

#include <string>
#include <utility>
#include <vector>

#include "gmflow/integrators.hpp"
#include "gmflow/model.hpp"
#include "gmflow/objectives.hpp"

namespace gmflow {

struct ConditionReport {
  bool ok = false;
  /// Names of the violated inequalities, empty when ok.
  std::vector<std::string> violations;
};

/// Admissibility for the semi-implicit scheme:
///   0 < m sqrt(s) <= 1/(2L),  0 < n s <= m sqrt(s),  0 < q sqrt(s) <= 1/2.
ConditionReport sie_conditions_ok(const ModelParams& params, double s,
                                  double L);

/// Admissibility for the explicit scheme (q sqrt(s) < 1 required):
///   0 < m sqrt(s) - n s / (1 - q sqrt(s)) <= 1/(2L),
///   0 < n s <= (1 - q sqrt(s)) / 2 * m sqrt(s),
///   0 < q sqrt(s) <= 1/2.
ConditionReport ee_conditions_ok(const ModelParams& params, double s,
                                 double L);

/// Discrete rate for SIE: (1/5) min(n mu / q, q / (1 + q^2 / (n L))).
double gamma2(const ModelParams& params, double mu, double L);

/// Discrete rate for EE:
/// (1/5) min(n mu / (q (1 - mu sqrt(s))), q / (1 + q^2 / (n L))).
double gamma3(const ModelParams& params, double mu, double L, double s);

/// Discrete energy of the SIE iteration, with r1 = 1 - q sqrt(s) and
/// r2 = n + m q:
///   E(k) = r1 r2 (f(x_k) - f*) - r1 r2 m sqrt(s)/2 ||grad f(x_k)||^2
///        + n r1^2 r2 / 4 ||v_k||^2
///        + 1/4 ||q (x_{k+1} - x*) - n r1 v_k||^2.
/// Nonnegative whenever the SIE conditions hold.
double discrete_energy_sie(const ModelParams& params, double s,
                           const Objective& obj, const Vector& x_k,
                           const Vector& x_next, const Vector& v_k);

struct RateCertificate {
  /// The applicable gamma2 (SIE) or, for EE runs, gamma2 of the mapped
  /// parameters.
  double gamma = 0.0;
  /// 1 / (1 + gamma sqrt(s)).
  double per_step_bound = 0.0;
  /// (step index, E(k+1)/E(k)) for every step where the per-step decay
  /// failed beyond tolerance. Empty means certified.
  std::vector<std::pair<int, double>> violations;

  bool certified() const { return violations.empty(); }
};

/// Discrete energies E(0) .. E(K-1) along a stride-1 EE/SIE trajectory. EE
/// runs are certified through their SIE image: parameters mapped with
/// ee_to_sie and velocities shifted by one step (v_sie_k = v_ee_{k+1}).
std::vector<double> discrete_energy_series(const Trajectory& trajectory,
                                           const Objective& obj);

/// Checks E(k+1) <= E(k) / (1 + gamma sqrt(s)) + 1e-12 E(0) along the
/// trajectory. Refuses (condition-violation) when the admissibility
/// conditions fail, since the certificate would be vacuous.
RateCertificate certify_decay(const Trajectory& trajectory,
                              const Objective& obj);

}  // namespace gmflow

#endif  // GMFLOW_LYAPUNOV_HPP
