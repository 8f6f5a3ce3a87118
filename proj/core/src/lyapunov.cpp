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

#include "gmflow/lyapunov.hpp"

#include <cmath>
#include <limits>

#include "gmflow/errors.hpp"
#include "gmflow/mappings.hpp"

namespace gmflow {

ConditionReport sie_conditions_ok(const ModelParams& params, double s,
                                  double L) {
  if (!(s > 0.0) || !(L > 0.0))
    fail("invalid-constants", "conditions need s > 0 and L > 0");
  const double rs = std::sqrt(s);
  ConditionReport report;
  if (!(params.m * rs > 0.0 && params.m * rs <= 1.0 / (2.0 * L)))
    report.violations.push_back("0 < m*sqrt(s) <= 1/(2L)");
  if (!(params.n * s > 0.0 && params.n * s <= params.m * rs))
    report.violations.push_back("0 < n*s <= m*sqrt(s)");
  if (!(params.q * rs > 0.0 && params.q * rs <= 0.5))
    report.violations.push_back("0 < q*sqrt(s) <= 1/2");
  report.ok = report.violations.empty();
  return report;
}

ConditionReport ee_conditions_ok(const ModelParams& params, double s,
                                 double L) {
  if (!(s > 0.0) || !(L > 0.0))
    fail("invalid-constants", "conditions need s > 0 and L > 0");
  const double rs = std::sqrt(s);
  if (params.q * rs >= 1.0)
    fail("inadmissible", "EE conditions need q sqrt(s) < 1");
  const double r1 = 1.0 - params.q * rs;
  const double effective = params.m * rs - params.n * s / r1;
  ConditionReport report;
  if (!(effective > 0.0 && effective <= 1.0 / (2.0 * L)))
    report.violations.push_back(
        "0 < m*sqrt(s) - n*s/(1-q*sqrt(s)) <= 1/(2L)");
  if (!(params.n * s > 0.0 && params.n * s <= r1 / 2.0 * params.m * rs))
    report.violations.push_back("0 < n*s <= (1-q*sqrt(s))/2 * m*sqrt(s)");
  if (!(params.q * rs > 0.0 && params.q * rs <= 0.5))
    report.violations.push_back("0 < q*sqrt(s) <= 1/2");
  report.ok = report.violations.empty();
  return report;
}

double gamma2(const ModelParams& params, double mu, double L) {
  if (params.n <= 0.0 || params.q <= 0.0)
    fail("undefined-rate", "gamma2 needs n > 0 and q > 0");
  if (!(mu > 0.0) || !(L > 0.0))
    fail("invalid-constants", "gamma2 needs mu > 0 and L > 0");
  return std::min(params.n * mu / params.q,
                  params.q / (1.0 + params.q * params.q / (params.n * L))) /
         5.0;
}

double gamma3(const ModelParams& params, double mu, double L, double s) {
  if (params.n <= 0.0 || params.q <= 0.0)
    fail("undefined-rate", "gamma3 needs n > 0 and q > 0");
  if (!(mu > 0.0) || !(L > 0.0) || !(s > 0.0))
    fail("invalid-constants", "gamma3 needs mu, L, s > 0");
  const double shrink = 1.0 - mu * std::sqrt(s);
  if (shrink <= 0.0)
    fail("undefined-rate", "gamma3 needs mu sqrt(s) < 1");
  return std::min(params.n * mu / (params.q * shrink),
                  params.q / (1.0 + params.q * params.q / (params.n * L))) /
         5.0;
}

double discrete_energy_sie(const ModelParams& params, double s,
                           const Objective& obj, const Vector& x_k,
                           const Vector& x_next, const Vector& v_k) {
  const auto xstar = obj.minimizer();
  if (!xstar || !obj.min_value())
    fail("missing-minimizer", "discrete energy needs a known minimizer");
  if (!(s > 0.0)) fail("invalid-constants", "discrete energy needs s > 0");
  const double rs = std::sqrt(s);
  const double r1 = 1.0 - params.q * rs;
  const double r2 = params.n + params.m * params.q;
  const Vector grad = obj.gradient(x_k);
  const Vector mix = params.q * (x_next - *xstar) - params.n * r1 * v_k;
  return r1 * r2 * obj.f_gap(x_k) -
         r1 * r2 * params.m * rs / 2.0 * grad.squaredNorm() +
         params.n * r1 * r1 * r2 / 4.0 * v_k.squaredNorm() +
         0.25 * mix.squaredNorm();
}

namespace {

// Resolves the SIE view of a trajectory: parameters, and the velocity at
// discrete index k. EE trajectories are reinterpreted through the SIE
// equivalence, whose velocity correspondence is v_sie_k = v_ee_{k+1}.
struct SieView {
  ModelParams params;
  int velocity_shift;  // 0 for SIE runs, 1 for EE runs
};

SieView sie_view(const Trajectory& trajectory) {
  if (trajectory.config.record_stride != 1)
    fail("invalid-config", "certification needs a stride-1 trajectory");
  switch (trajectory.config.method) {
    case Method::SIE:
      return {trajectory.params, 0};
    case Method::EE:
      return {ee_to_sie(trajectory.params, trajectory.config.s), 1};
    case Method::RK4:
      break;
  }
  fail("invalid-config", "certification applies to EE/SIE trajectories");
}

}  // namespace

std::vector<double> discrete_energy_series(const Trajectory& trajectory,
                                           const Objective& obj) {
  const SieView view = sie_view(trajectory);
  const std::size_t count = trajectory.states.size();
  const std::size_t shift = static_cast<std::size_t>(view.velocity_shift);
  std::vector<double> energies;
  if (count < 2) return energies;
  // E(k) reads x_k, x_{k+1} and the view's v_k (v_{k+1} of the raw EE run),
  // so k runs to count - 2 for both views.
  energies.reserve(count - 1);
  for (std::size_t k = 0; k + 1 < count; ++k) {
    const Vector& v_k = trajectory.states[k + shift].v;
    energies.push_back(discrete_energy_sie(view.params, trajectory.config.s,
                                           obj, trajectory.states[k].x,
                                           trajectory.states[k + 1].x, v_k));
  }
  return energies;
}

RateCertificate certify_decay(const Trajectory& trajectory,
                              const Objective& obj) {
  const SieView view = sie_view(trajectory);
  const ConditionReport report =
      sie_conditions_ok(view.params, trajectory.config.s, obj.lipschitz());
  if (!report.ok) {
    std::string joined;
    for (const auto& v : report.violations) {
      if (!joined.empty()) joined += "; ";
      joined += v;
    }
    fail("condition-violation",
         "certificate would be vacuous: " + joined);
  }

  RateCertificate certificate;
  certificate.gamma = gamma2(view.params, obj.mu(), obj.lipschitz());
  const double rs = std::sqrt(trajectory.config.s);
  certificate.per_step_bound = 1.0 / (1.0 + certificate.gamma * rs);

  const std::vector<double> energy = discrete_energy_series(trajectory, obj);
  if (energy.empty()) return certificate;
  const double slack = 1e-12 * energy.front();
  for (std::size_t k = 0; k + 1 < energy.size(); ++k) {
    if (energy[k + 1] > energy[k] * certificate.per_step_bound + slack) {
      certificate.violations.emplace_back(
          static_cast<int>(k),
          energy[k] != 0.0 ? energy[k + 1] / energy[k]
                           : std::numeric_limits<double>::infinity());
    }
  }
  return certificate;
}

}  // namespace gmflow
