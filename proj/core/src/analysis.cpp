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

#include "gmflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmflow/errors.hpp"
#include "gmflow/lyapunov.hpp"

namespace gmflow {

ReferenceSolution reference_solution(const ModelParams& params,
                                     const Objective& obj,
                                     const PhaseState& init, double s,
                                     int k_max, double h) {
  if (!(s > 0.0) || !(h > 0.0))
    fail("invalid-config", "reference_solution needs s > 0 and h > 0");
  if (k_max < 0) fail("invalid-config", "k_max must be >= 0");
  validate_state(init, obj);
  const double rs = std::sqrt(s);
  const double ratio = rs / h;
  const long substeps = std::lround(ratio);
  if (h > rs / 100.0 + 1e-15 || substeps < 1 ||
      std::abs(ratio - static_cast<double>(substeps)) > 1e-9)
    fail("invalid-config",
         "reference step must divide sqrt(s) with sqrt(s)/h >= 100");

  ReferenceSolution reference;
  reference.params = params;
  reference.s = s;
  reference.h = h;
  reference.samples.reserve(static_cast<std::size_t>(k_max) + 1);
  reference.samples.push_back(init);
  PhaseState state = init;
  for (int k = 1; k <= k_max; ++k) {
    for (long i = 0; i < substeps; ++i) state = rk4_step(params, h, state, obj);
    reference.samples.push_back(state);
  }
  return reference;
}

PhaseState aligned_reference_init(const Trajectory& trajectory) {
  if (trajectory.config.record_stride != 1)
    fail("invalid-pairing", "alignment needs a stride-1 trajectory");
  switch (trajectory.config.method) {
    case Method::EE:
      return trajectory.states.at(0);
    case Method::SIE:
      // The one-step error statement reads w_0 = x_1 against X(0), with the
      // velocity kept at v_0.
      return {trajectory.states.at(1).x, trajectory.states.at(0).v};
    case Method::RK4:
      break;
  }
  fail("invalid-pairing", "error series applies to EE/SIE trajectories");
}

ErrorSeries error_series(const ReferenceSolution& reference,
                         const Trajectory& trajectory) {
  if (trajectory.config.method == Method::RK4)
    fail("invalid-pairing", "error series applies to EE/SIE trajectories");
  if (trajectory.config.record_stride != 1)
    fail("invalid-pairing", "error series needs a stride-1 trajectory");
  if (reference.params.m != trajectory.params.m ||
      reference.params.n != trajectory.params.n ||
      reference.params.q != trajectory.params.q ||
      reference.s != trajectory.config.s)
    fail("invalid-pairing", "reference and trajectory configs disagree");

  const bool sie = trajectory.config.method == Method::SIE;
  const std::size_t offset = sie ? 1 : 0;
  if (trajectory.states.size() <= offset)
    fail("invalid-pairing", "trajectory too short for the convention");

  const std::size_t count = std::min(reference.samples.size(),
                                     trajectory.states.size() - offset);
  ErrorSeries series;
  series.scheme = trajectory.config.method;
  series.s = trajectory.config.s;
  series.params = trajectory.params;
  series.reference_step = reference.h;
  series.deltas.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    series.deltas.push_back(
        (reference.samples[k].x - trajectory.states[k + offset].x).norm());

  if (!series.deltas.empty() &&
      series.deltas.front() >
          1e-12 * (1.0 + reference.samples.front().x.norm()))
    fail("invalid-pairing",
         "Delta_0 != 0: the reference does not start where the convention "
         "requires");
  return series;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    fail("cannot-fit", "slope fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) fail("cannot-fit", "degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

LocalOrderFit local_order(const std::function<ModelParams(double)>& family,
                          const Objective& obj, const PhaseState& init,
                          const std::vector<double>& s_grid, Method scheme) {
  if (s_grid.size() < 4)
    fail("insufficient-grid", "local order fit needs >= 4 grid points");
  if (scheme == Method::RK4)
    fail("invalid-config", "local order applies to EE and SIE");
  validate_state(init, obj);

  LocalOrderFit fit;
  std::vector<double> log_s, log_delta;
  for (const double s : s_grid) {
    if (!(s > 0.0)) fail("invalid-config", "grid entries must be > 0");
    const ModelParams params = family(s);
    const double h = std::sqrt(s) / 1000.0;

    Vector w1;
    PhaseState ref_init = init;
    if (scheme == Method::EE) {
      w1 = ee_step(params, s, init, obj).x;
    } else {
      const PhaseState first = sie_step(params, s, init, obj);
      // Delta_0 = 0 pins X(0) = x_1 while the discrete velocity stays v_0.
      ref_init = PhaseState{first.x, init.v};
      w1 = sie_step(params, s, first, obj).x;
    }
    // The discrete velocity lags the flow velocity by half a step; the
    // one-step orders are measured against the flow whose velocity starts
    // at the half-step-consistent point.
    const double rs = std::sqrt(s);
    ref_init.v =
        ref_init.v +
        rs / 2.0 * (obj.gradient(ref_init.x) - params.q * ref_init.v);
    const ReferenceSolution reference =
        reference_solution(params, obj, ref_init, s, 1, h);
    const double delta1 = (reference.samples[1].x - w1).norm();

    fit.s_values.push_back(s);
    fit.delta1.push_back(delta1);
    log_s.push_back(std::log(s));
    log_delta.push_back(std::log(delta1));
  }
  fit.slope = fit_slope(log_s, log_delta);
  return fit;
}

GlobalDecayResult global_decay_check(const ErrorSeries& series, double gamma,
                                     double s, double L) {
  if (series.s != s) fail("invalid-config", "series was built for another s");
  if (!(gamma > 0.0)) fail("invalid-config", "gamma must be > 0");
  const ConditionReport report =
      series.scheme == Method::SIE
          ? sie_conditions_ok(series.params, s, L)
          : ee_conditions_ok(series.params, s, L);
  if (!report.ok)
    fail("condition-violation",
         "decay bound does not apply: admissibility conditions fail");

  GlobalDecayResult result;
  const std::size_t count = series.deltas.size();
  if (count < 10) fail("cannot-fit", "series too short");
  result.burn_in = static_cast<int>(count / 5);

  // Entries near the numerical floor are excluded: once the trajectory and
  // the fine reference both sit at their fixed-point accuracy, the series
  // flattens at ~1e-12 of its peak and ratios there are noise.
  const double peak =
      *std::max_element(series.deltas.begin(), series.deltas.end());
  const double floor = 1e-11 * peak;
  const double bound = 1.0 / (1.0 + gamma * std::sqrt(s));

  double fitted_c = 0.0;
  double max_ratio = 0.0;
  bool ok = true;
  for (std::size_t k = static_cast<std::size_t>(result.burn_in); k < count;
       ++k) {
    const double delta = series.deltas[k];
    if (delta < floor) continue;
    fitted_c = std::max(
        fitted_c, delta * std::pow(1.0 + gamma * std::sqrt(s),
                                   static_cast<double>(k)));
    if (k + 1 < count && series.deltas[k + 1] >= floor) {
      const double ratio = series.deltas[k + 1] / delta;
      max_ratio = std::max(max_ratio, ratio);
      if (ratio > bound + 0.05) ok = false;
    }
  }
  result.fitted_c = fitted_c;
  result.max_tail_ratio = max_ratio;
  result.ok = ok && std::isfinite(fitted_c) && fitted_c > 0.0;
  return result;
}

std::vector<double> truncate_positive(const std::vector<double>& series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const double value : series) {
    if (!(value > 0.0)) break;
    out.push_back(value);
  }
  return out;
}

double empirical_rate(const std::vector<double>& f_gap, int burn_in) {
  if (burn_in < 0) fail("invalid-config", "burn_in must be >= 0");
  if (f_gap.size() < static_cast<std::size_t>(burn_in) + 50)
    fail("cannot-fit", "series needs at least burn_in + 50 entries");
  std::vector<double> ks, logs;
  for (std::size_t k = static_cast<std::size_t>(burn_in); k < f_gap.size();
       ++k) {
    if (!(f_gap[k] > 0.0))
      fail("cannot-fit",
           "nonpositive entry past burn-in (series likely hit the rounding "
           "floor; truncate first)");
    ks.push_back(static_cast<double>(k));
    logs.push_back(std::log(f_gap[k]));
  }
  return std::exp(fit_slope(ks, logs));
}

const char* stability_label_name(StabilityLabel label) {
  switch (label) {
    case StabilityLabel::CONVERGED:
      return "CONVERGED";
    case StabilityLabel::DIVERGED:
      return "DIVERGED";
    case StabilityLabel::NON_CONVERGENT:
      return "NON_CONVERGENT";
  }
  fail("invalid-config", "unknown stability label");
}

StabilityVerdict stability_classify(const Trajectory& trajectory) {
  StabilityVerdict verdict;
  if (trajectory.f_gap.empty()) {
    verdict.label = trajectory.terminated_early ? StabilityLabel::DIVERGED
                                                : StabilityLabel::NON_CONVERGENT;
    if (trajectory.terminated_early)
      verdict.divergence_step = trajectory.termination_step;
    return verdict;
  }
  verdict.final_f_gap = trajectory.f_gap.back();
  verdict.max_f_gap =
      *std::max_element(trajectory.f_gap.begin(), trajectory.f_gap.end());
  if (trajectory.terminated_early || verdict.final_f_gap > 1e6) {
    verdict.label = StabilityLabel::DIVERGED;
    verdict.divergence_step = trajectory.terminated_early
                                  ? trajectory.termination_step
                                  : trajectory.last_step;
  } else if (verdict.final_f_gap < 1e-8) {
    verdict.label = StabilityLabel::CONVERGED;
  } else {
    verdict.label = StabilityLabel::NON_CONVERGENT;
  }
  return verdict;
}

double spectral_radius_oracle(const ModelParams& params, double s,
                              Method scheme, double eigenvalue) {
  if (!(s > 0.0)) fail("invalid-config", "oracle needs s > 0");
  if (!(eigenvalue > 0.0)) fail("invalid-config", "oracle needs lambda > 0");
  if (scheme == Method::RK4)
    fail("invalid-config", "oracle covers EE and SIE");
  const double rs = std::sqrt(s);
  const double a = 1.0 - params.m * rs * eigenvalue;
  const double b = -params.n * rs;
  double c = rs * eigenvalue;
  double d = 1.0 - params.q * rs;
  if (scheme == Method::SIE) {
    // v+ = sqrt(s) lambda x+ + (1 - q sqrt(s)) v with x+ substituted.
    c = rs * eigenvalue * a;
    d = 1.0 - params.q * rs - params.n * s * eigenvalue;
  }
  const double trace = a + d;
  const double det = a * d - b * c;
  const double disc = trace * trace - 4.0 * det;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    return std::max(std::abs(trace + root), std::abs(trace - root)) / 2.0;
  }
  return std::sqrt(det);
}

}  // namespace gmflow
