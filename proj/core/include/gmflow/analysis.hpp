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

#ifndef GMFLOW_ANALYSIS_HPP
#define GMFLOW_ANALYSIS_HPP

#include <functional>
#include <optional>
#include <vector>

#include "gmflow/integrators.hpp"
#include "gmflow/model.hpp"
#include "gmflow/objectives.hpp"

namespace gmflow {

/// Fine RK4 solution sampled on the discrete grid t = k sqrt(s).
struct ReferenceSolution {
  ModelParams params;
  double s = 0.0;
  double h = 0.0;
  std::vector<PhaseState> samples;
};

/// Integrates the flow with RK4 step h and subsamples every sqrt(s)/h steps.
/// Requires h <= sqrt(s)/100 with sqrt(s)/h an integer so samples align
/// exactly.
ReferenceSolution reference_solution(const ModelParams& params,
                                     const Objective& obj,
                                     const PhaseState& init, double s,
                                     int k_max, double h);

/// Per-step discretization errors Delta_k = ||X(k sqrt(s)) - w_k|| with
/// w_k = x_k for EE and w_k = x_{k+1} for SIE.
struct ErrorSeries {
  Method scheme = Method::EE;
  double s = 0.0;
  ModelParams params;
  std::vector<double> deltas;
  double reference_step = 0.0;
};

/// Initial condition the reference must start from so that Delta_0 = 0:
/// (x_0, v_0) for EE, (x_1, v_0) for SIE. Needs a stride-1 trajectory with
/// at least the states the convention reads.
PhaseState aligned_reference_init(const Trajectory& trajectory);

/// Pairs a reference with a discrete trajectory; refuses mismatched
/// params/s or a misaligned start.
ErrorSeries error_series(const ReferenceSolution& reference,
                         const Trajectory& trajectory);

struct LocalOrderFit {
  double slope = 0.0;
  std::vector<double> s_values;
  std::vector<double> delta1;
};

/// Fits the log-log slope of the one-step error Delta_1 against s across the
/// grid. The family callable supplies the parameters for each s (the local
/// order statement assumes m proportional to sqrt(s)). Each Delta_1 is
/// measured against a reference at h = sqrt(s)/1000.
LocalOrderFit local_order(const std::function<ModelParams(double)>& family,
                          const Objective& obj, const PhaseState& init,
                          const std::vector<double>& s_grid, Method scheme);

struct GlobalDecayResult {
  bool ok = false;
  /// Fitted constant max_k Delta_k (1 + gamma sqrt(s))^k past burn-in.
  double fitted_c = 0.0;
  double max_tail_ratio = 0.0;
  int burn_in = 0;
};

/// Verifies the exponential error decay Delta_k = O((1 + gamma sqrt(s))^-k):
/// fits C past burn-in and checks every tail ratio Delta_{k+1}/Delta_k
/// against 1/(1 + gamma sqrt(s)) + 0.05. Entries below the numerical floor
/// (1e-11 of the series maximum, the fine-reference accuracy scale) are
/// excluded from ratio checks. Refuses when the scheme's admissibility
/// conditions fail.
GlobalDecayResult global_decay_check(const ErrorSeries& series, double gamma,
                                     double s, double L);

/// Drops everything from the first nonpositive entry on; rate fits need a
/// strictly positive series.
std::vector<double> truncate_positive(const std::vector<double>& series);

/// Per-step factor rho = exp(slope of log series vs k) for k >= burn_in.
double empirical_rate(const std::vector<double>& f_gap, int burn_in);

enum class StabilityLabel { CONVERGED, DIVERGED, NON_CONVERGENT };

const char* stability_label_name(StabilityLabel label);

struct StabilityVerdict {
  StabilityLabel label = StabilityLabel::NON_CONVERGENT;
  double final_f_gap = 0.0;
  double max_f_gap = 0.0;
  std::optional<int> divergence_step;
};

/// DIVERGED when the run hit the divergence guard or the final f-gap exceeds
/// 1e6; CONVERGED when the final f-gap is below 1e-8; NON_CONVERGENT
/// otherwise.
StabilityVerdict stability_classify(const Trajectory& trajectory);

/// Spectral radius of the 2x2 per-eigenmode update matrix of the scheme on a
/// quadratic eigenvalue lambda:
///   EE:  [[1 - m sqrt(s) l, -n sqrt(s)], [sqrt(s) l, 1 - q sqrt(s)]]
///   SIE: same x row; v row composed with the updated x.
double spectral_radius_oracle(const ModelParams& params, double s,
                              Method scheme, double eigenvalue);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gmflow

#endif  // GMFLOW_ANALYSIS_HPP
