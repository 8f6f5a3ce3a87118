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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "gmflow/analysis.hpp"
#include "gmflow/errors.hpp"
#include "gmflow/integrators.hpp"
#include "gmflow/objectives.hpp"
#include "test_support.hpp"

using namespace gmflow;
using gmflow::testing::CountingObjective;
using gmflow::testing::one_line_run;
using gmflow::testing::random_vector;
using gmflow::testing::relative_gap;
using gmflow::testing::ScalarQuadratic;

TEST_CASE("hand-evaluated EE and SIE steps in one dimension") {
  const ScalarQuadratic obj(1.0);
  const ModelParams params(1, 1, 1);
  const PhaseState state{Vector::Constant(1, 1.0), Vector::Zero(1)};

  const PhaseState ee = ee_step(params, 1.0, state, obj);
  CHECK(ee.x[0] == doctest::Approx(0.0));
  CHECK(ee.v[0] == doctest::Approx(1.0));

  const PhaseState sie = sie_step(params, 1.0, state, obj);
  CHECK(sie.x[0] == doctest::Approx(0.0));
  CHECK(sie.v[0] == doctest::Approx(0.0));
}

TEST_CASE("steppers hold the equilibrium fixed") {
  const auto obj = make_quadratic(5, 0.1, 1.0, 1);
  const ModelParams params(0.4, 0.8, 0.3);
  const PhaseState eq{obj.center(), Vector::Zero(5)};
  for (const PhaseState& next :
       {ee_step(params, 0.04, eq, obj), sie_step(params, 0.04, eq, obj),
        rk4_step(params, 0.01, eq, obj)}) {
    CHECK((next.x - eq.x).norm() == 0.0);
    CHECK(next.v.norm() == 0.0);
  }
}

TEST_CASE("n = 0 reduces both Euler schemes to gradient descent") {
  const auto obj = make_quadratic(4, 0.1, 1.0, 3);
  const ModelParams params(0.9, 0.0, 0.5);
  std::mt19937_64 rng(5);
  PhaseState a{obj.center() + random_vector(rng, 4), random_vector(rng, 4)};
  PhaseState b = a;
  const double s = 0.09;
  const double rs = std::sqrt(s);
  Vector gd = a.x;
  for (int k = 0; k < 100; ++k) {
    a = ee_step(params, s, a, obj);
    b = sie_step(params, s, b, obj);
    gd -= params.m * rs * obj.gradient(gd);
    CHECK((a.x - b.x).norm() == 0.0);
    CHECK((a.x - gd).norm() == 0.0);
  }
}

TEST_CASE("RK4 matches the exact gradient flow to fifth order") {
  const ScalarQuadratic obj(0.9);
  const ModelParams params(1.0, 0.0, 0.7);
  const PhaseState state{Vector::Constant(1, 1.0), Vector::Zero(1)};
  const PhaseState coarse = rk4_step(params, 0.1, state, obj);
  CHECK(std::abs(coarse.x[0] - std::exp(-0.9 * 0.1)) <= 1e-6);
  const PhaseState fine = rk4_step(params, 0.05, state, obj);
  CHECK(std::abs(fine.x[0] - std::exp(-0.9 * 0.05)) <= 1e-7);
}

TEST_CASE("halving the RK4 step cuts the same-time error about 16x") {
  const auto obj = make_quadratic(6, 0.1, 1.0, 7);
  const ModelParams params(0.5, 1.0, 0.4);
  std::mt19937_64 rng(9);
  const PhaseState init{obj.center() + random_vector(rng, 6),
                        random_vector(rng, 6)};
  const double h = 0.1;

  PhaseState reference = init;
  for (int i = 0; i < 10; ++i)
    reference = rk4_step(params, h / 10.0, reference, obj);

  const PhaseState one = rk4_step(params, h, init, obj);
  PhaseState two = rk4_step(params, h / 2.0, init, obj);
  two = rk4_step(params, h / 2.0, two, obj);

  const double err_one = (one.x - reference.x).norm();
  const double err_two = (two.x - reference.x).norm();
  const double ratio = err_one / err_two;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("RK4 one-step error scales with local order five") {
  const auto obj = make_quadratic(6, 0.1, 1.0, 7);
  const ModelParams params(0.5, 1.0, 0.4);
  std::mt19937_64 rng(15);
  const PhaseState init{obj.center() + random_vector(rng, 6),
                        random_vector(rng, 6)};
  std::vector<double> log_h, log_err;
  for (const double h : {0.05, 0.1, 0.2, 0.4}) {
    PhaseState reference = init;
    for (int i = 0; i < 20; ++i)
      reference = rk4_step(params, h / 20.0, reference, obj);
    const PhaseState coarse = rk4_step(params, h, init, obj);
    log_h.push_back(std::log(h));
    log_err.push_back(std::log((coarse.x - reference.x).norm() +
                               (coarse.v - reference.v).norm()));
  }
  const double slope = fit_slope(log_h, log_err);
  CHECK(slope == doctest::Approx(5.0).epsilon(0.06));
}

TEST_CASE("one-line coefficients recover the named recurrences") {
  const double s = 0.01;
  const double rs = std::sqrt(s);
  const double beta = 0.8;
  const double q = (1.0 - beta) / rs;

  const auto hb = one_line_coefficients(ModelParams(0.0, 1.0, q), s,
                                        Method::SIE);
  CHECK(hb.momentum == doctest::Approx(beta).epsilon(1e-14));
  CHECK(hb.grad == doctest::Approx(-s).epsilon(1e-14));
  CHECK(hb.prev_grad == doctest::Approx(0.0));

  const auto nag = one_line_coefficients(ModelParams(rs, beta, q), s,
                                         Method::SIE);
  CHECK(nag.momentum == doctest::Approx(beta).epsilon(1e-14));
  CHECK(nag.grad == doctest::Approx(-(1.0 + beta) * s).epsilon(1e-14));
  CHECK(nag.prev_grad == doctest::Approx(beta * s).epsilon(1e-14));

  CHECK_THROWS_WITH_AS(
      one_line_coefficients(ModelParams(1.0, 0.0, 1.0), s, Method::EE),
      doctest::Contains("degenerate-one-line"), Error);
}

TEST_CASE("integrate records states and diagnostics") {
  const auto obj = make_quadratic(4, 0.1, 1.0, 11);
  const ModelParams params(0.5, 0.5, 0.4);
  IntegrationConfig config;
  config.method = Method::SIE;
  config.s = 0.04;
  config.num_steps = 1;
  std::mt19937_64 rng(21);
  const PhaseState init{obj.center() + random_vector(rng, 4),
                        Vector::Zero(4)};
  const Trajectory trajectory = integrate(params, config, init, obj);
  CHECK(trajectory.states.size() == 2);
  CHECK(trajectory.f_gap.size() == 2);
  CHECK(trajectory.grad_norm.size() == 2);
  for (const double gap : trajectory.f_gap) CHECK(gap >= -1e-12);

  config.num_steps = 0;
  CHECK_THROWS_WITH_AS(integrate(params, config, init, obj),
                       doctest::Contains("invalid-config"), Error);
}

TEST_CASE("two-variable iteration matches the one-line recurrence") {
  const auto obj = make_quadratic(6, 0.01, 1.0, 7);
  const ModelParams params(0.5, 0.9, 0.2);
  std::mt19937_64 rng(25);
  const PhaseState init{obj.center() + random_vector(rng, 6),
                        random_vector(rng, 6, 0.3)};
  for (const Method scheme : {Method::EE, Method::SIE}) {
    IntegrationConfig config;
    config.method = scheme;
    config.s = 0.25;
    config.num_steps = 100;
    const Trajectory trajectory = integrate(params, config, init, obj);
    REQUIRE(trajectory.states.size() == 101);
    const auto xs = one_line_run(params, config.s, scheme,
                                 trajectory.states[0].x,
                                 trajectory.states[1].x, 101, obj);
    for (std::size_t k = 0; k < xs.size(); ++k)
      CHECK(relative_gap(xs[k], trajectory.states[k].x) <= 1e-12);
  }
}

TEST_CASE("divergent run terminates early with a recorded reason") {
  const auto obj = make_quadratic(2, 0.01, 1.0, 7);
  const ModelParams params(2.0, 0.5, 0.2);
  IntegrationConfig config;
  config.method = Method::SIE;
  config.s = 1.0;
  config.num_steps = 2000;
  std::mt19937_64 rng(31);
  const PhaseState init{
      obj.center() + obj.basis().col(0) + obj.basis().col(1),
      Vector::Zero(2)};
  const Trajectory trajectory = integrate(params, config, init, obj);
  CHECK(trajectory.terminated_early);
  CHECK(trajectory.termination_reason == "threshold");
  CHECK(trajectory.termination_step < 500);
}

TEST_CASE("EE and SIE drivers use one fresh gradient per step") {
  const auto quad = make_quadratic(4, 0.1, 1.0, 13);
  std::mt19937_64 rng(35);
  const PhaseState init{quad.center() + random_vector(rng, 4),
                        Vector::Zero(4)};
  const ModelParams params(0.5, 0.5, 0.4);
  for (const Method scheme : {Method::EE, Method::SIE}) {
    const CountingObjective counter(quad);
    IntegrationConfig config;
    config.method = scheme;
    config.s = 0.04;
    config.num_steps = 50;
    integrate(params, config, init, counter);
    CHECK(counter.gradient_calls() == 51);
  }
}

TEST_CASE("record stride keeps endpoints") {
  const auto obj = make_quadratic(4, 0.1, 1.0, 13);
  const ModelParams params(0.5, 0.5, 0.4);
  IntegrationConfig config;
  config.method = Method::EE;
  config.s = 0.01;
  config.num_steps = 105;
  config.record_stride = 10;
  std::mt19937_64 rng(37);
  const PhaseState init{obj.center() + random_vector(rng, 4),
                        Vector::Zero(4)};
  const Trajectory trajectory = integrate(params, config, init, obj);
  CHECK(trajectory.steps.front() == 0);
  CHECK(trajectory.steps.back() == 105);
  CHECK(trajectory.states.size() == 12);
  CHECK(trajectory.time_of(1) == doctest::Approx(10 * 0.1));
}

TEST_CASE("trajectory CSV carries the documented header") {
  const ScalarQuadratic obj(1.0);
  const ModelParams params(1.0, 0.0, 1.0);
  IntegrationConfig config;
  config.method = Method::EE;
  config.s = 0.25;
  config.num_steps = 3;
  const PhaseState init{Vector::Constant(1, 1.0), Vector::Zero(1)};
  const Trajectory trajectory = integrate(params, config, init, obj);
  std::ostringstream out;
  write_trajectory_csv(trajectory, out);
  const std::string text = out.str();
  CHECK(text.rfind("k,t,f_gap,grad_norm,v_norm\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
