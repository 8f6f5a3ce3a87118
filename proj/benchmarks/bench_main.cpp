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

#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "gmflow/analysis.hpp"
#include "gmflow/integrators.hpp"
#include "gmflow/lyapunov.hpp"
#include "gmflow/objectives.hpp"

namespace {

using namespace gmflow;

const QuadraticObjective& quadratic() {
  static const QuadraticObjective obj = make_quadratic(10, 0.01, 1.0, 7);
  return obj;
}

const LogisticObjective& logistic() {
  static const LogisticObjective obj = make_logistic(10, 50, 1e-4, 3);
  return obj;
}

PhaseState start_state(const Objective& obj) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector d(obj.dim());
  for (Eigen::Index i = 0; i < obj.dim(); ++i) d[i] = normal(rng);
  return {*obj.minimizer() + d, Vector::Zero(obj.dim())};
}

void BM_QuadraticGradient(benchmark::State& state) {
  const auto& obj = quadratic();
  const Vector x = start_state(obj).x;
  for (auto _ : state) benchmark::DoNotOptimize(obj.gradient(x));
}
BENCHMARK(BM_QuadraticGradient);

void BM_LogisticGradient(benchmark::State& state) {
  const auto& obj = logistic();
  const Vector x = start_state(obj).x;
  for (auto _ : state) benchmark::DoNotOptimize(obj.gradient(x));
}
BENCHMARK(BM_LogisticGradient);

void BM_EEStep(benchmark::State& state) {
  const auto& obj = quadratic();
  const ModelParams params(0.5, 0.9, 0.2);
  PhaseState phase = start_state(obj);
  for (auto _ : state) {
    phase = ee_step(params, 0.25, phase, obj);
    benchmark::DoNotOptimize(phase.x.data());
  }
}
BENCHMARK(BM_EEStep);

void BM_SIEStep(benchmark::State& state) {
  const auto& obj = quadratic();
  const ModelParams params(0.5, 0.9, 0.2);
  PhaseState phase = start_state(obj);
  for (auto _ : state) {
    phase = sie_step(params, 0.25, phase, obj);
    benchmark::DoNotOptimize(phase.x.data());
  }
}
BENCHMARK(BM_SIEStep);

void BM_RK4Step(benchmark::State& state) {
  const auto& obj = quadratic();
  const ModelParams params(0.2, 1.0, 0.24);
  PhaseState phase = start_state(obj);
  for (auto _ : state) {
    phase = rk4_step(params, 1e-4, phase, obj);
    benchmark::DoNotOptimize(phase.x.data());
  }
}
BENCHMARK(BM_RK4Step);

void BM_Integrate1000(benchmark::State& state) {
  const auto& obj = quadratic();
  const ModelParams params(0.5, 0.9, 0.2);
  IntegrationConfig config;
  config.method = Method::SIE;
  config.s = 0.25;
  config.num_steps = 1000;
  const PhaseState init = start_state(obj);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(params, config, init, obj));
  }
}
BENCHMARK(BM_Integrate1000);

void BM_CertifyDecay(benchmark::State& state) {
  const auto& obj = quadratic();
  const ModelParams params(0.5, 0.9, 0.2);
  IntegrationConfig config;
  config.method = Method::SIE;
  config.s = 0.25;
  config.num_steps = 1000;
  const Trajectory trajectory =
      integrate(params, config, start_state(obj), obj);
  for (auto _ : state)
    benchmark::DoNotOptimize(certify_decay(trajectory, obj));
}
BENCHMARK(BM_CertifyDecay);

void BM_SpectralRadiusOracle(benchmark::State& state) {
  const ModelParams params(2.0, 0.5, 0.2);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        spectral_radius_oracle(params, 1.0, Method::SIE, 1.0));
}
BENCHMARK(BM_SpectralRadiusOracle);

}  // namespace

int main(int argc, char** argv) {
  ::benchmark::Initialize(&argc, argv);
  if (::benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  ::benchmark::RunSpecifiedBenchmarks();
  ::benchmark::Shutdown();
  return 0;
}
