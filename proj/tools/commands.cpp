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

#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "experiment.hpp"
#include "gmflow/analysis.hpp"
#include "gmflow/errors.hpp"
#include "gmflow/integrators.hpp"
#include "gmflow/lyapunov.hpp"
#include "gmflow/mappings.hpp"
#include "gmflow/serialization.hpp"

namespace gmflow::cli {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path resolve_out_dir(const std::string& config_output,
                         const CliOptions& options) {
  fs::path dir = !options.out_dir.empty()
                     ? fs::path(options.out_dir)
                     : (!config_output.empty() ? fs::path(config_output)
                                               : fs::path("."));
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("invalid-config", "cannot open " + path.string());
  out << content;
}

std::string short_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

void apply_overrides(ExperimentConfig& config, const CliOptions& options) {
  if (options.seed) config.init.seed = *options.seed;
}

// Runs fn(i) for i in [0, count) on a small worker pool; any exception is
// rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (error) std::rethrow_exception(error);
}

json verdict_to_json(const StabilityVerdict& verdict) {
  json out{{"label", stability_label_name(verdict.label)},
           {"final_f_gap", verdict.final_f_gap},
           {"max_f_gap", verdict.max_f_gap}};
  if (verdict.divergence_step)
    out["divergence_step"] = *verdict.divergence_step;
  return out;
}

json conditions_to_json(const ConditionReport& report) {
  return json{{"pass", report.ok}, {"violations", report.violations}};
}

// Fitted per-step factor on the positive prefix of the f-gap series, with a
// 20% burn-in; null when the series is too short to fit.
json fitted_rho(const std::vector<double>& f_gap) {
  try {
    const auto positive = truncate_positive(f_gap);
    const int burn_in = static_cast<int>(positive.size() / 5);
    return empirical_rate(positive, burn_in);
  } catch (const Error&) {
    return nullptr;
  }
}

json rate_constants(const ModelParams& params, const Objective& obj,
                    double s, Method method) {
  json rates;
  try {
    rates["gamma1"] = gamma1(params, obj.mu());
  } catch (const Error&) {
    rates["gamma1"] = nullptr;
  }
  try {
    rates["gamma2"] = gamma2(params, obj.mu(), obj.lipschitz());
  } catch (const Error&) {
    rates["gamma2"] = nullptr;
  }
  if (method == Method::EE) {
    try {
      rates["gamma3"] = gamma3(params, obj.mu(), obj.lipschitz(), s);
    } catch (const Error&) {
      rates["gamma3"] = nullptr;
    }
  }
  return rates;
}

struct RunResult {
  ModelParams params;
  Trajectory trajectory;
  StabilityVerdict verdict;
};

RunResult run_experiment(const ExperimentConfig& config,
                         const Objective& obj) {
  RunResult result;
  result.params = config.resolved_params();
  result.trajectory = integrate(result.params, config.integration,
                                config.build_init(obj), obj);
  result.verdict = stability_classify(result.trajectory);
  return result;
}

json run_summary(const RunResult& result, const Objective& obj) {
  const Trajectory& trajectory = result.trajectory;
  json summary{
      {"method", method_name(trajectory.config.method)},
      {"s", trajectory.config.s},
      {"params", to_json(result.params)},
      {"verdict", verdict_to_json(result.verdict)},
      {"terminated_early", trajectory.terminated_early},
      {"rho", fitted_rho(trajectory.f_gap)},
      {"rates", rate_constants(result.params, obj, trajectory.config.s,
                               trajectory.config.method)},
  };
  if (trajectory.terminated_early)
    summary["termination_reason"] = trajectory.termination_reason;
  if (trajectory.config.method != Method::RK4) {
    summary["conditions"] = json{
        {"sie", conditions_to_json(sie_conditions_ok(
                    result.params, trajectory.config.s, obj.lipschitz()))}};
    try {
      summary["conditions"]["ee"] = conditions_to_json(ee_conditions_ok(
          result.params, trajectory.config.s, obj.lipschitz()));
    } catch (const Error&) {
      summary["conditions"]["ee"] = nullptr;
    }
  }
  return summary;
}

// Trajectory CSV with the optional energy column. The discrete energy E(k)
// reads one state ahead, so its column ends one row short.
std::string trajectory_csv(const Trajectory& trajectory, const Objective& obj,
                           const ModelParams& params) {
  std::vector<double> energy;
  bool with_energy = false;
  if (trajectory.config.method == Method::RK4) {
    with_energy = obj.minimizer().has_value();
    if (with_energy)
      for (const PhaseState& state : trajectory.states)
        energy.push_back(continuous_energy(params, state, obj));
  } else if (trajectory.config.record_stride == 1 &&
             obj.minimizer().has_value()) {
    try {
      energy = discrete_energy_series(trajectory, obj);
      with_energy = true;
    } catch (const Error&) {
      with_energy = false;
    }
  }

  std::ostringstream out;
  out << "k,t,f_gap,grad_norm,v_norm";
  if (with_energy) out << ",energy";
  out << '\n';
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
    out << trajectory.steps[i] << ',' << format_double(trajectory.time_of(i))
        << ','
        << (trajectory.f_gap.empty() ? ""
                                     : format_double(trajectory.f_gap[i]))
        << ',' << format_double(trajectory.grad_norm[i]) << ','
        << format_double(trajectory.states[i].v.norm());
    if (with_energy)
      out << ',' << (i < energy.size() ? format_double(energy[i]) : "");
    out << '\n';
  }
  return out.str();
}

}  // namespace

int cmd_simulate(const json& config_json, const CliOptions& options) {
  ExperimentConfig config = ExperimentConfig::parse(config_json);
  apply_overrides(config, options);
  const auto obj = config.objective.build();
  const RunResult result = run_experiment(config, *obj);

  const fs::path dir = resolve_out_dir(config.output, options);
  write_file(dir / "trajectory.csv",
             trajectory_csv(result.trajectory, *obj, result.params));
  const json summary = run_summary(result, *obj);
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << std::endl;

  if (result.trajectory.terminated_early && !options.allow_divergence)
    return 2;
  return 0;
}

int cmd_sweep(const json& config_json, const CliOptions& options) {
  if (!config_json.contains("sweep"))
    fail("invalid-config", "sweep needs a sweep block");
  const json& sweep = config_json.at("sweep");
  require_keys(sweep, {"parameter", "values"}, "sweep");
  const std::string parameter = sweep.at("parameter").get<std::string>();
  const std::vector<double> values =
      sweep.at("values").get<std::vector<double>>();
  if (values.empty()) fail("invalid-config", "sweep needs values");

  const ExperimentConfig base = ExperimentConfig::parse(config_json);
  const auto obj = base.objective.build();

  std::vector<ExperimentConfig> runs;
  for (const double value : values) {
    ExperimentConfig config = base;
    apply_overrides(config, options);
    if (parameter == "m" || parameter == "n" || parameter == "q") {
      if (!config.params)
        fail("invalid-config", "sweeping " + parameter + " needs params");
      ModelParams params = *config.params;
      if (parameter == "m") params = ModelParams(value, params.n, params.q);
      if (parameter == "n") params = ModelParams(params.m, value, params.q);
      if (parameter == "q") params = ModelParams(params.m, params.n, value);
      config.params = params;
    } else if (parameter == "s") {
      if (config.named) {
        config.named->s = value;
        config.named->validate();
      }
      config.integration.s = value;
    } else if (parameter == "beta" || parameter == "a" || parameter == "b") {
      if (!config.named)
        fail("invalid-config", "sweeping " + parameter + " needs named");
      if (parameter == "beta") config.named->beta = value;
      if (parameter == "a") config.named->a = value;
      if (parameter == "b") config.named->b = value;
      config.named->validate();
    } else {
      fail("invalid-config", "unknown sweep parameter '" + parameter + "'");
    }
    runs.push_back(std::move(config));
  }

  std::vector<RunResult> results(runs.size());
  parallel_for(runs.size(), [&](std::size_t i) {
    results[i] = run_experiment(runs[i], *obj);
  });

  const fs::path dir = resolve_out_dir(base.output, options);
  std::ostringstream summary;
  summary << "index,value,verdict,final_f_gap,rho\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    write_file(dir / ("trajectory_" + std::to_string(i) + ".csv"),
               trajectory_csv(results[i].trajectory, *obj, results[i].params));
    const json rho = fitted_rho(results[i].trajectory.f_gap);
    summary << i << ',' << format_double(values[i]) << ','
            << stability_label_name(results[i].verdict.label) << ','
            << format_double(results[i].verdict.final_f_gap) << ','
            << (rho.is_null() ? "" : format_double(rho.get<double>()))
            << '\n';
  }
  write_file(dir / "sweep_summary.csv", summary.str());
  std::cout << "wrote " << results.size() << " runs to " << dir.string()
            << std::endl;
  return 0;
}

int cmd_map_params(const json& config, const CliOptions&) {
  require_keys(config, {"op", "params", "s", "named", "scheme"}, "map-params");
  const std::string op = config.at("op").get<std::string>();
  ModelParams mapped;
  if (op == "sie-to-ee" || op == "ee-to-sie") {
    const ModelParams params = params_from_json(config.at("params"));
    const double s = config.at("s").get<double>();
    mapped = op == "sie-to-ee" ? sie_to_ee(params, s) : ee_to_sie(params, s);
  } else if (op == "named-to-gm") {
    const NamedOptimizerConfig named = named_from_json(config.at("named"));
    const Method scheme =
        config.contains("scheme")
            ? method_from_name(config.at("scheme").get<std::string>())
            : Method::SIE;
    mapped = named_to_gm(named, scheme);
  } else {
    fail("invalid-config", "unknown op '" + op + "'");
  }
  std::cout << to_json(mapped).dump(2) << std::endl;
  return 0;
}

int cmd_check_conditions(const json& config, const CliOptions&) {
  require_keys(config, {"params", "s", "mu", "L", "scheme"},
               "check-conditions");
  const ModelParams params = params_from_json(config.at("params"));
  const double s = config.at("s").get<double>();
  const double mu = config.at("mu").get<double>();
  const double L = config.at("L").get<double>();
  const Method scheme =
      config.contains("scheme")
          ? method_from_name(config.at("scheme").get<std::string>())
          : Method::SIE;
  if (scheme == Method::RK4)
    fail("invalid-config", "conditions apply to EE or SIE");

  const ConditionReport report = scheme == Method::SIE
                                     ? sie_conditions_ok(params, s, L)
                                     : ee_conditions_ok(params, s, L);
  json out{{"scheme", method_name(scheme)},
           {"pass", report.ok},
           {"violations", report.violations}};
  try {
    out["gamma1"] = gamma1(params, mu);
  } catch (const Error&) {
    out["gamma1"] = nullptr;
  }
  try {
    out["gamma2"] = gamma2(params, mu, L);
  } catch (const Error&) {
    out["gamma2"] = nullptr;
  }
  if (scheme == Method::EE) {
    try {
      out["gamma3"] = gamma3(params, mu, L, s);
    } catch (const Error&) {
      out["gamma3"] = nullptr;
    }
  }
  std::cout << out.dump(2) << std::endl;
  return report.ok ? 0 : 1;
}

int cmd_truncation_order(const json& config, const CliOptions& options) {
  require_keys(config,
               {"objective", "n", "q", "m_coeff", "s_grid", "schemes", "init",
                "output"},
               "truncation-order");
  const auto obj = ObjectiveConfig::parse(config.at("objective")).build();
  const double n = config.at("n").get<double>();
  const double q = config.at("q").get<double>();
  const double m_coeff =
      config.contains("m_coeff") ? config.at("m_coeff").get<double>() : 1.0;
  const std::vector<double> s_grid =
      config.at("s_grid").get<std::vector<double>>();

  std::vector<Method> schemes{Method::SIE, Method::EE};
  if (config.contains("schemes")) {
    schemes.clear();
    for (const auto& name : config.at("schemes"))
      schemes.push_back(method_from_name(name.get<std::string>()));
  }

  InitConfig init_config;
  init_config.v_scale = 0.5;
  if (config.contains("init")) init_config = InitConfig::parse(config.at("init"));
  if (options.seed) init_config.seed = *options.seed;

  std::mt19937_64 rng(init_config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  PhaseState init;
  init.x = Vector(obj->dim());
  for (Eigen::Index i = 0; i < obj->dim(); ++i)
    init.x[i] = init_config.scale * normal(rng);
  if (obj->minimizer()) init.x += *obj->minimizer();
  init.v = Vector(obj->dim());
  for (Eigen::Index i = 0; i < obj->dim(); ++i)
    init.v[i] = init_config.v_scale * normal(rng);
  if (init_config.x0) init.x = *init_config.x0;
  if (init_config.v0) init.v = *init_config.v0;

  const auto family = [m_coeff, n, q](double s) {
    return ModelParams(m_coeff * std::sqrt(s), n, q);
  };

  const fs::path dir = resolve_out_dir(
      config.contains("output") ? config.at("output").get<std::string>() : "",
      options);
  json slopes;
  for (const Method scheme : schemes) {
    const LocalOrderFit fit = local_order(family, *obj, init, s_grid, scheme);
    std::ostringstream csv;
    csv << "s,delta1\n";
    for (std::size_t i = 0; i < fit.s_values.size(); ++i)
      csv << format_double(fit.s_values[i]) << ','
          << format_double(fit.delta1[i]) << '\n';
    write_file(dir / (std::string("truncation_") + method_name(scheme) +
                      ".csv"),
               csv.str());
    slopes[method_name(scheme)] = fit.slope;
  }
  std::cout << json{{"slopes", slopes}}.dump(2) << std::endl;
  return 0;
}

int cmd_rate_check(const json& config_json, const CliOptions& options) {
  ExperimentConfig config = ExperimentConfig::parse(config_json);
  apply_overrides(config, options);
  if (config.integration.method == Method::RK4)
    fail("invalid-config", "rate-check applies to EE or SIE runs");
  if (config.integration.record_stride != 1)
    fail("invalid-config", "rate-check needs record_stride = 1");

  const auto obj = config.objective.build();
  const RunResult result = run_experiment(config, *obj);
  const Trajectory& trajectory = result.trajectory;

  const RateCertificate certificate = certify_decay(trajectory, *obj);

  const double s = trajectory.config.s;
  const double gamma =
      trajectory.config.method == Method::SIE
          ? gamma2(result.params, obj->mu(), obj->lipschitz())
          : gamma3(result.params, obj->mu(), obj->lipschitz(), s);
  const ReferenceSolution reference = reference_solution(
      result.params, *obj, aligned_reference_init(trajectory), s,
      trajectory.last_step - 1, std::sqrt(s) / 100.0);
  const ErrorSeries series = error_series(reference, trajectory);
  const GlobalDecayResult decay =
      global_decay_check(series, gamma, s, obj->lipschitz());

  const fs::path dir = resolve_out_dir(config.output, options);
  std::ostringstream csv;
  csv << "k,delta_k\n";
  for (std::size_t k = 0; k < series.deltas.size(); ++k)
    csv << k << ',' << format_double(series.deltas[k]) << '\n';
  write_file(dir / "error_series.csv", csv.str());

  const json out{
      {"gamma", gamma},
      {"certificate",
       json{{"gamma", certificate.gamma},
            {"per_step_bound", certificate.per_step_bound},
            {"violations", certificate.violations.size()},
            {"certified", certificate.certified()}}},
      {"global_decay", json{{"ok", decay.ok},
                            {"fitted_C", decay.fitted_c},
                            {"max_tail_ratio", decay.max_tail_ratio},
                            {"burn_in", decay.burn_in}}},
  };
  write_file(dir / "rate_check.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << std::endl;
  return certificate.certified() && decay.ok ? 0 : 1;
}

namespace {

void reproduce_fig2(const fs::path& dir) {
  const auto obj = make_quadratic(10, 0.01, 1.0, 7);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector displacement(10);
  for (Eigen::Index i = 0; i < 10; ++i) displacement[i] = normal(rng);
  const PhaseState init{obj.center() + displacement, Vector::Zero(10)};

  IntegrationConfig config;
  config.method = Method::RK4;
  config.rk4_step = 1e-4;
  config.num_steps = 1'000'000;  // T = 100
  config.record_stride = 100;

  const double q_star = optimal_q(0.2, 1.0, 0.01);
  struct Panel {
    const char* name;
    char swept;
    std::vector<double> values;
    double fixed_m, fixed_n, fixed_q;
  };
  const std::vector<Panel> panels{
      {"left", 'q', {0.05, 0.1, q_star, 0.5, 1.0}, 0.2, 1.0, 0.0},
      {"middle", 'm', {0.0, 0.1, 0.2, 0.5, 1.0}, 0.0, 0.1, 0.2},
      {"right", 'n', {0.1, 0.5, 1.0, 2.0, 4.0}, 0.2, 0.0, 0.2},
  };

  struct Job {
    std::string file;
    ModelParams params;
  };
  std::vector<Job> jobs;
  json metadata{{"objective",
                 json{{"family", "quadratic"}, {"dim", 10}, {"mu", 0.01},
                      {"L", 1.0}, {"seed", 7}}},
                {"rk4_step", 1e-4},
                {"horizon", 100.0},
                {"record_stride", 100}};
  for (const Panel& panel : panels) {
    json values = json::array();
    for (const double value : panel.values) {
      ModelParams params(panel.swept == 'm' ? value : panel.fixed_m,
                         panel.swept == 'n' ? value : panel.fixed_n,
                         panel.swept == 'q' ? value : panel.fixed_q);
      const std::string file = std::string("fig2_") + panel.name + "_" +
                               panel.swept + short_number(value) + ".csv";
      jobs.push_back({file, params});
      values.push_back(value);
    }
    metadata["panels"][panel.name] =
        json{{"swept", std::string(1, panel.swept)},
             {"values", values},
             {"fixed", json{{"m", panel.fixed_m},
                            {"n", panel.fixed_n},
                            {"q", panel.fixed_q}}}};
  }

  std::vector<std::string> outputs(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Trajectory trajectory = integrate(jobs[i].params, config, init, obj);
    std::ostringstream csv;
    csv << "t,f_gap\n";
    for (std::size_t k = 0; k < trajectory.states.size(); ++k)
      csv << format_double(trajectory.time_of(k)) << ','
          << format_double(trajectory.f_gap[k]) << '\n';
    outputs[i] = csv.str();
  });
  for (std::size_t i = 0; i < jobs.size(); ++i)
    write_file(dir / jobs[i].file, outputs[i]);
  write_file(dir / "fig2_metadata.json", metadata.dump(2) + "\n");
}

void reproduce_fig3(const fs::path& dir) {
  const std::vector<double> a_grid{0.1, 0.25, 0.5, 0.75, 0.9};
  json metadata{{"a_grid", a_grid}, {"s", 0.5}};

  struct Job {
    std::string file;
    NamedOptimizerConfig config;
    const Objective* obj;
    int steps;
  };
  const auto quad = make_quadratic(10, 0.01, 1.0, 7);
  const auto logistic = make_logistic(10, 50, 1e-4, 3);

  const double s = 0.5;
  const double b_quad = 1.0 - 2.0 * std::sqrt(0.01 * s);
  const double b_logit = 1.0 - 2.0 * std::sqrt(1e-4 * s);
  metadata["quadratic"] =
      json{{"mu", 0.01}, {"L", 1.0}, {"seed", 7}, {"b", b_quad},
           {"num_steps", 1000}};
  metadata["logistic"] = json{
      {"reg", 1e-4}, {"samples", 50}, {"seed", 3}, {"b", b_logit},
      {"num_steps", 2000}};

  std::vector<Job> jobs;
  for (const double a : a_grid) {
    jobs.push_back({"fig3_quadratic_a" + short_number(a) + ".csv",
                    NamedOptimizerConfig::quasi_hyperbolic(s, a, b_quad),
                    &quad, 1000});
    jobs.push_back({"fig3_logistic_a" + short_number(a) + ".csv",
                    NamedOptimizerConfig::quasi_hyperbolic(s, a, b_logit),
                    &logistic, 2000});
  }

  std::vector<std::string> outputs(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Objective& obj = *jobs[i].obj;
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector x0(obj.dim());
    for (Eigen::Index d = 0; d < obj.dim(); ++d) x0[d] = normal(rng);
    x0 += *obj.minimizer();
    const auto iterates = run_named(jobs[i].config, x0, jobs[i].steps, obj);
    std::ostringstream csv;
    csv << "k,f_gap\n";
    for (std::size_t k = 0; k < iterates.size(); ++k)
      csv << k << ',' << format_double(obj.f_gap(iterates[k])) << '\n';
    outputs[i] = csv.str();
  });
  for (std::size_t i = 0; i < jobs.size(); ++i)
    write_file(dir / jobs[i].file, outputs[i]);
  write_file(dir / "fig3_metadata.json", metadata.dump(2) + "\n");
}

void reproduce_fig4(const fs::path& dir) {
  const auto obj = make_quadratic(2, 0.01, 1.0, 7);
  const PhaseState init{obj.center() + obj.basis().col(0) + obj.basis().col(1),
                        Vector::Zero(2)};
  const ModelParams left(1.0, 1.0, 0.2);
  const ModelParams right(2.0, 0.5, 0.2);

  json verdicts;
  for (const auto& [panel, params] :
       {std::pair<const char*, ModelParams>{"left", left},
        std::pair<const char*, ModelParams>{"right", right}}) {
    for (const Method scheme : {Method::EE, Method::SIE}) {
      IntegrationConfig config;
      config.method = scheme;
      config.s = 1.0;
      config.num_steps = 2000;
      const Trajectory trajectory = integrate(params, config, init, obj);
      const StabilityVerdict verdict = stability_classify(trajectory);
      write_file(dir / (std::string("fig4_") + panel + "_" +
                        method_name(scheme) + ".csv"),
                 trajectory_csv(trajectory, obj, params));
      json entry = verdict_to_json(verdict);
      entry["oracle_radius"] =
          json{{"lambda_mu",
                spectral_radius_oracle(params, 1.0, scheme, 0.01)},
               {"lambda_L", spectral_radius_oracle(params, 1.0, scheme, 1.0)}};
      verdicts[panel][method_name(scheme)] = entry;
    }
  }
  json metadata{{"objective",
                 json{{"family", "quadratic"}, {"dim", 2}, {"mu", 0.01},
                      {"L", 1.0}, {"seed", 7}}},
                {"s", 1.0},
                {"num_steps", 2000},
                {"left", to_json(left)},
                {"right", to_json(right)},
                {"verdicts", verdicts}};
  write_file(dir / "fig4_verdicts.json", metadata.dump(2) + "\n");
}

}  // namespace

int cmd_reproduce(const std::string& figure, const CliOptions& options) {
  const fs::path dir = resolve_out_dir("", options);
  if (figure == "fig2") {
    reproduce_fig2(dir);
  } else if (figure == "fig3") {
    reproduce_fig3(dir);
  } else if (figure == "fig4") {
    reproduce_fig4(dir);
  } else {
    fail("invalid-config", "unknown figure '" + figure + "'");
  }
  std::cout << "wrote " << figure << " bundle to " << dir.string()
            << std::endl;
  return 0;
}

}  // namespace gmflow::cli
