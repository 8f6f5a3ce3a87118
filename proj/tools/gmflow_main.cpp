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

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "gmflow/errors.hpp"

namespace {

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    gmflow::fail("invalid-config", "cannot read config file " + path);
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::parse_error& error) {
    gmflow::fail("invalid-config", std::string("bad JSON: ") + error.what());
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GM-ODE momentum flows: simulation, rate certification and "
               "discretization analysis"};
  app.require_subcommand(1);

  std::string config_path;
  std::string figure;
  gmflow::cli::CliOptions options;
  std::uint64_t seed_value = 0;

  const auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* config_opt =
        sub->add_option("--config", config_path, "JSON config file");
    if (config_required) config_opt->required();
    sub->add_option("--out", options.out_dir, "output directory");
    auto* seed_opt =
        sub->add_option("--seed", seed_value, "override the init seed");
    seed_opt->each([&](const std::string&) { options.seed = seed_value; });
    sub->add_flag("--allow-divergence", options.allow_divergence,
                  "exit 0 even when the run hits the divergence guard");
    return sub;
  };

  auto* simulate = add_common(
      app.add_subcommand("simulate", "run one trajectory"), true);
  auto* sweep = add_common(
      app.add_subcommand("sweep", "run a parameter sweep"), true);
  auto* map_params = add_common(
      app.add_subcommand("map-params", "print a mapped parameter triple"),
      true);
  auto* check = add_common(
      app.add_subcommand("check-conditions", "evaluate admissibility"), true);
  auto* truncation = add_common(
      app.add_subcommand("truncation-order", "fit local error orders"), true);
  auto* rate = add_common(
      app.add_subcommand("rate-check", "certify decay and error rates"), true);
  auto* reproduce = add_common(
      app.add_subcommand("reproduce", "regenerate a figure bundle"), false);
  reproduce->add_option("--figure", figure, "fig2, fig3 or fig4");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed())
      return gmflow::cli::cmd_simulate(load_config(config_path), options);
    if (sweep->parsed())
      return gmflow::cli::cmd_sweep(load_config(config_path), options);
    if (map_params->parsed())
      return gmflow::cli::cmd_map_params(load_config(config_path), options);
    if (check->parsed())
      return gmflow::cli::cmd_check_conditions(load_config(config_path),
                                               options);
    if (truncation->parsed())
      return gmflow::cli::cmd_truncation_order(load_config(config_path),
                                               options);
    if (rate->parsed())
      return gmflow::cli::cmd_rate_check(load_config(config_path), options);
    if (reproduce->parsed()) {
      if (figure.empty()) {
        if (config_path.empty())
          gmflow::fail("invalid-config",
                       "reproduce needs --figure or a config with one");
        figure = load_config(config_path).at("figure").get<std::string>();
      }
      return gmflow::cli::cmd_reproduce(figure, options);
    }
  } catch (const gmflow::Error& error) {
    std::cerr << "error: " << error.what() << std::endl;
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << std::endl;
    return 1;
  }
  return 1;
}
