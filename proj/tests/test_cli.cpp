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
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "gmflow/analysis.hpp"
#include "gmflow/model.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    const fs::path path = fs::temp_directory_path() / "gmflow_cli_tests";
    fs::remove_all(path);
    fs::create_directories(path);
    return path;
  }();
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CliResult run_cli(const std::string& args, const std::string& tag) {
  const fs::path out = work_dir() / (tag + ".out");
  const fs::path err = work_dir() / (tag + ".err");
  const std::string command = std::string(GMFLOW_CLI_PATH) + " " + args +
                              " > " + out.string() + " 2> " + err.string();
  const int raw = std::system(command.c_str());
  CliResult result;
  result.exit_code = WEXITSTATUS(raw);
  result.out = read_file(out);
  result.err = read_file(err);
  return result;
}

fs::path write_config(const std::string& name, const json& config) {
  const fs::path path = work_dir() / name;
  std::ofstream out(path);
  out << config.dump(2);
  return path;
}

// Parses one numeric CSV column (0-indexed), skipping the header.
std::vector<double> csv_column(const std::string& text, std::size_t column) {
  std::vector<double> values;
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string field;
    for (std::size_t c = 0; c <= column; ++c) std::getline(fields, field, ',');
    values.push_back(std::stod(field));
  }
  return values;
}

// Fitted decay exponent of f_gap(t): -slope of log f_gap against t past a
// 40% burn-in (long enough to average the oscillatory modes).
double decay_exponent(const std::vector<double>& t,
                      const std::vector<double>& f_gap) {
  std::vector<double> ts, logs;
  for (std::size_t i = t.size() * 2 / 5; i < t.size(); ++i) {
    if (!(f_gap[i] > 0.0)) break;
    ts.push_back(t[i]);
    logs.push_back(std::log(f_gap[i]));
  }
  return -gmflow::fit_slope(ts, logs);
}

json simulate_config() {
  return json{
      {"objective", {{"family", "quadratic"}, {"dim", 6}, {"mu", 0.01},
                     {"L", 1.0}, {"seed", 7}}},
      {"params", {{"m", 1.0}, {"n", 0.0}, {"q", 0.5}}},
      {"integration", {{"method", "EE"}, {"s", 1.0}, {"num_steps", 300}}},
      {"init", {{"seed", 4}}},
  };
}

}  // namespace

TEST_CASE("simulate: small-step gradient descent is monotone") {
  json config = simulate_config();
  const fs::path out_dir = work_dir() / "gd";
  const auto result = run_cli(
      "simulate --config " +
          write_config("gd.json", config).string() + " --out " +
          out_dir.string(),
      "gd");
  CHECK(result.exit_code == 0);
  const std::string csv = read_file(out_dir / "trajectory.csv");
  CHECK(csv.rfind("k,t,f_gap,grad_norm,v_norm", 0) == 0);
  const auto gaps = csv_column(csv, 2);
  for (std::size_t k = 0; k + 1 < gaps.size(); ++k)
    CHECK(gaps[k + 1] <= gaps[k] * (1.0 + 1e-12));
}

TEST_CASE("simulate: divergence exits 2 unless allowed") {
  json config{
      {"objective", {{"family", "quadratic"}, {"dim", 2}, {"mu", 0.01},
                     {"L", 1.0}, {"seed", 7}}},
      {"params", {{"m", 2.0}, {"n", 0.5}, {"q", 0.2}}},
      {"integration", {{"method", "SIE"}, {"s", 1.0}, {"num_steps", 2000}}},
      {"init", {{"seed", 1}}},
  };
  const fs::path path = write_config("diverge.json", config);
  const fs::path out_dir = work_dir() / "diverge";
  const auto strict = run_cli(
      "simulate --config " + path.string() + " --out " + out_dir.string(),
      "diverge");
  CHECK(strict.exit_code == 2);
  const json summary = json::parse(strict.out);
  CHECK(summary.at("verdict").at("label") == "DIVERGED");
  CHECK(summary.at("verdict").contains("divergence_step"));

  const auto relaxed = run_cli("simulate --allow-divergence --config " +
                                   path.string() + " --out " +
                                   out_dir.string(),
                               "diverge_ok");
  CHECK(relaxed.exit_code == 0);
}

TEST_CASE("simulate: invalid configs exit 1") {
  json no_seed = simulate_config();
  no_seed["objective"].erase("seed");
  const auto missing = run_cli(
      "simulate --config " + write_config("noseed.json", no_seed).string(),
      "noseed");
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("seed") != std::string::npos);

  json unknown = simulate_config();
  unknown["typo_key"] = 1;
  const auto rejected = run_cli(
      "simulate --config " + write_config("unknown.json", unknown).string(),
      "unknown");
  CHECK(rejected.exit_code == 1);
  CHECK(rejected.err.find("unknown key") != std::string::npos);
}

TEST_CASE("simulate: identical config and seed give identical bytes") {
  json config = simulate_config();
  const fs::path path = write_config("det.json", config);
  const fs::path dir_a = work_dir() / "det_a";
  const fs::path dir_b = work_dir() / "det_b";
  run_cli("simulate --config " + path.string() + " --out " + dir_a.string(),
          "det_a");
  run_cli("simulate --config " + path.string() + " --out " + dir_b.string(),
          "det_b");
  CHECK(read_file(dir_a / "trajectory.csv") ==
        read_file(dir_b / "trajectory.csv"));
  CHECK(read_file(dir_a / "summary.json") ==
        read_file(dir_b / "summary.json"));
}

TEST_CASE("sweep fans out runs and merges deterministically") {
  json config = simulate_config();
  config["params"] = {{"m", 0.5}, {"n", 0.9}, {"q", 0.2}};
  config["integration"] = {{"method", "SIE"}, {"s", 0.25},
                           {"num_steps", 400}};
  config["sweep"] = {{"parameter", "q"}, {"values", {0.1, 0.2, 0.4}}};
  const fs::path out_dir = work_dir() / "sweep";
  const auto result = run_cli(
      "sweep --config " + write_config("sweep.json", config).string() +
          " --out " + out_dir.string(),
      "sweep");
  CHECK(result.exit_code == 0);
  const std::string summary = read_file(out_dir / "sweep_summary.csv");
  CHECK(summary.rfind("index,value,verdict,final_f_gap,rho", 0) == 0);
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 4);
  for (int i = 0; i < 3; ++i)
    CHECK(fs::exists(out_dir / ("trajectory_" + std::to_string(i) + ".csv")));
  // The same sweep produces the same bytes.
  const fs::path again = work_dir() / "sweep_again";
  run_cli("sweep --config " + write_config("sweep.json", config).string() +
              " --out " + again.string(),
          "sweep_again");
  CHECK(read_file(again / "sweep_summary.csv") == summary);
}

TEST_CASE("map-params prints the EE image of the NAG-SIE row") {
  const json config{{"op", "sie-to-ee"},
                    {"params", {{"m", 0.1}, {"n", 0.8}, {"q", 2.0}}},
                    {"s", 0.01}};
  const auto result = run_cli(
      "map-params --config " + write_config("map.json", config).string(),
      "map");
  CHECK(result.exit_code == 0);
  const json triple = json::parse(result.out);
  CHECK(triple.at("m").get<double>() == doctest::Approx(0.18).epsilon(1e-13));
  CHECK(triple.at("n").get<double>() == doctest::Approx(0.64).epsilon(1e-13));
  CHECK(triple.at("q").get<double>() == 2.0);
}

TEST_CASE("check-conditions flags the HB violation") {
  const json config{{"params", {{"m", 0.0}, {"n", 1.0}, {"q", 0.2}}},
                    {"s", 0.25},
                    {"mu", 0.01},
                    {"L", 1.0},
                    {"scheme", "SIE"}};
  const auto result = run_cli(
      "check-conditions --config " +
          write_config("hb.json", config).string(),
      "hb");
  CHECK(result.exit_code == 1);
  const json report = json::parse(result.out);
  CHECK_FALSE(report.at("pass").get<bool>());
  CHECK(report.at("violations")[0].get<std::string>().find("m*sqrt(s)") !=
        std::string::npos);
}

TEST_CASE("truncation-order brackets the one-step error orders") {
  const json config{
      {"objective", {{"family", "quadratic"}, {"dim", 10}, {"mu", 0.01},
                     {"L", 1.0}, {"seed", 7}}},
      {"n", 1.0},
      {"q", 0.2},
      {"m_coeff", 1.0},
      {"s_grid", {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}},
      {"init", {{"seed", 17}, {"scale", 1.0}, {"v_scale", 0.5}}},
  };
  const fs::path out_dir = work_dir() / "trunc";
  const auto result = run_cli(
      "truncation-order --config " +
          write_config("trunc.json", config).string() + " --out " +
          out_dir.string(),
      "trunc");
  CHECK(result.exit_code == 0);
  const json slopes = json::parse(result.out).at("slopes");
  CHECK(slopes.at("SIE").get<double>() > 1.35);
  CHECK(slopes.at("SIE").get<double>() < 1.65);
  CHECK(slopes.at("EE").get<double>() > 0.85);
  CHECK(slopes.at("EE").get<double>() < 1.15);
  const std::string csv = read_file(out_dir / "truncation_SIE.csv");
  CHECK(csv.rfind("s,delta1", 0) == 0);
}

TEST_CASE("rate-check certifies the accelerated NAG tuning") {
  const json config{
      {"objective", {{"family", "quadratic"}, {"dim", 10}, {"mu", 0.01},
                     {"L", 1.0}, {"seed", 7}}},
      {"named", {{"family", "NAG"}, {"s", 0.25}, {"beta", 0.9}}},
      {"scheme", "SIE"},
      {"integration", {{"num_steps", 1500}}},
      {"init", {{"seed", 11}}},
  };
  const fs::path out_dir = work_dir() / "rate";
  const auto result = run_cli(
      "rate-check --config " + write_config("rate.json", config).string() +
          " --out " + out_dir.string(),
      "rate");
  CHECK(result.exit_code == 0);
  const json report = json::parse(result.out);
  CHECK(report.at("certificate").at("certified").get<bool>());
  CHECK(report.at("global_decay").at("ok").get<bool>());
  const std::string csv = read_file(out_dir / "error_series.csv");
  CHECK(csv.rfind("k,delta_k", 0) == 0);
}

TEST_CASE("reproduce fig4 emits the stability contrast") {
  const fs::path out_dir = work_dir() / "fig4";
  const auto result =
      run_cli("reproduce --figure fig4 --out " + out_dir.string(), "fig4");
  CHECK(result.exit_code == 0);
  const json bundle = json::parse(read_file(out_dir / "fig4_verdicts.json"));
  const json& verdicts = bundle.at("verdicts");
  CHECK(verdicts.at("left").at("SIE").at("label") == "CONVERGED");
  CHECK(verdicts.at("left").at("EE").at("label") == "NON_CONVERGENT");
  CHECK(verdicts.at("right").at("EE").at("label") == "CONVERGED");
  CHECK(verdicts.at("right").at("SIE").at("label") == "DIVERGED");
  CHECK(verdicts.at("left").at("EE").at("oracle_radius").at("lambda_L")
            .get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(verdicts.at("right").at("SIE").at("oracle_radius").at("lambda_L")
            .get<double>() == doctest::Approx(1.3105).epsilon(1e-3));
}

TEST_CASE("reproduce fig2 peaks at the closed-form q") {
  const fs::path out_dir = work_dir() / "fig2";
  const auto result =
      run_cli("reproduce --figure fig2 --out " + out_dir.string(), "fig2");
  CHECK(result.exit_code == 0);
  const json metadata = json::parse(read_file(out_dir / "fig2_metadata.json"));
  const auto values =
      metadata.at("panels").at("left").at("values").get<std::vector<double>>();
  REQUIRE(values.size() == 5);

  // The fitted decay exponent is maximized at the grid q closest to
  // optimal_q(0.2, 1, 0.01) (the grid contains that q itself).
  const double q_star = gmflow::optimal_q(0.2, 1.0, 0.01);
  std::size_t nearest = 0;
  double best_exponent = -1.0;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - q_star) <
        std::abs(values[nearest] - q_star))
      nearest = i;
    char name[64];
    std::snprintf(name, sizeof(name), "fig2_left_q%g.csv", values[i]);
    const std::string csv = read_file(out_dir / name);
    const double exponent =
        decay_exponent(csv_column(csv, 0), csv_column(csv, 1));
    if (exponent > best_exponent) {
      best_exponent = exponent;
      best_index = i;
    }
  }
  CHECK(best_index == nearest);
  CHECK(values[nearest] == doctest::Approx(q_star));
}

TEST_CASE("reproduce fig3 orders the QHM rates by a") {
  const fs::path out_dir = work_dir() / "fig3";
  const auto result =
      run_cli("reproduce --figure fig3 --out " + out_dir.string(), "fig3");
  CHECK(result.exit_code == 0);

  // Larger a within (0, 1/2] gives a faster fitted rate on the quadratic.
  std::vector<double> rhos;
  for (const char* name :
       {"fig3_quadratic_a0.1.csv", "fig3_quadratic_a0.25.csv",
        "fig3_quadratic_a0.5.csv"}) {
    const std::string csv = read_file(out_dir / name);
    auto gaps = csv_column(csv, 1);
    auto positive = gmflow::truncate_positive(gaps);
    // Keep the decaying segment above the rounding floor.
    const double floor = 1e-13 * positive.front();
    std::size_t cut = positive.size();
    for (std::size_t i = 0; i < positive.size(); ++i)
      if (positive[i] < floor) {
        cut = i;
        break;
      }
    positive.resize(cut);
    rhos.push_back(gmflow::empirical_rate(
        positive, static_cast<int>(positive.size() / 5)));
  }
  CHECK(rhos[0] > rhos[1]);
  CHECK(rhos[1] > rhos[2]);
}
