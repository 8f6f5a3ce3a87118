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

#ifndef GMFLOW_TOOLS_COMMANDS_HPP
#define GMFLOW_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace gmflow::cli {

struct CliOptions {
  std::string out_dir;  // overrides the config's output path when set
  std::optional<std::uint64_t> seed;  // overrides the init seed
  bool allow_divergence = false;
};

// Exit codes: 0 success, 1 invalid config or failed check, 2 divergence.
int cmd_simulate(const nlohmann::json& config, const CliOptions& options);
int cmd_sweep(const nlohmann::json& config, const CliOptions& options);
int cmd_map_params(const nlohmann::json& config, const CliOptions& options);
int cmd_check_conditions(const nlohmann::json& config,
                         const CliOptions& options);
int cmd_truncation_order(const nlohmann::json& config,
                         const CliOptions& options);
int cmd_rate_check(const nlohmann::json& config, const CliOptions& options);
int cmd_reproduce(const std::string& figure, const CliOptions& options);

}  // namespace gmflow::cli

#endif  // GMFLOW_TOOLS_COMMANDS_HPP
