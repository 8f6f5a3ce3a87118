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

#ifndef GMFLOW_ERRORS_HPP
#define GMFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace gmflow {

/// Library error carrying a stable machine-readable code alongside the
/// human-readable message. Codes are kebab-case, e.g. "invalid-constants",
/// "missing-minimizer", "undefined-rate".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& what) {
  throw Error(std::move(code), what);
}

}  // namespace gmflow

#endif  // GMFLOW_ERRORS_HPP
