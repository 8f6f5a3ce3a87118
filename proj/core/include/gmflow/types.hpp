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

#ifndef GMFLOW_TYPES_HPP
#define GMFLOW_TYPES_HPP

#include <string>

#include <Eigen/Core>

namespace gmflow {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Integration scheme. EE and SIE advance by sqrt(s) per step, RK4 by a raw
/// step h.
enum class Method { EE, SIE, RK4 };

const char* method_name(Method method);
Method method_from_name(const std::string& name);

}  // namespace gmflow

#endif  // GMFLOW_TYPES_HPP
