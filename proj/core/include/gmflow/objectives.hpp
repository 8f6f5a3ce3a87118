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

#ifndef GMFLOW_OBJECTIVES_HPP
#define GMFLOW_OBJECTIVES_HPP

#include <cstdint>
#include <memory>
#include <optional>

#include "gmflow/types.hpp"

namespace gmflow {

/// Smooth strongly-convex objective oracle with certified constants.
///
/// Implementations are immutable after construction; value() and gradient()
/// are safe to call concurrently from multiple threads.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Eigen::Index dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;

  /// Strong-convexity modulus (mu > 0).
  virtual double mu() const = 0;
  /// Gradient Lipschitz constant (L >= mu).
  virtual double lipschitz() const = 0;

  virtual std::optional<Vector> minimizer() const { return std::nullopt; }
  virtual std::optional<double> min_value() const { return std::nullopt; }

  /// value(x) - min_value. Throws "missing-minimizer" when the minimum is
  /// unknown.
  double f_gap(const Vector& x) const;
};

/// f(x) = 1/2 (x-c)^T H (x-c) with H = B diag(lambda) B^T.
///
/// min(eigenvalues) and max(eigenvalues) are the exact mu and L; the center
/// is the minimizer with f(c) = 0 and grad f(c) = 0 by construction.
class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(Vector eigenvalues, Matrix basis, Vector center);

  Eigen::Index dim() const override { return center_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double mu() const override { return eigenvalues_.minCoeff(); }
  double lipschitz() const override { return eigenvalues_.maxCoeff(); }
  std::optional<Vector> minimizer() const override { return center_; }
  std::optional<double> min_value() const override { return 0.0; }

  const Vector& eigenvalues() const { return eigenvalues_; }
  const Matrix& basis() const { return basis_; }
  const Vector& center() const { return center_; }
  const Matrix& hessian() const { return hessian_; }

 private:
  Vector eigenvalues_;
  Matrix basis_;
  Vector center_;
  Matrix hessian_;
};

/// l2-regularized logistic regression on a fixed dataset:
///   f(x) = (1/N) sum_i log(1 + exp(-y_i a_i^T x)) + (reg/2) ||x||^2.
///
/// mu = reg; L = sigma_max(data)^2 / (4N) + reg (the standard bound). The
/// minimizer is computed once at construction by gradient descent with step
/// 1/L down to ||grad|| <= 1e-12 and cached.
class LogisticObjective final : public Objective {
 public:
  LogisticObjective(Matrix data, Vector labels, double reg);

  /// Reconstructs from a serialized document, reusing the cached minimizer
  /// instead of re-solving. The cache is validated against the gradient.
  static LogisticObjective from_cached(Matrix data, Vector labels, double reg,
                                       Vector minimizer, double min_value);

  Eigen::Index dim() const override { return data_.cols(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double mu() const override { return reg_; }
  double lipschitz() const override { return lipschitz_; }
  std::optional<Vector> minimizer() const override { return minimizer_; }
  std::optional<double> min_value() const override { return min_value_; }

  const Matrix& data() const { return data_; }
  const Vector& labels() const { return labels_; }
  double reg() const { return reg_; }

 private:
  struct SkipSolveTag {};
  LogisticObjective(Matrix data, Vector labels, double reg, SkipSolveTag);

  Matrix data_;
  Vector labels_;
  double reg_;
  double lipschitz_;
  Vector minimizer_;
  double min_value_;
};

/// Seeded random quadratic with spectrum endpoints pinned at mu and L,
/// interior eigenvalues uniform on [mu, L], a random orthonormal basis and a
/// center with entries in [-1, 1]. The same seed gives a bit-identical
/// objective.
QuadraticObjective make_quadratic(Eigen::Index dim, double mu, double L,
                                  std::uint64_t seed);

/// Seeded random logistic-regression objective: standard-normal features,
/// labels uniform on {-1, +1}.
LogisticObjective make_logistic(Eigen::Index dim, Eigen::Index samples,
                                double reg, std::uint64_t seed);

/// Max over coordinates of
///   |central difference - gradient component| / (1 + |gradient component|).
double grad_check(const Objective& obj, const Vector& x, double h);

}  // namespace gmflow

#endif  // GMFLOW_OBJECTIVES_HPP
