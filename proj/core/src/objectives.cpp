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

#include "gmflow/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "gmflow/errors.hpp"

namespace gmflow {

namespace {

// softplus(t) = log(1 + exp(t)), evaluated without overflow.
double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// Logistic sigmoid 1 / (1 + exp(-t)), evaluated without overflow.
double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

void check_dim(const Objective& obj, const Vector& x) {
  if (x.size() != obj.dim())
    fail("invalid-state", "vector dimension " + std::to_string(x.size()) +
                              " does not match objective dimension " +
                              std::to_string(obj.dim()));
}

}  // namespace

double Objective::f_gap(const Vector& x) const {
  const auto fstar = min_value();
  if (!fstar) fail("missing-minimizer", "objective has no known minimum");
  return value(x) - *fstar;
}

QuadraticObjective::QuadraticObjective(Vector eigenvalues, Matrix basis,
                                       Vector center)
    : eigenvalues_(std::move(eigenvalues)),
      basis_(std::move(basis)),
      center_(std::move(center)) {
  const Eigen::Index d = center_.size();
  if (d < 2) fail("invalid-dimension", "quadratic objective needs dim >= 2");
  if (eigenvalues_.size() != d || basis_.rows() != d || basis_.cols() != d)
    fail("invalid-dimension", "eigenvalues/basis/center sizes disagree");
  if (eigenvalues_.minCoeff() <= 0.0)
    fail("invalid-constants", "eigenvalues must be positive");
  hessian_ = basis_ * eigenvalues_.asDiagonal() * basis_.transpose();
  hessian_ = 0.5 * (hessian_ + hessian_.transpose().eval());
}

double QuadraticObjective::value(const Vector& x) const {
  check_dim(*this, x);
  const Vector d = x - center_;
  return 0.5 * d.dot(hessian_ * d);
}

Vector QuadraticObjective::gradient(const Vector& x) const {
  check_dim(*this, x);
  return hessian_ * (x - center_);
}

LogisticObjective::LogisticObjective(Matrix data, Vector labels, double reg,
                                     SkipSolveTag)
    : data_(std::move(data)), labels_(std::move(labels)), reg_(reg) {
  if (reg_ <= 0.0) fail("invalid-constants", "regularization must be > 0");
  const Eigen::Index n = data_.rows();
  if (n < 1 || data_.cols() < 1)
    fail("invalid-dimension", "logistic objective needs data");
  if (labels_.size() != n)
    fail("invalid-dimension", "labels length does not match data rows");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (labels_[i] != 1.0 && labels_[i] != -1.0)
      fail("invalid-constants", "labels must be +1 or -1");
  }
  const double sigma_max =
      Eigen::JacobiSVD<Matrix>(data_).singularValues()(0);
  lipschitz_ = sigma_max * sigma_max / (4.0 * static_cast<double>(n)) + reg_;
}

LogisticObjective::LogisticObjective(Matrix data, Vector labels, double reg)
    : LogisticObjective(std::move(data), std::move(labels), reg,
                        SkipSolveTag{}) {
  // High-accuracy solve for the minimizer: plain gradient descent with step
  // 1/L until ||grad|| <= 1e-12.
  Vector x = Vector::Zero(data_.cols());
  const double step = 1.0 / lipschitz_;
  constexpr double kTol = 1e-12;
  constexpr long kMaxIter = 50'000'000;
  for (long it = 0;; ++it) {
    const Vector g = gradient(x);
    if (g.norm() <= kTol) break;
    if (it >= kMaxIter)
      fail("invalid-constants", "minimizer solve did not reach tolerance");
    x -= step * g;
  }
  minimizer_ = x;
  min_value_ = value(x);
}

LogisticObjective LogisticObjective::from_cached(Matrix data, Vector labels,
                                                 double reg, Vector minimizer,
                                                 double min_value) {
  LogisticObjective obj(std::move(data), std::move(labels), reg,
                        SkipSolveTag{});
  if (minimizer.size() != obj.dim())
    fail("invalid-dimension", "cached minimizer dimension mismatch");
  if (obj.gradient(minimizer).norm() > 1e-9)
    fail("invalid-config", "cached minimizer fails the gradient check");
  obj.minimizer_ = std::move(minimizer);
  obj.min_value_ = min_value;
  return obj;
}

double LogisticObjective::value(const Vector& x) const {
  check_dim(*this, x);
  const Vector margins = data_ * x;
  double total = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i)
    total += softplus(-labels_[i] * margins[i]);
  return total / static_cast<double>(margins.size()) +
         0.5 * reg_ * x.squaredNorm();
}

Vector LogisticObjective::gradient(const Vector& x) const {
  check_dim(*this, x);
  const Vector margins = data_ * x;
  Vector weights(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i)
    weights[i] = -labels_[i] * sigmoid(-labels_[i] * margins[i]);
  return data_.transpose() * weights / static_cast<double>(margins.size()) +
         reg_ * x;
}

QuadraticObjective make_quadratic(Eigen::Index dim, double mu, double L,
                                  std::uint64_t seed) {
  if (dim < 2) fail("invalid-dimension", "make_quadratic needs dim >= 2");
  if (!(mu > 0.0) || !(mu <= L))
    fail("invalid-constants", "make_quadratic needs 0 < mu <= L");

  std::mt19937_64 rng(seed);

  Vector eigenvalues(dim);
  eigenvalues[0] = mu;
  eigenvalues[dim - 1] = L;
  std::uniform_real_distribution<double> interior(mu, L);
  for (Eigen::Index i = 1; i + 1 < dim; ++i) eigenvalues[i] = interior(rng);
  std::sort(eigenvalues.begin(), eigenvalues.end());

  Matrix gaussian(dim, dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) gaussian(i, j) = normal(rng);
  const Eigen::HouseholderQR<Matrix> qr(gaussian);
  Matrix basis = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j)
    if (r(j, j) < 0.0) basis.col(j) *= -1.0;

  Vector center(dim);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (Eigen::Index i = 0; i < dim; ++i) center[i] = unit(rng);

  return QuadraticObjective(std::move(eigenvalues), std::move(basis),
                            std::move(center));
}

LogisticObjective make_logistic(Eigen::Index dim, Eigen::Index samples,
                                double reg, std::uint64_t seed) {
  if (dim < 1 || samples < 1)
    fail("invalid-dimension", "make_logistic needs dim >= 1, samples >= 1");
  if (reg <= 0.0) fail("invalid-constants", "make_logistic needs reg > 0");

  std::mt19937_64 rng(seed);
  Matrix data(samples, dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index i = 0; i < samples; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) data(i, j) = normal(rng);

  Vector labels(samples);
  std::uniform_int_distribution<int> coin(0, 1);
  for (Eigen::Index i = 0; i < samples; ++i)
    labels[i] = coin(rng) == 0 ? -1.0 : 1.0;

  return LogisticObjective(std::move(data), std::move(labels), reg);
}

double grad_check(const Objective& obj, const Vector& x, double h) {
  if (!(h > 0.0)) fail("invalid-constants", "grad_check needs h > 0");
  check_dim(obj, x);
  const Vector g = obj.gradient(x);
  double worst = 0.0;
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = obj.value(probe);
    probe[i] = x[i] - h;
    const double fm = obj.value(probe);
    probe[i] = x[i];
    if (!std::isfinite(fp) || !std::isfinite(fm))
      fail("non-finite-input", "objective value is not finite near x");
    const double cd = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::abs(cd - g[i]) / (1.0 + std::abs(g[i])));
  }
  return worst;
}

const char* method_name(Method method) {
  switch (method) {
    case Method::EE:
      return "EE";
    case Method::SIE:
      return "SIE";
    case Method::RK4:
      return "RK4";
  }
  fail("invalid-config", "unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "EE") return Method::EE;
  if (name == "SIE") return Method::SIE;
  if (name == "RK4") return Method::RK4;
  fail("invalid-config", "unknown method '" + name + "'");
}

}  // namespace gmflow
