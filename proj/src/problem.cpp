// Copyright 2026 The ppsgda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ppsgda/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "ppsgda/error.hpp"

namespace ppsgda {
namespace {

void CheckPoint(const LocalProblem& p, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != p.dimension()) {
    throw Error(ErrorCode::kDimensionError,
                "point of length " + std::to_string(x.size()) +
                    " for a problem of dimension " +
                    std::to_string(p.dimension()));
  }
}

void CheckDual(const LocalProblem& p, const Eigen::VectorXd& mu) {
  if (static_cast<std::size_t>(mu.size()) != p.constraint_count()) {
    throw Error(ErrorCode::kDimensionError,
                "dual vector of length " + std::to_string(mu.size()) +
                    " for " + std::to_string(p.constraint_count()) +
                    " constraints");
  }
}

}  // namespace

LocalProblem::LocalProblem(std::size_t dimension, DifferentiableFunction cost,
                           std::vector<DifferentiableFunction> constraints,
                           Box dual_box)
    : dimension_(dimension),
      cost_(std::move(cost)),
      constraints_(std::move(constraints)),
      dual_box_(std::move(dual_box)) {
  if (dual_box_.dimension() != constraints_.size()) {
    throw Error(ErrorCode::kDimensionError,
                "dual box dimension must equal the constraint count");
  }
}

double LocalProblem::Cost(const Eigen::VectorXd& x) const {
  return cost_.value(x);
}

Eigen::VectorXd LocalProblem::CostGradient(const Eigen::VectorXd& x) const {
  return cost_.gradient(x);
}

Eigen::VectorXd LocalProblem::Constraints(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g(static_cast<Eigen::Index>(constraints_.size()));
  for (std::size_t j = 0; j < constraints_.size(); ++j) {
    g[static_cast<Eigen::Index>(j)] = constraints_[j].value(x);
  }
  return g;
}

Eigen::MatrixXd LocalProblem::ConstraintJacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd jacobian(static_cast<Eigen::Index>(constraints_.size()),
                           static_cast<Eigen::Index>(dimension_));
  for (std::size_t j = 0; j < constraints_.size(); ++j) {
    jacobian.row(static_cast<Eigen::Index>(j)) =
        constraints_[j].gradient(x).transpose();
  }
  return jacobian;
}

double Lagrangian(const LocalProblem& p, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& mu) {
  CheckPoint(p, x);
  CheckDual(p, mu);
  double value = p.Cost(x);
  if (mu.size() > 0) value += mu.dot(p.Constraints(x));
  return value;
}

Eigen::VectorXd GradXLagrangian(const LocalProblem& p, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& mu) {
  CheckPoint(p, x);
  CheckDual(p, mu);
  Eigen::VectorXd gradient = p.CostGradient(x);
  if (mu.size() > 0) gradient += p.ConstraintJacobian(x).transpose() * mu;
  return gradient;
}

Eigen::VectorXd GradMuLagrangian(const LocalProblem& p,
                                 const Eigen::VectorXd& x) {
  CheckPoint(p, x);
  return p.Constraints(x);
}

double GlobalLagrangian(std::span<const LocalProblem> problems,
                        const Eigen::VectorXd& x,
                        std::span<const Eigen::VectorXd> mu) {
  if (problems.size() != mu.size()) {
    throw Error(ErrorCode::kDimensionError,
                "one dual vector per local problem expected");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    total += Lagrangian(problems[i], x, mu[i]);
  }
  return total;
}

StepSizeSchedule::StepSizeSchedule(double c, double gamma)
    : c_(c), gamma_(gamma) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidSchedule,
                "step-size constant c must be positive, got " +
                    std::to_string(c));
  }
  if (!(gamma > 0.5 && gamma <= 1.0)) {
    throw Error(ErrorCode::kInvalidSchedule,
                "step-size exponent gamma must lie in (0.5, 1], got " +
                    std::to_string(gamma));
  }
}

double StepSizeSchedule::operator()(std::size_t t) const {
  return c_ / std::pow(static_cast<double>(t) + 1.0, gamma_);
}

GradientBounds EstimateGradientBounds(std::span<const LocalProblem> problems,
                                      const ConvexSet& x_set,
                                      std::size_t samples, std::uint64_t seed) {
  if (samples == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one sample");
  }
  constexpr double kInflation = 1.5;
  std::mt19937_64 rng(seed);
  GradientBounds bounds;
  bounds.l_mu.assign(problems.size(), 0.0);
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const LocalProblem& p = problems[i];
    for (std::size_t k = 0; k < samples; ++k) {
      const Eigen::VectorXd x = x_set.Sample(rng);
      const Eigen::VectorXd mu = p.dual_box().Sample(rng);
      bounds.l_x = std::max(bounds.l_x, GradXLagrangian(p, x, mu).norm());
      if (p.constraint_count() > 0) {
        bounds.l_mu[i] = std::max(bounds.l_mu[i], GradMuLagrangian(p, x).norm());
      }
    }
    bounds.l_mu[i] *= kInflation;
  }
  bounds.l_x *= kInflation;
  return bounds;
}

}  // namespace ppsgda
