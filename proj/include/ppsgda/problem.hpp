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

// Per-agent problem data: a private cost F_i, private inequality constraints
// g_i(x) <= 0 and the dual box M_i. The local Lagrangian is
//
//   L_i(x, mu) = F_i(x) + mu^T g_i(x).

#ifndef PPSGDA_PROBLEM_HPP_
#define PPSGDA_PROBLEM_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ppsgda/projections.hpp"

namespace ppsgda {

struct DifferentiableFunction {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

class LocalProblem {
 public:
  // Throws Error(kDimensionError) if the dual box dimension differs from the
  // number of constraints.
  LocalProblem(std::size_t dimension, DifferentiableFunction cost,
               std::vector<DifferentiableFunction> constraints, Box dual_box);

  std::size_t dimension() const { return dimension_; }
  std::size_t constraint_count() const { return constraints_.size(); }
  const Box& dual_box() const { return dual_box_; }

  double Cost(const Eigen::VectorXd& x) const;
  Eigen::VectorXd CostGradient(const Eigen::VectorXd& x) const;
  // (g_i1(x), ..., g_im(x))
  Eigen::VectorXd Constraints(const Eigen::VectorXd& x) const;
  // Row j is the gradient of g_ij.
  Eigen::MatrixXd ConstraintJacobian(const Eigen::VectorXd& x) const;

 private:
  std::size_t dimension_;
  DifferentiableFunction cost_;
  std::vector<DifferentiableFunction> constraints_;
  Box dual_box_;
};

// All three throw Error(kDimensionError) on mismatched sizes.
double Lagrangian(const LocalProblem& p, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& mu);
Eigen::VectorXd GradXLagrangian(const LocalProblem& p, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& mu);
// L_i is affine in mu, so this is g_i(x) whatever mu is.
Eigen::VectorXd GradMuLagrangian(const LocalProblem& p, const Eigen::VectorXd& x);

// Sum of local Lagrangians; mu[i] belongs to problems[i].
double GlobalLagrangian(std::span<const LocalProblem> problems,
                        const Eigen::VectorXd& x,
                        std::span<const Eigen::VectorXd> mu);

// alpha_t = c / (t + 1)^gamma for t = 0, 1, ...
class StepSizeSchedule {
 public:
  // Throws Error(kInvalidSchedule) unless c > 0 and gamma in (0.5, 1].
  StepSizeSchedule(double c, double gamma);

  double c() const { return c_; }
  double gamma() const { return gamma_; }
  double operator()(std::size_t t) const;

 private:
  double c_;
  double gamma_;
};

struct GradientBounds {
  double l_x = 0.0;
  std::vector<double> l_mu;  // one per agent
};

// Monte Carlo maximum of ||grad_x L_i|| and ||grad_mu L_i|| over samples drawn
// from X x M_i, inflated by 1.5. Deterministic in `seed`. Throws
// Error(kInvalidArgument) if samples == 0.
GradientBounds EstimateGradientBounds(std::span<const LocalProblem> problems,
                                      const ConvexSet& x_set,
                                      std::size_t samples, std::uint64_t seed);

}  // namespace ppsgda

#endif  // PPSGDA_PROBLEM_HPP_
