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

// Economic dispatch:
//
//   min  sum_i a_i p_i^2 + b_i p_i + c_i
//   s.t. sum_i p_i = D,  p_min_i <= p_i <= p_max_i.
//
// The balance constraint (with p >= 0) is the shared set X; each generator's
// limits stay private and enter its local Lagrangian through the pair
// g_i(p) = (p_min_i - p_i, p_i - p_max_i).

#ifndef PPSGDA_DISPATCH_HPP_
#define PPSGDA_DISPATCH_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ppsgda/graph.hpp"
#include "ppsgda/problem.hpp"
#include "ppsgda/projections.hpp"
#include "ppsgda/pushsum_gda.hpp"

namespace ppsgda {

inline constexpr double kDefaultDualBoxUpper = 100.0;

class DispatchInstance {
 public:
  // Throws Error(kDimensionError) for ragged coefficient vectors,
  // Error(kNotStronglyConvex) if some a_i <= 0, Error(kInvalidArgument) for
  // limits outside 0 <= p_min <= p_max and Error(kInfeasibleDemand) unless
  // sum(p_min) <= D <= sum(p_max).
  static DispatchInstance Build(Eigen::VectorXd a, Eigen::VectorXd b,
                                Eigen::VectorXd c, double demand,
                                Eigen::VectorXd p_min, Eigen::VectorXd p_max);

  std::size_t size() const { return static_cast<std::size_t>(a_.size()); }
  const Eigen::VectorXd& a() const { return a_; }
  const Eigen::VectorXd& b() const { return b_; }
  const Eigen::VectorXd& c() const { return c_; }
  double demand() const { return demand_; }
  const Eigen::VectorXd& p_min() const { return p_min_; }
  const Eigen::VectorXd& p_max() const { return p_max_; }

  double Cost(std::size_t i, double p) const;
  double Objective(const Eigen::VectorXd& p) const;
  double MarginalCost(std::size_t i, double p) const { return 2.0 * a_[idx(i)] * p + b_[idx(i)]; }

  // Agent i's Lagrangian over the full estimate vector; the dual box is
  // [0, mu_upper]^2.
  LocalProblem LocalProblemFor(std::size_t i, double mu_upper) const;
  std::vector<LocalProblem> LocalProblems(double mu_upper) const;
  ScaledSimplex GlobalSet() const;

 private:
  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

  Eigen::VectorXd a_, b_, c_;
  double demand_ = 0.0;
  Eigen::VectorXd p_min_, p_max_;
};

struct DispatchOptimum {
  Eigen::VectorXd p_star;
  double lambda_star = 0.0;
  Eigen::VectorXd mu_min;  // multiplier of p_min_i - p_i <= 0
  Eigen::VectorXd mu_max;  // multiplier of p_i - p_max_i <= 0
  double objective = 0.0;

  // Per-agent dual pairs (mu_min_i, mu_max_i) in the local constraint order.
  std::vector<Eigen::VectorXd> DualPairs() const;
  OptimumReference AsReference() const;
};

// p_i(lambda) = clamp((lambda - b_i) / (2 a_i), p_min_i, p_max_i).
Eigen::VectorXd GenerationAt(const DispatchInstance& inst, double lambda);

// Lambda iteration: bisection on sum_i p_i(lambda) - D to width 1e-12, then an
// exact solve for lambda over the generators strictly inside their limits.
DispatchOptimum SolveCentralized(const DispatchInstance& inst);

struct KktResiduals {
  double stationarity = 0.0;        // max_i |2 a_i p_i + b_i - lambda - mu_min_i + mu_max_i|
  double primal_violation = 0.0;    // max(|sum p - D|, limit violations)
  double dual_negativity = 0.0;     // max(0, -mu)
  double complementarity = 0.0;     // max |mu * g|

  double Max() const;
};

KktResiduals ComputeKktResiduals(const DispatchInstance& inst,
                                 const Eigen::VectorXd& p, double lambda,
                                 const Eigen::VectorXd& mu_min,
                                 const Eigen::VectorXd& mu_max);

// Exact gradient bounds over X x [0, mu_upper]^2. Both gradient norms are
// maximised at a vertex of the interval p_i in [0, D] times the dual box.
GradientBounds CornerGradientBounds(const DispatchInstance& inst, double mu_upper);

struct Fig1Fixture {
  DispatchInstance instance;
  DirectedGraph graph;
  StepSizeSchedule schedule;
};

// Canonical four-generator setup: generators 1, 2, 4 end strictly inside their
// limits, generator 3 sits at its upper limit. Marginal costs all vanish at
// the optimum, so the balance multiplier is zero.
//
//   a = (0.15, 0.18, 0.12, 0.225)   b = (-1.05, -0.9, -0.6, -1.125)
//   c = (2.0, 1.5, 1.0, 1.8)        D = 10
//   p_min = 0.5 each                p_max = (5, 5, 1.5, 5)
//   p* = (3.5, 2.5, 1.5, 2.5)       mu*_3,max = 0.24
//
// Graph: ring 1->2->3->4->1 plus the chord 1->3. Schedule: 15 / (t+1)^0.6.
Fig1Fixture MakeFig1Fixture();

}  // namespace ppsgda

#endif  // PPSGDA_DISPATCH_HPP_
