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

// Push-sum consensus and its row-stochastic matrix form.
//
// With y[0] = 1 and y[t+1] = P y[t], the de-biased push-sum estimates obey
// z[t+1] = Q[t] z[t] where
//
//   Q[t] = diag(y[t+1])^-1 P diag(y[t])
//
// is row-stochastic. Products Phi(t, s) = Q[t] ... Q[s] collapse to
// diag(y[t+1])^-1 P^(t+1-s) diag(y[s]), which is how they are computed here.

#ifndef PPSGDA_CONSENSUS_HPP_
#define PPSGDA_CONSENSUS_HPP_

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "ppsgda/graph.hpp"

namespace ppsgda {

// Row i of x and z belongs to agent i.
struct PushSumState {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::MatrixXd z;
  std::size_t t = 0;

  // x[0] = z[0] = x0, y[0] = 1.
  static PushSumState Initial(const Eigen::MatrixXd& x0);
};

PushSumState PushSumStep(const PushSumState& state, const PerronMatrix& p);

// Throws Error(kInconsistentWeights) if y_next differs from P y by more than
// 1e-10 in any entry, Error(kInvalidArgument) on non-positive weights.
Eigen::MatrixXd QMatrix(const Eigen::VectorXd& y_next, const Eigen::VectorXd& y,
                        const PerronMatrix& p);

// Caches the weight trajectory y[0] = 1, y[t+1] = P y[t].
class WeightTrajectory {
 public:
  explicit WeightTrajectory(const Eigen::MatrixXd& p);

  // Returned by value: later calls may grow the cache.
  Eigen::VectorXd at(std::size_t t);

 private:
  const Eigen::MatrixXd* p_;
  std::vector<Eigen::VectorXd> y_;
};

// Phi(t, s) through the closed form. Throws Error(kInvalidRange) if s > t.
Eigen::MatrixXd PhiProduct(const PerronMatrix& p, std::size_t s, std::size_t t);

// Phi(t, s) as the explicit ordered product Q[t] ... Q[s]. Kept for
// cross-validation of the closed form.
Eigen::MatrixXd PhiProductFromFactors(const PerronMatrix& p, std::size_t s,
                                      std::size_t t);

// Walks Phi(t, s) for t = s, s+1, ... without recomputing the matrix power.
class PhiSequence {
 public:
  PhiSequence(const PerronMatrix& p, std::size_t s);

  std::size_t t() const { return t_; }
  // Phi(t(), s)
  Eigen::MatrixXd current();
  void Advance();

 private:
  const PerronMatrix* p_;
  WeightTrajectory weights_;
  std::size_t s_;
  std::size_t t_;
  Eigen::MatrixXd power_;  // P^(t+1-s)
};

struct ProductLimitReport {
  std::size_t s = 0;
  std::size_t t_max = 0;
  double tolerance = 0.0;
  // max_ij |Phi(t_max, s)_ij - (1/n) y[s]_j|
  double deviation = 0.0;
  // max_i |sum_j ((1/n) 1 y[s]^T)_ij - 1|
  double limit_row_sum_error = 0.0;
  bool passed = false;
};

// Throws Error(kInvalidRange) unless t_max > s.
ProductLimitReport VerifyProductLimits(const PerronMatrix& p, std::size_t s,
                                std::size_t t_max, double tolerance);

// Column-spread residual max_ij |Phi_ij - (1/n) sum_k Phi_kj|.
double ColumnSpread(const Eigen::MatrixXd& phi);

struct MixingEstimate {
  double c = 0.0;
  double lambda = 0.0;
  // Fitted slope of log r(t) against t - s, and its coefficient of
  // determination over the fitted tail.
  double slope = 0.0;
  double r_squared = 0.0;
  std::size_t fitted_points = 0;
  // r(t) for t = s+1 .. t_max.
  std::vector<double> residuals;
};

// Fits log r(t) = log C + (t - s) log lambda by least squares over the tail
// half of the residuals above the 1e-14 floor. Throws Error(kInvalidRange)
// if t_max - s < 10 and Error(kAlreadyMixed) when fewer than two residuals
// sit above the floor.
MixingEstimate EstimateMixing(const PerronMatrix& p, std::size_t s,
                              std::size_t t_max);

}  // namespace ppsgda

#endif  // PPSGDA_CONSENSUS_HPP_
