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

#include "ppsgda/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppsgda/error.hpp"

namespace ppsgda {
namespace {

constexpr double kWeightTolerance = 1e-10;
constexpr double kResidualFloor = 1e-14;

}  // namespace

PushSumState PushSumState::Initial(const Eigen::MatrixXd& x0) {
  PushSumState state;
  state.x = x0;
  state.z = x0;
  state.y = Eigen::VectorXd::Ones(x0.rows());
  state.t = 0;
  return state;
}

PushSumState PushSumStep(const PushSumState& state, const PerronMatrix& p) {
  if (static_cast<std::size_t>(state.x.rows()) != p.size() ||
      state.y.size() != state.x.rows()) {
    throw Error(ErrorCode::kDimensionError,
                "push-sum state does not match the Perron matrix");
  }
  PushSumState next;
  next.y = p.entries * state.y;
  next.x = p.entries * state.x;
  next.z = next.y.cwiseInverse().asDiagonal() * next.x;
  next.t = state.t + 1;
  return next;
}

Eigen::MatrixXd QMatrix(const Eigen::VectorXd& y_next, const Eigen::VectorXd& y,
                        const PerronMatrix& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  if (y.size() != n || y_next.size() != n) {
    throw Error(ErrorCode::kDimensionError, "weight vectors must have length n");
  }
  if (y.minCoeff() <= 0.0 || y_next.minCoeff() <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "push-sum weights must be positive");
  }
  const double mismatch = (p.entries * y - y_next).lpNorm<Eigen::Infinity>();
  if (mismatch > kWeightTolerance) {
    throw Error(ErrorCode::kInconsistentWeights,
                "y_next differs from P y by " + std::to_string(mismatch));
  }
  return y_next.cwiseInverse().asDiagonal() * p.entries * y.asDiagonal();
}

WeightTrajectory::WeightTrajectory(const Eigen::MatrixXd& p) : p_(&p) {
  y_.push_back(Eigen::VectorXd::Ones(p.rows()));
}

Eigen::VectorXd WeightTrajectory::at(std::size_t t) {
  while (y_.size() <= t) y_.push_back(*p_ * y_.back());
  return y_[t];
}

Eigen::MatrixXd PhiProduct(const PerronMatrix& p, std::size_t s, std::size_t t) {
  if (s > t) {
    throw Error(ErrorCode::kInvalidRange,
                "Phi(t, s) needs s <= t, got s=" + std::to_string(s) +
                    " t=" + std::to_string(t));
  }
  PhiSequence sequence(p, s);
  while (sequence.t() < t) sequence.Advance();
  return sequence.current();
}

Eigen::MatrixXd PhiProductFromFactors(const PerronMatrix& p, std::size_t s,
                                      std::size_t t) {
  if (s > t) {
    throw Error(ErrorCode::kInvalidRange, "Phi(t, s) needs s <= t");
  }
  WeightTrajectory weights(p.entries);
  Eigen::MatrixXd product = QMatrix(weights.at(s + 1), weights.at(s), p);
  for (std::size_t r = s + 1; r <= t; ++r) {
    product = QMatrix(weights.at(r + 1), weights.at(r), p) * product;
  }
  return product;
}

PhiSequence::PhiSequence(const PerronMatrix& p, std::size_t s)
    : p_(&p), weights_(p.entries), s_(s), t_(s), power_(p.entries) {}

Eigen::MatrixXd PhiSequence::current() {
  const Eigen::VectorXd y_s = weights_.at(s_);
  const Eigen::VectorXd y_next = weights_.at(t_ + 1);
  return y_next.cwiseInverse().asDiagonal() * power_ * y_s.asDiagonal();
}

void PhiSequence::Advance() {
  power_ = p_->entries * power_;
  ++t_;
}

ProductLimitReport VerifyProductLimits(const PerronMatrix& p, std::size_t s,
                                std::size_t t_max, double tolerance) {
  if (t_max <= s) {
    throw Error(ErrorCode::kInvalidRange, "limit check needs t_max > s");
  }
  const auto n = static_cast<Eigen::Index>(p.size());
  WeightTrajectory weights(p.entries);
  const Eigen::MatrixXd limit =
      Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)) *
      weights.at(s).transpose();
  const Eigen::MatrixXd phi = PhiProduct(p, s, t_max);

  ProductLimitReport report;
  report.s = s;
  report.t_max = t_max;
  report.tolerance = tolerance;
  report.deviation = (phi - limit).cwiseAbs().maxCoeff();
  report.limit_row_sum_error =
      (limit.rowwise().sum().array() - 1.0).abs().maxCoeff();
  report.passed = report.deviation <= tolerance;
  return report;
}

double ColumnSpread(const Eigen::MatrixXd& phi) {
  const Eigen::RowVectorXd column_mean = phi.colwise().mean();
  return (phi.rowwise() - column_mean).cwiseAbs().maxCoeff();
}

MixingEstimate EstimateMixing(const PerronMatrix& p, std::size_t s,
                              std::size_t t_max) {
  if (t_max < s + 10) {
    throw Error(ErrorCode::kInvalidRange, "mixing fit needs t_max - s >= 10");
  }
  MixingEstimate estimate;
  PhiSequence sequence(p, s);
  for (std::size_t t = s + 1; t <= t_max; ++t) {
    sequence.Advance();
    estimate.residuals.push_back(ColumnSpread(sequence.current()));
  }

  // Usable prefix: everything before the residual first hits the floor.
  std::size_t usable = 0;
  while (usable < estimate.residuals.size() &&
         estimate.residuals[usable] >= kResidualFloor) {
    ++usable;
  }
  if (usable < 2) {
    throw Error(ErrorCode::kAlreadyMixed,
                "column spread fell below 1e-14 within " +
                    std::to_string(usable + 1) + " step(s)");
  }

  // Index k of residuals corresponds to t - s = k + 1.
  const std::size_t first = usable / 2;
  const std::size_t count = usable - first;
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t k = first; k < usable; ++k) {
    mean_x += static_cast<double>(k + 1);
    mean_y += std::log(estimate.residuals[k]);
  }
  mean_x /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = first; k < usable; ++k) {
    const double dx = static_cast<double>(k + 1) - mean_x;
    const double dy = std::log(estimate.residuals[k]) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  estimate.slope = sxy / sxx;
  estimate.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  estimate.fitted_points = count;
  estimate.lambda = std::exp(estimate.slope);

  // C is the smallest constant making C lambda^(t-s) an upper bound over
  // the whole usable range.
  double c = 0.0;
  for (std::size_t k = 0; k < usable; ++k) {
    const double steps = static_cast<double>(k + 1);
    c = std::max(c, std::exp(std::log(estimate.residuals[k]) -
                             steps * estimate.slope));
  }
  estimate.c = c;
  return estimate;
}

}  // namespace ppsgda
