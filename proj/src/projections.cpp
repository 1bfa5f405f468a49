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

#include "ppsgda/projections.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ppsgda/error.hpp"

namespace ppsgda {

ScaledSimplex::ScaledSimplex(std::size_t dimension, double level)
    : dimension_(dimension), level_(level) {
  if (dimension == 0) {
    throw Error(ErrorCode::kInvalidSet, "simplex dimension must be positive");
  }
  if (!(level >= 0.0) || !std::isfinite(level)) {
    throw Error(ErrorCode::kInvalidSet,
                "simplex level must be finite and >= 0, got " +
                    std::to_string(level));
  }
}

Eigen::VectorXd ScaledSimplex::Project(const Eigen::VectorXd& u) const {
  return ProjectSimplex(u, *this);
}

bool ScaledSimplex::Contains(const Eigen::VectorXd& x, double tolerance) const {
  if (static_cast<std::size_t>(x.size()) != dimension_) return false;
  return x.minCoeff() >= -tolerance && std::abs(x.sum() - level_) <= tolerance;
}

Eigen::VectorXd ScaledSimplex::Sample(std::mt19937_64& rng) const {
  std::exponential_distribution<double> exp1(1.0);
  Eigen::VectorXd x(dimension_);
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = exp1(rng);
  return x * (level_ / x.sum());
}

Box::Box(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw Error(ErrorCode::kInvalidSet, "box bounds differ in length");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] <= upper_[i])) {
      throw Error(ErrorCode::kInvalidSet,
                  "box lower bound exceeds upper bound at coordinate " +
                      std::to_string(i));
    }
  }
}

Box Box::Uniform(std::size_t m, double lower, double upper) {
  const auto size = static_cast<Eigen::Index>(m);
  return Box(Eigen::VectorXd::Constant(size, lower),
             Eigen::VectorXd::Constant(size, upper));
}

Eigen::VectorXd Box::Project(const Eigen::VectorXd& u) const {
  return ProjectBox(u, *this);
}

bool Box::Contains(const Eigen::VectorXd& x, double tolerance) const {
  if (x.size() != lower_.size()) return false;
  return ((x - lower_).array() >= -tolerance).all() &&
         ((upper_ - x).array() >= -tolerance).all();
}

Eigen::VectorXd Box::Sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd x(lower_.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x[i] = lower_[i] + unit(rng) * (upper_[i] - lower_[i]);
  }
  return x;
}

Eigen::VectorXd ProjectSimplex(const Eigen::VectorXd& u,
                               const ScaledSimplex& set) {
  if (static_cast<std::size_t>(u.size()) != set.dimension()) {
    throw Error(ErrorCode::kDimensionError,
                "vector of length " + std::to_string(u.size()) +
                    " projected onto a simplex of dimension " +
                    std::to_string(set.dimension()));
  }
  const double level = set.level();
  std::vector<double> sorted(u.data(), u.data() + u.size());
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest k with sorted[k-1] - (prefix_k - level) / k > 0. k = 1 always
  // qualifies when level > 0; for level == 0 the threshold reduces to max(u).
  double prefix = 0.0;
  double threshold = sorted.front() - level;
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    prefix += sorted[k - 1];
    const double candidate = (prefix - level) / static_cast<double>(k);
    if (sorted[k - 1] - candidate > 0.0) threshold = candidate;
  }
  Eigen::VectorXd result = (u.array() - threshold).max(0.0).matrix();
  return result;
}

Eigen::VectorXd ProjectBox(const Eigen::VectorXd& u, const Box& box) {
  if (u.size() != box.lower().size()) {
    throw Error(ErrorCode::kDimensionError,
                "vector length does not match the box dimension");
  }
  return u.cwiseMax(box.lower()).cwiseMin(box.upper());
}

Eigen::VectorXd QpOracleProject(const Eigen::VectorXd& u,
                                const ScaledSimplex& set) {
  constexpr std::size_t kMaxDimension = 12;
  constexpr double kKktTolerance = 1e-12;
  const std::size_t d = set.dimension();
  if (d > kMaxDimension) {
    throw Error(ErrorCode::kTooLarge,
                "active-set enumeration supports d <= 12, got " +
                    std::to_string(d));
  }
  if (static_cast<std::size_t>(u.size()) != d) {
    throw Error(ErrorCode::kDimensionError, "vector length mismatch");
  }
  const double level = set.level();
  if (level == 0.0) return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));

  Eigen::VectorXd best;
  double best_distance = std::numeric_limits<double>::infinity();
  // Bit i of `free_mask` set: coordinate i is free, otherwise pinned to 0.
  for (std::uint32_t free_mask = 1; free_mask < (1u << d); ++free_mask) {
    double free_sum = 0.0;
    int free_count = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (free_mask & (1u << i)) {
        free_sum += u[static_cast<Eigen::Index>(i)];
        ++free_count;
      }
    }
    // Multiplier of the sum constraint; free coordinates shift by it.
    const double shift = (level - free_sum) / free_count;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    bool kkt = true;
    for (std::size_t i = 0; i < d && kkt; ++i) {
      const auto idx = static_cast<Eigen::Index>(i);
      if (free_mask & (1u << i)) {
        x[idx] = u[idx] + shift;
        kkt = x[idx] >= -kKktTolerance;
      } else {
        // Multiplier of x_i >= 0 must be nonnegative.
        kkt = -u[idx] - shift >= -kKktTolerance;
      }
    }
    if (!kkt) continue;
    x = x.cwiseMax(0.0);
    const double distance = (x - u).squaredNorm();
    if (distance < best_distance) {
      best_distance = distance;
      best = std::move(x);
    }
  }
  if (best.size() == 0) {
    throw Error(ErrorCode::kNotConverged, "no KKT point found by enumeration");
  }
  return best;
}

}  // namespace ppsgda
