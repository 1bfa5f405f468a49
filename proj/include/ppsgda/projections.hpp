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

// Exact Euclidean projections onto the sets the algorithm uses.

#ifndef PPSGDA_PROJECTIONS_HPP_
#define PPSGDA_PROJECTIONS_HPP_

#include <cstddef>
#include <random>

#include <Eigen/Core>

namespace ppsgda {

// A closed convex set with an exact projection.
class ConvexSet {
 public:
  virtual ~ConvexSet() = default;

  virtual std::size_t dimension() const = 0;
  virtual Eigen::VectorXd Project(const Eigen::VectorXd& u) const = 0;
  virtual bool Contains(const Eigen::VectorXd& x, double tolerance) const = 0;
  // A random member of the set; used for Monte Carlo bound estimation.
  virtual Eigen::VectorXd Sample(std::mt19937_64& rng) const = 0;
};

// {p : p >= 0, sum(p) = level}
class ScaledSimplex final : public ConvexSet {
 public:
  // Throws Error(kInvalidSet) for a negative level or d == 0.
  ScaledSimplex(std::size_t dimension, double level);

  double level() const { return level_; }

  std::size_t dimension() const override { return dimension_; }
  Eigen::VectorXd Project(const Eigen::VectorXd& u) const override;
  bool Contains(const Eigen::VectorXd& x, double tolerance) const override;
  // Uniform on the simplex (normalised exponentials).
  Eigen::VectorXd Sample(std::mt19937_64& rng) const override;

 private:
  std::size_t dimension_;
  double level_;
};

// {x : lower <= x <= upper}
class Box final : public ConvexSet {
 public:
  // Throws Error(kInvalidSet) if lower > upper anywhere or sizes differ.
  Box(Eigen::VectorXd lower, Eigen::VectorXd upper);
  // [0, upper]^m
  static Box Uniform(std::size_t m, double lower, double upper);

  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }

  std::size_t dimension() const override {
    return static_cast<std::size_t>(lower_.size());
  }
  Eigen::VectorXd Project(const Eigen::VectorXd& u) const override;
  bool Contains(const Eigen::VectorXd& x, double tolerance) const override;
  Eigen::VectorXd Sample(std::mt19937_64& rng) const override;

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

// Sort-and-threshold projection onto the scaled simplex, O(d log d).
Eigen::VectorXd ProjectSimplex(const Eigen::VectorXd& u,
                               const ScaledSimplex& set);

// Elementwise clamp.
Eigen::VectorXd ProjectBox(const Eigen::VectorXd& u, const Box& box);

// Reference projection by active-set enumeration: for every subset of
// coordinates pinned to zero, solve the equality-constrained least squares on
// the rest in closed form and keep the KKT point. Exponential in d; throws
// Error(kTooLarge) for d > 12.
Eigen::VectorXd QpOracleProject(const Eigen::VectorXd& u,
                                const ScaledSimplex& set);

}  // namespace ppsgda

#endif  // PPSGDA_PROJECTIONS_HPP_
