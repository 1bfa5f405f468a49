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

#include "ppsgda/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppsgda/error.hpp"

namespace ppsgda {
namespace {

constexpr double kBisectionWidth = 1e-12;

enum class Regime { kAtMin, kFree, kAtMax };

Regime Classify(const DispatchInstance& inst, std::size_t i, double lambda) {
  const auto k = static_cast<Eigen::Index>(i);
  const double unclamped = (lambda - inst.b()[k]) / (2.0 * inst.a()[k]);
  if (unclamped <= inst.p_min()[k]) return Regime::kAtMin;
  if (unclamped >= inst.p_max()[k]) return Regime::kAtMax;
  return Regime::kFree;
}

}  // namespace

DispatchInstance DispatchInstance::Build(Eigen::VectorXd a, Eigen::VectorXd b,
                                         Eigen::VectorXd c, double demand,
                                         Eigen::VectorXd p_min,
                                         Eigen::VectorXd p_max) {
  const Eigen::Index n = a.size();
  if (n == 0 || b.size() != n || c.size() != n || p_min.size() != n ||
      p_max.size() != n) {
    throw Error(ErrorCode::kDimensionError,
                "dispatch coefficient vectors must share a positive length");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(a[i] > 0.0)) {
      throw Error(ErrorCode::kNotStronglyConvex,
                  "generator " + std::to_string(i + 1) +
                      " has non-positive quadratic coefficient " +
                      std::to_string(a[i]));
    }
    if (!(p_min[i] >= 0.0 && p_min[i] <= p_max[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "generator " + std::to_string(i + 1) +
                      " needs 0 <= p_min <= p_max");
    }
  }
  if (!std::isfinite(demand) || p_min.sum() > demand || demand > p_max.sum()) {
    throw Error(ErrorCode::kInfeasibleDemand,
                "demand " + std::to_string(demand) + " outside [" +
                    std::to_string(p_min.sum()) + ", " +
                    std::to_string(p_max.sum()) + "]");
  }
  DispatchInstance inst;
  inst.a_ = std::move(a);
  inst.b_ = std::move(b);
  inst.c_ = std::move(c);
  inst.demand_ = demand;
  inst.p_min_ = std::move(p_min);
  inst.p_max_ = std::move(p_max);
  return inst;
}

double DispatchInstance::Cost(std::size_t i, double p) const {
  const Eigen::Index k = idx(i);
  return a_[k] * p * p + b_[k] * p + c_[k];
}

double DispatchInstance::Objective(const Eigen::VectorXd& p) const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += Cost(i, p[idx(i)]);
  return total;
}

LocalProblem DispatchInstance::LocalProblemFor(std::size_t i,
                                               double mu_upper) const {
  const Eigen::Index k = idx(i);
  const Eigen::Index n = a_.size();
  const double a = a_[k], b = b_[k], c = c_[k];
  const double lo = p_min_[k], hi = p_max_[k];

  DifferentiableFunction cost{
      [=](const Eigen::VectorXd& p) { return a * p[k] * p[k] + b * p[k] + c; },
      [=](const Eigen::VectorXd& p) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
        g[k] = 2.0 * a * p[k] + b;
        return g;
      }};
  DifferentiableFunction lower_limit{
      [=](const Eigen::VectorXd& p) { return lo - p[k]; },
      [=](const Eigen::VectorXd&) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
        g[k] = -1.0;
        return g;
      }};
  DifferentiableFunction upper_limit{
      [=](const Eigen::VectorXd& p) { return p[k] - hi; },
      [=](const Eigen::VectorXd&) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
        g[k] = 1.0;
        return g;
      }};
  return LocalProblem(size(), std::move(cost), {lower_limit, upper_limit},
                      Box::Uniform(2, 0.0, mu_upper));
}

std::vector<LocalProblem> DispatchInstance::LocalProblems(double mu_upper) const {
  std::vector<LocalProblem> problems;
  problems.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    problems.push_back(LocalProblemFor(i, mu_upper));
  }
  return problems;
}

ScaledSimplex DispatchInstance::GlobalSet() const {
  return ScaledSimplex(size(), demand_);
}

std::vector<Eigen::VectorXd> DispatchOptimum::DualPairs() const {
  std::vector<Eigen::VectorXd> pairs;
  for (Eigen::Index i = 0; i < mu_min.size(); ++i) {
    pairs.push_back(Eigen::Vector2d(mu_min[i], mu_max[i]));
  }
  return pairs;
}

OptimumReference DispatchOptimum::AsReference() const {
  return {p_star, DualPairs()};
}

Eigen::VectorXd GenerationAt(const DispatchInstance& inst, double lambda) {
  Eigen::VectorXd p =
      ((lambda - inst.b().array()) / (2.0 * inst.a().array())).matrix();
  return p.cwiseMax(inst.p_min()).cwiseMin(inst.p_max());
}

DispatchOptimum SolveCentralized(const DispatchInstance& inst) {
  const std::size_t n = inst.size();
  const Eigen::ArrayXd marginal_at_max =
      2.0 * inst.a().array() * inst.p_max().array() + inst.b().array();
  double lo = inst.b().minCoeff() - 1.0;
  double hi = marginal_at_max.maxCoeff() + 1.0;
  const double demand = inst.demand();
  if (GenerationAt(inst, lo).sum() > demand || GenerationAt(inst, hi).sum() < demand) {
    throw Error(ErrorCode::kInfeasibleDemand, "lambda bracket does not enclose the demand");
  }
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (GenerationAt(inst, mid).sum() < demand) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double lambda = 0.5 * (lo + hi);

  // Solve sum_i p_i = D exactly over the free generators.
  std::vector<Regime> regime(n);
  double fixed = 0.0, inverse_slope = 0.0, offset = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    regime[i] = Classify(inst, i, lambda);
    switch (regime[i]) {
      case Regime::kAtMin: fixed += inst.p_min()[k]; break;
      case Regime::kAtMax: fixed += inst.p_max()[k]; break;
      case Regime::kFree:
        inverse_slope += 1.0 / (2.0 * inst.a()[k]);
        offset += inst.b()[k] / (2.0 * inst.a()[k]);
        break;
    }
  }
  if (inverse_slope > 0.0) lambda = (demand - fixed + offset) / inverse_slope;

  DispatchOptimum opt;
  opt.lambda_star = lambda;
  opt.p_star.resize(static_cast<Eigen::Index>(n));
  opt.mu_min = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  opt.mu_max = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    switch (regime[i]) {
      case Regime::kAtMin: opt.p_star[k] = inst.p_min()[k]; break;
      case Regime::kAtMax: opt.p_star[k] = inst.p_max()[k]; break;
      case Regime::kFree:
        opt.p_star[k] = (lambda - inst.b()[k]) / (2.0 * inst.a()[k]);
        break;
    }
    const double marginal = inst.MarginalCost(i, opt.p_star[k]);
    if (opt.p_star[k] == inst.p_min()[k]) {
      opt.mu_min[k] = std::max(0.0, marginal - lambda);
    }
    if (opt.p_star[k] == inst.p_max()[k]) {
      opt.mu_max[k] = std::max(0.0, lambda - marginal);
    }
  }
  opt.objective = inst.Objective(opt.p_star);
  return opt;
}

double KktResiduals::Max() const {
  return std::max({stationarity, primal_violation, dual_negativity, complementarity});
}

KktResiduals ComputeKktResiduals(const DispatchInstance& inst,
                                 const Eigen::VectorXd& p, double lambda,
                                 const Eigen::VectorXd& mu_min,
                                 const Eigen::VectorXd& mu_max) {
  const auto n = static_cast<Eigen::Index>(inst.size());
  if (p.size() != n || mu_min.size() != n || mu_max.size() != n) {
    throw Error(ErrorCode::kDimensionError, "KKT inputs must have one entry per generator");
  }
  KktResiduals r;
  r.primal_violation = std::abs(p.sum() - inst.demand());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double g_lo = inst.p_min()[i] - p[i];
    const double g_hi = p[i] - inst.p_max()[i];
    r.stationarity = std::max(
        r.stationarity,
        std::abs(inst.MarginalCost(static_cast<std::size_t>(i), p[i]) - lambda -
                 mu_min[i] + mu_max[i]));
    r.primal_violation = std::max({r.primal_violation, g_lo, g_hi});
    r.dual_negativity = std::max({r.dual_negativity, -mu_min[i], -mu_max[i]});
    r.complementarity = std::max(
        {r.complementarity, std::abs(mu_min[i] * g_lo), std::abs(mu_max[i] * g_hi)});
  }
  return r;
}

GradientBounds CornerGradientBounds(const DispatchInstance& inst, double mu_upper) {
  GradientBounds bounds;
  const double d = inst.demand();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    const double lo = inst.p_min()[k], hi = inst.p_max()[k];
    double l_mu = 0.0;
    for (double p : {0.0, d}) {
      const double marginal = inst.MarginalCost(i, p);
      for (double shift : {mu_upper, -mu_upper}) {
        bounds.l_x = std::max(bounds.l_x, std::abs(marginal + shift));
      }
      l_mu = std::max(l_mu, std::hypot(lo - p, p - hi));
    }
    bounds.l_mu.push_back(l_mu);
  }
  return bounds;
}

Fig1Fixture MakeFig1Fixture() {
  Eigen::VectorXd a(4), b(4), c(4), p_min(4), p_max(4);
  a << 0.15, 0.18, 0.12, 0.225;
  b << -1.05, -0.9, -0.6, -1.125;
  c << 2.0, 1.5, 1.0, 1.8;
  p_min << 0.5, 0.5, 0.5, 0.5;
  p_max << 5.0, 5.0, 1.5, 5.0;
  const std::vector<Edge> edges = {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 3}};
  return Fig1Fixture{
      DispatchInstance::Build(a, b, c, 10.0, p_min, p_max),
      DirectedGraph::Build(4, edges),
      StepSizeSchedule(15.0, 0.6),
  };
}

}  // namespace ppsgda
