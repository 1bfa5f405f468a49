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

#include "ppsgda/pushsum_gda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppsgda/error.hpp"

namespace ppsgda {
namespace {

constexpr double kRelativeErrorFloor = 1e-9;

void CheckShapes(std::span<const AgentState> states, const PerronMatrix& p,
                 std::span<const LocalProblem> problems, const ConvexSet& x_set) {
  const std::size_t n = p.size();
  if (states.size() != n || problems.size() != n) {
    throw Error(ErrorCode::kDimensionError,
                "need one state and one local problem per vertex");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (problems[i].dimension() != x_set.dimension() ||
        static_cast<std::size_t>(states[i].x.size()) != x_set.dimension() ||
        static_cast<std::size_t>(states[i].mu.size()) !=
            problems[i].constraint_count()) {
      throw Error(ErrorCode::kDimensionError,
                  "agent " + std::to_string(i) + " has mismatched dimensions");
    }
  }
}

double Distance(const Eigen::VectorXd& x, const ConvexSet& set) {
  return (set.Project(x) - x).norm();
}

}  // namespace

Round PpsgdaStep(std::span<const AgentState> states, const PerronMatrix& p,
                 std::span<const LocalProblem> problems, const ConvexSet& x_set,
                 std::size_t t, const StepSizeSchedule& schedule) {
  CheckShapes(states, p, problems, x_set);
  const std::size_t n = p.size();
  const double alpha = schedule(t);

  Round round;
  round.states.resize(n);
  round.mixed.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    double y_next = 0.0;
    Eigen::VectorXd weighted = Eigen::VectorXd::Zero(states[i].x.size());
    for (std::size_t j = 0; j < n; ++j) {
      const double pij = p.entries(row, static_cast<Eigen::Index>(j));
      if (pij == 0.0) continue;
      y_next += pij * states[j].y;
      weighted += (pij * states[j].y) * states[j].x;
    }
    Eigen::VectorXd z = weighted / y_next;

    const LocalProblem& problem = problems[i];
    const Eigen::VectorXd grad_x = GradXLagrangian(problem, z, states[i].mu);
    const Eigen::VectorXd grad_mu = GradMuLagrangian(problem, z);

    AgentState& next = round.states[i];
    next.y = y_next;
    next.x = x_set.Project(z - (alpha / y_next) * grad_x);
    next.mu = problem.dual_box().Project(states[i].mu + alpha * grad_mu);
    round.mixed[i] = std::move(z);
  }
  return round;
}

Disturbance DisturbanceTerms(const AgentState& before, const Eigen::VectorXd& z,
                             const AgentState& after) {
  return {after.x - z, after.mu - before.mu};
}

Eigen::VectorXd AverageEstimate(std::span<const AgentState> states) {
  if (states.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no agent states");
  }
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(states.front().x.size());
  for (const AgentState& s : states) sum += s.x;
  return sum / static_cast<double>(states.size());
}

std::vector<double> ConsensusResiduals(std::span<const AgentState> states) {
  std::vector<double> residuals;
  if (states.empty()) return residuals;
  const Eigen::VectorXd mean = AverageEstimate(states);
  residuals.reserve(states.size());
  for (const AgentState& s : states) residuals.push_back((s.x - mean).norm());
  return residuals;
}

double MaxRelativeError(const Eigen::VectorXd& x, const Eigen::VectorXd& x_star) {
  if (x.size() != x_star.size()) {
    throw Error(ErrorCode::kDimensionError, "estimate and optimum differ in size");
  }
  double worst = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double error = std::abs(x[k] - x_star[k]);
    const double scale = std::abs(x_star[k]);
    worst = std::max(worst, scale < kRelativeErrorFloor ? error : error / scale);
  }
  return worst;
}

LyapunovTerms ComputeLyapunovTerms(std::span<const AgentState> states,
                                   const OptimumReference& optimum,
                                   std::span<const LocalProblem> problems,
                                   const StepSizeSchedule& schedule,
                                   std::size_t t, const GradientBounds& bounds,
                                   const Eigen::VectorXd& perron_vector) {
  const std::size_t n = states.size();
  if (problems.size() != n || optimum.mu_star.size() != n ||
      bounds.l_mu.size() != n || static_cast<std::size_t>(perron_vector.size()) != n) {
    throw Error(ErrorCode::kDimensionError,
                "Lyapunov terms need per-agent optimum, bounds and weights");
  }
  const double alpha = schedule(t);
  const Eigen::VectorXd x_bar = AverageEstimate(states);

  LyapunovTerms terms;
  double disagreement = 0.0;
  double inverse_weights = 0.0;
  double dual_bound_sq = 0.0;
  double l_at_bar_opt = 0.0;   // L(x_bar, mu*)
  double l_at_opt = 0.0;       // L(x*, mu*)
  double l_at_opt_cur = 0.0;   // L(x*, mu[t])
  for (std::size_t i = 0; i < n; ++i) {
    const AgentState& s = states[i];
    terms.v += s.y * (s.x - optimum.x_star).squaredNorm() +
               (s.mu - optimum.mu_star[i]).squaredNorm();
    disagreement += (s.x - x_bar).norm();
    inverse_weights += 1.0 / perron_vector[static_cast<Eigen::Index>(i)];
    dual_bound_sq += bounds.l_mu[i] * bounds.l_mu[i];
    l_at_bar_opt += Lagrangian(problems[i], x_bar, optimum.mu_star[i]);
    l_at_opt += Lagrangian(problems[i], optimum.x_star, optimum.mu_star[i]);
    l_at_opt_cur += Lagrangian(problems[i], optimum.x_star, s.mu);
  }
  terms.u = 2.0 * alpha *
            ((l_at_bar_opt - l_at_opt) + (l_at_opt - l_at_opt_cur));
  terms.c = 2.0 * alpha * bounds.l_x * static_cast<double>(n) * disagreement +
            bounds.l_x * bounds.l_x * alpha * alpha * inverse_weights +
            alpha * alpha * dual_bound_sq;
  return terms;
}

void RunConfig::Validate() const {
  if (iterations == 0) {
    throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  }
  if (trace_stride == 0) {
    throw Error(ErrorCode::kInvalidArgument, "trace_stride must be >= 1");
  }
}

RunResult Run(const RunConfig& config, const PerronMatrix& p,
              std::span<const LocalProblem> problems, const ConvexSet& x_set,
              const std::optional<OptimumReference>& oracle,
              const std::optional<GradientBounds>& bounds) {
  config.Validate();
  const std::size_t n = p.size();
  if (problems.size() != n) {
    throw Error(ErrorCode::kDimensionError, "one local problem per vertex expected");
  }
  if (!config.initial_x.empty() && config.initial_x.size() != n) {
    throw Error(ErrorCode::kDimensionError, "one initial point per agent expected");
  }
  if (oracle && oracle->mu_star.size() != n) {
    throw Error(ErrorCode::kDimensionError, "one optimal dual per agent expected");
  }

  RunResult result;
  RunDiagnostics& diag = result.diagnostics;
  diag.bounds = bounds ? *bounds
                       : EstimateGradientBounds(problems, x_set,
                                                config.bound_samples, config.seed);
  if (diag.bounds.l_mu.size() != n) {
    throw Error(ErrorCode::kDimensionError, "one dual gradient bound per agent expected");
  }

  const auto dim = static_cast<Eigen::Index>(x_set.dimension());
  std::vector<AgentState> states(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd start =
        config.initial_x.empty() ? Eigen::VectorXd::Zero(dim) : config.initial_x[i];
    states[i].x = x_set.Project(start);
    states[i].mu = Eigen::VectorXd::Zero(
        static_cast<Eigen::Index>(problems[i].constraint_count()));
    states[i].y = 1.0;
  }

  const Eigen::VectorXd& w = p.perron_vector;
  auto weights_settled = [&](std::span<const AgentState> s) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s[i].y < static_cast<double>(n) * w[static_cast<Eigen::Index>(i)] / 2.0) {
        return false;
      }
    }
    return true;
  };

  // Per-round Lyapunov triples, needed once t0 is known.
  std::vector<LyapunovTerms> lyapunov;
  std::vector<double> next_v;
  std::size_t last_unsettled = 0;
  bool any_unsettled = !weights_settled(states);

  result.trace.agents = n;
  result.trace.has_oracle = oracle.has_value();
  diag.min_weight = 1.0;

  for (std::size_t t = 0; t < config.iterations; ++t) {
    const double alpha = config.schedule(t);
    const bool traced = t % config.trace_stride == 0 || t + 1 == config.iterations;
    const std::vector<double> residuals = ConsensusResiduals(states);
    const double max_residual = *std::max_element(residuals.begin(), residuals.end());
    diag.last_weighted_disagreement = alpha * max_residual;
    diag.weighted_disagreement_sum += diag.last_weighted_disagreement;

    std::optional<LyapunovTerms> terms;
    if (oracle) {
      terms = ComputeLyapunovTerms(states, *oracle, problems, config.schedule, t,
                                   diag.bounds, w);
      lyapunov.push_back(*terms);
    }

    Round round = PpsgdaStep(states, p, problems, x_set, t, config.schedule);

    TraceRecord record;
    if (traced) {
      record.t = t;
      record.alpha = alpha;
      record.consensus_residual = residuals;
      record.lyapunov = terms;
    }
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const AgentState& after = round.states[i];
      const Disturbance eps = DisturbanceTerms(states[i], round.mixed[i], after);
      const double eps_x = eps.eps_x.norm();
      const double eps_mu = eps.eps_mu.norm();
      const double x_bound = alpha * diag.bounds.l_x / after.y;
      const double mu_bound = alpha * diag.bounds.l_mu[i];
      diag.max_eps_x_excess = std::max(diag.max_eps_x_excess, eps_x - x_bound);
      diag.max_eps_mu_excess = std::max(diag.max_eps_mu_excess, eps_mu - mu_bound);
      if (x_bound > 0.0) diag.max_eps_x_ratio = std::max(diag.max_eps_x_ratio, eps_x / x_bound);
      if (mu_bound > 0.0) diag.max_eps_mu_ratio = std::max(diag.max_eps_mu_ratio, eps_mu / mu_bound);
      diag.max_x_infeasibility =
          std::max(diag.max_x_infeasibility, Distance(after.x, x_set));
      diag.max_mu_infeasibility = std::max(
          diag.max_mu_infeasibility, Distance(after.mu, problems[i].dual_box()));
      diag.min_weight = std::min(diag.min_weight, after.y);
      weight_sum += after.y;
      if (traced) {
        if (oracle) {
          record.rel_err_max.push_back(MaxRelativeError(states[i].x, oracle->x_star));
        }
        record.eps_x_norm.push_back(eps_x);
        record.eps_mu_norm.push_back(eps_mu);
        record.y_next.push_back(after.y);
      }
    }
    diag.max_weight_sum_error = std::max(
        diag.max_weight_sum_error, std::abs(weight_sum - static_cast<double>(n)));
    if (traced) result.trace.records.push_back(std::move(record));

    states = std::move(round.states);
    if (!weights_settled(states)) {
      any_unsettled = true;
      last_unsettled = t + 1;
    }
    if (oracle) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        v += states[i].y * (states[i].x - oracle->x_star).squaredNorm() +
             (states[i].mu - oracle->mu_star[i]).squaredNorm();
      }
      next_v.push_back(v);
    }
  }

  if (oracle) {
    diag.t0 = any_unsettled ? last_unsettled + 1 : 0;
    diag.min_u = lyapunov.empty() ? 0.0 : lyapunov.front().u;
    diag.max_lyapunov_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < lyapunov.size(); ++t) {
      diag.min_u = std::min(diag.min_u, lyapunov[t].u);
      if (t <= diag.t0) continue;
      const double violation =
          next_v[t] - (lyapunov[t].v - lyapunov[t].u + lyapunov[t].c);
      diag.max_lyapunov_violation = std::max(diag.max_lyapunov_violation, violation);
      ++diag.lyapunov_rounds_checked;
    }
    if (diag.lyapunov_rounds_checked == 0) diag.max_lyapunov_violation = 0.0;
  }

  result.final_states = std::move(states);
  return result;
}

}  // namespace ppsgda
