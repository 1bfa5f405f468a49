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

// Projected push-sum gradient descent-ascent.
//
// One synchronous round, for every agent i and with all agents reading the
// round-start state:
//
//   y_i' = sum_j P_ij y_j
//   z_i  = (1 / y_i') sum_j P_ij y_j x_j
//   x_i' = Proj_X(z_i - alpha_t grad_x L_i(z_i, mu_i) / y_i')
//   mu_i' = Proj_Mi(mu_i + alpha_t grad_mu L_i(z_i, mu_i))
//
// Besides the round itself this header offers the quantities used to watch
// convergence: disturbance terms eps, consensus residuals and the Lyapunov
// triple (v_t, u_t, c_t) that bounds v_{t+1} <= v_t - u_t + c_t once the
// push-sum weights have settled.

#ifndef PPSGDA_PUSHSUM_GDA_HPP_
#define PPSGDA_PUSHSUM_GDA_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ppsgda/graph.hpp"
#include "ppsgda/problem.hpp"
#include "ppsgda/projections.hpp"

namespace ppsgda {

struct AgentState {
  Eigen::VectorXd x;   // primal estimate, lives in X
  Eigen::VectorXd mu;  // dual vector, lives in M_i
  double y = 1.0;      // push-sum weight
};

struct Round {
  std::vector<AgentState> states;
  std::vector<Eigen::VectorXd> mixed;  // z_i[t]
};

Round PpsgdaStep(std::span<const AgentState> states, const PerronMatrix& p,
                 std::span<const LocalProblem> problems, const ConvexSet& x_set,
                 std::size_t t, const StepSizeSchedule& schedule);

struct Disturbance {
  Eigen::VectorXd eps_x;   // x_i[t+1] - z_i[t]
  Eigen::VectorXd eps_mu;  // mu_i[t+1] - mu_i[t]
};

Disturbance DisturbanceTerms(const AgentState& before, const Eigen::VectorXd& z,
                             const AgentState& after);

Eigen::VectorXd AverageEstimate(std::span<const AgentState> states);

// ||x_i - x_bar|| per agent.
std::vector<double> ConsensusResiduals(std::span<const AgentState> states);

// max_k |x_k - x*_k| / |x*_k|, falling back to the absolute error when
// |x*_k| < 1e-9.
double MaxRelativeError(const Eigen::VectorXd& x, const Eigen::VectorXd& x_star);

struct OptimumReference {
  Eigen::VectorXd x_star;
  std::vector<Eigen::VectorXd> mu_star;  // one per agent
};

struct LyapunovTerms {
  double v = 0.0;
  double u = 0.0;
  double c = 0.0;
};

// v_t = sum_i y_i ||x_i - x*||^2 + ||mu_i - mu_i*||^2
// u_t = 2 alpha_t (L(x_bar, mu*) - L(x*, mu*) + L(x*, mu*) - L(x*, mu[t]))
// c_t = 2 alpha_t L_x n sum_i ||x_i - x_bar||
//       + L_x^2 alpha_t^2 sum_i 1/w_i + alpha_t^2 sum_i L_mu_i^2
LyapunovTerms ComputeLyapunovTerms(std::span<const AgentState> states,
                                   const OptimumReference& optimum,
                                   std::span<const LocalProblem> problems,
                                   const StepSizeSchedule& schedule,
                                   std::size_t t, const GradientBounds& bounds,
                                   const Eigen::VectorXd& perron_vector);

struct RunConfig {
  std::size_t iterations = 1;
  StepSizeSchedule schedule{15.0, 0.6};
  std::size_t trace_stride = 1;
  std::uint64_t seed = 0;
  // Per-agent starting points, projected onto X. Empty means Proj_X(0).
  std::vector<Eigen::VectorXd> initial_x;
  // Monte Carlo budget when gradient bounds have to be estimated.
  std::size_t bound_samples = 2000;

  // Throws Error(kInvalidArgument) for iterations == 0 or trace_stride == 0.
  void Validate() const;
};

// One traced round t: metrics of the state entering round t plus the
// disturbances that round produced.
struct TraceRecord {
  std::size_t t = 0;
  double alpha = 0.0;
  std::vector<double> rel_err_max;  // empty without an oracle
  std::vector<double> consensus_residual;
  std::vector<double> eps_x_norm;
  std::vector<double> eps_mu_norm;
  std::vector<double> y_next;  // y_i[t+1]
  std::optional<LyapunovTerms> lyapunov;
};

struct RunTrace {
  std::size_t agents = 0;
  bool has_oracle = false;
  std::vector<TraceRecord> records;
};

// Checks evaluated on every round, not only on traced ones.
struct RunDiagnostics {
  GradientBounds bounds;
  // max over rounds and agents of ||eps_x|| - alpha_t L_x / y_i[t+1]
  double max_eps_x_excess = -std::numeric_limits<double>::infinity();
  // max over rounds and agents of ||eps_mu|| - alpha_t L_mu_i
  double max_eps_mu_excess = -std::numeric_limits<double>::infinity();
  // Largest ||eps|| / bound seen; at most 1 when the bounds hold.
  double max_eps_x_ratio = 0.0;
  double max_eps_mu_ratio = 0.0;
  double max_weight_sum_error = 0.0;  // |sum_i y_i - n|
  double min_weight = 0.0;
  double max_x_infeasibility = 0.0;
  double max_mu_infeasibility = 0.0;
  // sum_t alpha_t max_i ||x_i[t] - x_bar[t]|| and its last increment.
  double weighted_disagreement_sum = 0.0;
  double last_weighted_disagreement = 0.0;

  // Only with an oracle. t0 is the first index from which every later y_i[t]
  // stays at or above n w_i / 2.
  std::size_t t0 = 0;
  std::size_t lyapunov_rounds_checked = 0;
  double max_lyapunov_violation = 0.0;  // max of v_{t+1} - (v_t - u_t + c_t)
  double min_u = 0.0;
};

struct RunResult {
  RunTrace trace;
  std::vector<AgentState> final_states;
  RunDiagnostics diagnostics;
};

// Initial state: x_i = Proj_X(initial point), mu_i = 0, y_i = 1. Rounds
// t = 0 .. iterations-1 run; round t is traced if t % trace_stride == 0 or it
// is the last one. Gradient bounds default to EstimateGradientBounds with the
// config seed.
RunResult Run(const RunConfig& config, const PerronMatrix& p,
              std::span<const LocalProblem> problems, const ConvexSet& x_set,
              const std::optional<OptimumReference>& oracle = std::nullopt,
              const std::optional<GradientBounds>& bounds = std::nullopt);

}  // namespace ppsgda

#endif  // PPSGDA_PUSHSUM_GDA_HPP_
