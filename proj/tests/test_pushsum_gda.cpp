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

#include <gtest/gtest.h>

#include <vector>

#include "oracles.hpp"
#include "ppsgda/dispatch.hpp"
#include "ppsgda/error.hpp"
#include "ppsgda/graph.hpp"
#include "ppsgda/pushsum_gda.hpp"

namespace ppsgda {
namespace {

std::vector<AgentState> InitialStates(std::size_t n, const Eigen::VectorXd& x, std::size_t m) {
  return std::vector<AgentState>(n, AgentState{x, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m)), 1.0});
}

TEST(PpsgdaStep, MatchesDirectRestatementOnFixture) {
  const Fig1Fixture f = MakeFig1Fixture();
  const PerronMatrix p = PerronFromOutDegrees(f.graph);
  const auto problems = f.instance.LocalProblems(kDefaultDualBoxUpper);
  const ScaledSimplex x_set = f.instance.GlobalSet();
  std::vector<AgentState> states = InitialStates(4, x_set.Project(Eigen::VectorXd::Zero(4)), 2);
  for (std::size_t t = 0; t < 50; ++t) {
    const Round round = PpsgdaStep(states, p, problems, x_set, t, f.schedule);
    const double alpha = f.schedule(t);
    for (std::size_t i = 0; i < 4; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      double y_next = 0.0;
      Eigen::VectorXd weighted = Eigen::VectorXd::Zero(4);
      for (std::size_t j = 0; j < 4; ++j) {
        const double pij = p.entries(ii, static_cast<Eigen::Index>(j));
        y_next += pij * states[j].y;
        weighted += pij * states[j].y * states[j].x;
      }
      const Eigen::VectorXd z = weighted / y_next;
      const double lo = f.instance.p_min()[ii], hi = f.instance.p_max()[ii];
      const double m1 = states[i].mu[0], m2 = states[i].mu[1];
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(4);
      grad[ii] = 2 * f.instance.a()[ii] * z[ii] + f.instance.b()[ii] - m1 + m2;
      const Eigen::VectorXd x_next =
          oracle::ProjectSimplexBisection(z - alpha * grad / y_next, f.instance.demand());
      const Eigen::Vector2d mu_next =
          (Eigen::Vector2d(m1, m2) + alpha * Eigen::Vector2d(lo - z[ii], z[ii] - hi))
              .cwiseMax(0.0)
              .cwiseMin(kDefaultDualBoxUpper);
      EXPECT_NEAR(round.states[i].y, y_next, 1e-14);
      EXPECT_LE((round.mixed[i] - z).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LE((round.states[i].x - x_next).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LE((round.states[i].mu - mu_next).cwiseAbs().maxCoeff(), 1e-12);
    }
    states = round.states;
  }
}

TEST(PpsgdaStep, ZeroGradientsReduceToPushSum) {
  const DirectedGraph g = RandomStronglyConnectedGraph(5, 0.3, 4);
  const PerronMatrix p = PerronFromOutDegrees(g);
  const DifferentiableFunction flat{[](const Eigen::VectorXd&) { return 1.0; },
                                    [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Zero(x.size()).eval(); }};
  const std::vector<LocalProblem> problems(5, LocalProblem(3, flat, {}, Box(Eigen::VectorXd(0), Eigen::VectorXd(0))));
  const ScaledSimplex x_set(3, 1.0);
  std::mt19937_64 rng(1);
  std::vector<AgentState> states;
  for (int i = 0; i < 5; ++i) states.push_back({x_set.Sample(rng), Eigen::VectorXd(0), 1.0});
  Eigen::VectorXd y = Eigen::VectorXd::Ones(5);
  for (std::size_t t = 0; t < 20; ++t) {
    const Eigen::MatrixXd q = oracle::QFromWeights(p.entries, y);
    const Round round = PpsgdaStep(states, p, problems, x_set, t, StepSizeSchedule(1.0, 0.6));
    for (Eigen::Index i = 0; i < 5; ++i) {
      Eigen::VectorXd expected = Eigen::VectorXd::Zero(3);
      for (Eigen::Index j = 0; j < 5; ++j) expected += q(i, j) * states[static_cast<std::size_t>(j)].x;
      EXPECT_LE((round.states[static_cast<std::size_t>(i)].x - expected).cwiseAbs().maxCoeff(), 1e-12);
      const Disturbance d = DisturbanceTerms(states[static_cast<std::size_t>(i)], round.mixed[static_cast<std::size_t>(i)],
                                             round.states[static_cast<std::size_t>(i)]);
      EXPECT_LE(d.eps_x.norm(), 1e-12);
    }
    y = p.entries * y;
    states = round.states;
  }
}

TEST(PpsgdaStep, SingleAgentIsCentralizedGda) {
  // f(x) = sum_k w_k (x_k - t_k)^2 on the simplex of mass 2, g(x) = x_0 - 0.3.
  const Eigen::Vector3d w(1.0, 2.0, 0.5), target(1.5, 0.2, 0.9);
  const DifferentiableFunction cost{
      [=](const Eigen::VectorXd& x) { return (w.array() * (x - target).array().square()).sum(); },
      [=](const Eigen::VectorXd& x) { return (2.0 * w.array() * (x - target).array()).matrix().eval(); }};
  const DifferentiableFunction g{[](const Eigen::VectorXd& x) { return x[0] - 0.3; },
                                 [](const Eigen::VectorXd&) { return Eigen::Vector3d(1, 0, 0).eval(); }};
  const std::vector<LocalProblem> problems = {LocalProblem(3, cost, {g}, Box::Uniform(1, 0.0, 50.0))};
  const PerronMatrix p = PerronFromOutDegrees(DirectedGraph::Build(1, {}));
  const ScaledSimplex x_set(3, 2.0);
  const StepSizeSchedule schedule(0.8, 0.75);

  oracle::CentralizedPgda ref{
      cost.gradient,
      [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, x[0] - 0.3); },
      [](const Eigen::VectorXd&) { return Eigen::RowVector3d(1, 0, 0).eval(); },
      2.0, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Constant(1, 50.0)};

  std::vector<AgentState> states = {{x_set.Project(Eigen::Vector3d::Zero()), Eigen::VectorXd::Zero(1), 1.0}};
  for (std::size_t t = 0; t < 300; ++t) {
    Eigen::VectorXd x = states[0].x, mu = states[0].mu;
    ref.Step(x, mu, schedule(t));
    const Round round = PpsgdaStep(states, p, problems, x_set, t, schedule);
    EXPECT_DOUBLE_EQ(round.states[0].y, 1.0);
    ASSERT_LE((round.states[0].x - x).cwiseAbs().maxCoeff(), 1e-12) << "t=" << t;
    ASSERT_LE((round.states[0].mu - mu).cwiseAbs().maxCoeff(), 1e-12) << "t=" << t;
    states = round.states;
  }
}

TEST(Metrics, ConsensusResidualsAndRelativeError) {
  std::vector<AgentState> states = {{Eigen::VectorXd::Constant(1, 0.0), Eigen::VectorXd(0), 1.0},
                                    {Eigen::VectorXd::Constant(1, 2.0), Eigen::VectorXd(0), 1.0}};
  EXPECT_EQ(ConsensusResiduals(states), (std::vector<double>{1.0, 1.0}));
  states[0].x[0] = 2.0;
  EXPECT_EQ(ConsensusResiduals(states), (std::vector<double>{0.0, 0.0}));
  EXPECT_NEAR(MaxRelativeError(Eigen::Vector2d(1.1, 0.0), Eigen::Vector2d(2.0, 0.0)), 0.45, 1e-15);
  EXPECT_DOUBLE_EQ(MaxRelativeError(Eigen::Vector2d(1.0, 0.25), Eigen::Vector2d(1.0, 0.0)), 0.25);
  EXPECT_EQ(AverageEstimate(states), Eigen::VectorXd::Constant(1, 2.0));
}

TEST(Lyapunov, VanishesAtTheOptimum) {
  const Fig1Fixture f = MakeFig1Fixture();
  const auto problems = f.instance.LocalProblems(kDefaultDualBoxUpper);
  const DispatchOptimum opt = SolveCentralized(f.instance);
  const PerronMatrix p = PerronFromOutDegrees(f.graph);
  std::vector<AgentState> states;
  for (std::size_t i = 0; i < 4; ++i) states.push_back({opt.p_star, opt.DualPairs()[i], 1.0});
  const LyapunovTerms terms = ComputeLyapunovTerms(
      states, opt.AsReference(), problems, f.schedule, 10,
      CornerGradientBounds(f.instance, kDefaultDualBoxUpper), p.perron_vector);
  EXPECT_NEAR(terms.v, 0.0, 1e-24);
  EXPECT_NEAR(terms.u, 0.0, 1e-12);
  EXPECT_GT(terms.c, 0.0);
}

TEST(Run, TraceLengthAndDeterminism) {
  const Fig1Fixture f = MakeFig1Fixture();
  const PerronMatrix p = PerronFromOutDegrees(f.graph);
  const auto problems = f.instance.LocalProblems(kDefaultDualBoxUpper);
  const ScaledSimplex x_set = f.instance.GlobalSet();
  RunConfig cfg;
  cfg.schedule = f.schedule;
  for (auto [iterations, stride, rows] : std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>{
           {1, 1, 1}, {1, 10, 1}, {25, 10, 4}, {30, 10, 4}, {4000, 10, 401}}) {
    cfg.iterations = iterations;
    cfg.trace_stride = stride;
    const RunResult r = ppsgda::Run(cfg, p, problems, x_set);
    EXPECT_EQ(r.trace.records.size(), rows) << iterations << "/" << stride;
    EXPECT_FALSE(r.trace.has_oracle);
    EXPECT_TRUE(r.trace.records.front().rel_err_max.empty());
  }
  cfg.iterations = 200;
  const RunResult a = ppsgda::Run(cfg, p, problems, x_set, SolveCentralized(f.instance).AsReference());
  const RunResult b = ppsgda::Run(cfg, p, problems, x_set, SolveCentralized(f.instance).AsReference());
  for (std::size_t k = 0; k < a.trace.records.size(); ++k) {
    EXPECT_EQ(a.trace.records[k].rel_err_max, b.trace.records[k].rel_err_max);
    EXPECT_EQ(a.trace.records[k].eps_x_norm, b.trace.records[k].eps_x_norm);
  }
}

TEST(Run, InvariantsHoldAlongTheFixtureRun) {
  const Fig1Fixture f = MakeFig1Fixture();
  const PerronMatrix p = PerronFromOutDegrees(f.graph);
  const auto problems = f.instance.LocalProblems(kDefaultDualBoxUpper);
  RunConfig cfg;
  cfg.iterations = 4000;
  cfg.trace_stride = 10;
  cfg.schedule = f.schedule;
  const RunResult r = ppsgda::Run(cfg, p, problems, f.instance.GlobalSet(),
                          SolveCentralized(f.instance).AsReference(),
                          CornerGradientBounds(f.instance, kDefaultDualBoxUpper));
  const RunDiagnostics& d = r.diagnostics;
  EXPECT_LE(d.max_x_infeasibility, 1e-10);
  EXPECT_LE(d.max_mu_infeasibility, 1e-12);
  EXPECT_LE(d.max_weight_sum_error, 1e-10);
  EXPECT_LE(d.max_eps_x_ratio, 1.0);
  EXPECT_LE(d.max_eps_mu_ratio, 1.0);
  EXPECT_LE(d.max_lyapunov_violation, 0.0);
  EXPECT_GE(d.min_u, -1e-9);
  EXPECT_GT(d.lyapunov_rounds_checked, 3000u);
  EXPECT_LT(d.last_weighted_disagreement, 1e-5);
  EXPECT_TRUE(std::isfinite(d.weighted_disagreement_sum));
}

TEST(Run, RejectsInvalidConfig) {
  const Fig1Fixture f = MakeFig1Fixture();
  const PerronMatrix p = PerronFromOutDegrees(f.graph);
  const auto problems = f.instance.LocalProblems(kDefaultDualBoxUpper);
  RunConfig cfg;
  cfg.iterations = 0;
  EXPECT_THROW(ppsgda::Run(cfg, p, problems, f.instance.GlobalSet()), Error);
  cfg.iterations = 5;
  cfg.trace_stride = 0;
  EXPECT_THROW(ppsgda::Run(cfg, p, problems, f.instance.GlobalSet()), Error);
}

}  // namespace
}  // namespace ppsgda
