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

// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "ppsgda/consensus.hpp"
#include "ppsgda/dispatch.hpp"
#include "ppsgda/error.hpp"
#include "ppsgda/experiment.hpp"
#include "ppsgda/graph.hpp"
#include "ppsgda/projections.hpp"
#include "ppsgda/pushsum_gda.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ppsgda;

// Tolerances.
constexpr double kFig1ErrorAt1000 = 0.04;
constexpr double kFig1ErrorAt4000 = 0.02;
constexpr double kFig1RuntimeSeconds = 10.0;
constexpr double kRowSumTolerance = 1e-12;
constexpr double kPhiLimitTolerance = 1e-8;
constexpr double kMinRSquared = 0.95;
constexpr double kLambdaGap = 0.05;
constexpr double kProjectionTolerance = 1e-9;
constexpr double kGradientTolerance = 1e-6;
constexpr double kUFloor = -1e-9;
constexpr double kPrimalTolerance = 1e-2;
constexpr double kDualTolerance = 0.05;
constexpr double kConsensusTolerance = 1e-3;
constexpr double kKktTolerance = 1e-10;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string Sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

fs::path ScratchDir() {
  const fs::path dir = fs::temp_directory_path() / "ppsgda_acceptance";
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Minimal CSV reader, separate from the library's.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t col(const std::string& name) const {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  }
};

Csv ReadCsv(const fs::path& p) {
  Csv csv;
  std::istringstream in(Slurp(p));
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      csv.header = cells;
      first = false;
      continue;
    }
    std::vector<double> row;
    for (const std::string& c : cells) {
      double v = NAN;
      std::from_chars(c.data(), c.data() + c.size(), v);
      row.push_back(v);
    }
    csv.rows.push_back(row);
  }
  return csv;
}

// Global Lagrangian of the dispatch problem from raw instance data.
double DispatchLagrangian(const DispatchInstance& inst, const Eigen::VectorXd& x,
                          const std::vector<Eigen::VectorXd>& mu) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double p = x[i];
    total += inst.a()[i] * p * p + inst.b()[i] * p + inst.c()[i] +
             mu[static_cast<std::size_t>(i)][0] * (inst.p_min()[i] - p) +
             mu[static_cast<std::size_t>(i)][1] * (p - inst.p_max()[i]);
  }
  return total;
}

// Corner enumeration of the gradient bounds from raw instance data.
GradientBounds IndependentCornerBounds(const DispatchInstance& inst, double mu_upper) {
  GradientBounds b;
  for (Eigen::Index i = 0; i < inst.a().size(); ++i) {
    double l_mu = 0.0;
    for (double p : {0.0, inst.demand()}) {
      for (double m1 : {0.0, mu_upper}) {
        for (double m2 : {0.0, mu_upper}) {
          b.l_x = std::max(b.l_x, std::abs(2 * inst.a()[i] * p + inst.b()[i] - m1 + m2));
        }
      }
      l_mu = std::max(l_mu, std::sqrt(std::pow(inst.p_min()[i] - p, 2) + std::pow(p - inst.p_max()[i], 2)));
    }
    b.l_mu.push_back(l_mu);
  }
  return b;
}

Outcome Criterion1() {
  ExperimentConfig cfg = Fig1Config();
  cfg.trace_path = (ScratchDir() / "c1_trace.csv").string();
  const auto start = std::chrono::steady_clock::now();
  RunExperiment(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Csv csv = ReadCsv(cfg.trace_path);
  const DispatchOptimum opt = SolveCentralized(MakeFig1Fixture().instance);
  double after_1000 = 0.0;
  bool saw_1000 = false;
  for (const auto& row : csv.rows) {
    if (row[csv.col("t")] < 1000) continue;
    saw_1000 = saw_1000 || row[csv.col("t")] == 1000;
    for (int i = 1; i <= 4; ++i) after_1000 = std::max(after_1000, row[csv.col("rel_err_max_" + std::to_string(i))]);
  }
  // The last row holds x[3999]; x[4000] comes from the final states.
  const ExperimentOutcome out = RunExperiment(Fig1Config());
  double final_err = 0.0;
  for (const AgentState& s : out.run.final_states) {
    for (Eigen::Index k = 0; k < 4; ++k) {
      final_err = std::max(final_err, std::abs(s.x[k] - opt.p_star[k]) / std::abs(opt.p_star[k]));
    }
  }
  return {saw_1000 && after_1000 <= kFig1ErrorAt1000 && final_err <= kFig1ErrorAt4000 &&
              seconds <= kFig1RuntimeSeconds,
          "max rel err over t in [1000, 3999] " + Sci(after_1000) + " (<= 0.04), at t=4000 " +
              Sci(final_err) + " (<= 0.02), runtime " + Sci(seconds) + " s (<= 10)"};
}

Outcome Criterion2() {
  std::mt19937_64 rng(101);
  double q_err = 0.0, phi_err = 0.0, oracle_gap = 0.0, limit_dev = 0.0;
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 9;
    const DirectedGraph g = RandomStronglyConnectedGraph(n, 0.1 + 0.4 * std::uniform_real_distribution<>(0, 1)(rng), rng());
    const PerronMatrix p = PerronFromOutDegrees(g);
    WeightTrajectory w(p.entries);
    for (std::size_t t = 0; t <= 1000; ++t) {
      const Eigen::MatrixXd q = QMatrix(w.at(t + 1), w.at(t), p);
      q_err = std::max(q_err, (q.rowwise().sum().array() - 1.0).abs().maxCoeff());
    }
    for (std::size_t s : {0u, 5u, 17u}) {
      PhiSequence phi(p, s);
      Eigen::VectorXd y = oracle::WeightsAt(p.entries, s);
      const Eigen::VectorXd y_s = y;
      Eigen::MatrixXd product = Eigen::MatrixXd::Identity(p.entries.rows(), p.entries.cols());
      for (std::size_t t = s; t <= 1000; ++t) {
        product = oracle::QFromWeights(p.entries, y) * product;
        y = p.entries * y;
        const Eigen::MatrixXd current = phi.current();
        phi_err = std::max(phi_err, (current.rowwise().sum().array() - 1.0).abs().maxCoeff());
        oracle_gap = std::max(oracle_gap, (current - product).cwiseAbs().maxCoeff());
        if (t == 500) {
          const Eigen::MatrixXd limit = Eigen::VectorXd::Constant(p.entries.rows(), 1.0 / static_cast<double>(n)) * y_s.transpose();
          limit_dev = std::max(limit_dev, (current - limit).cwiseAbs().maxCoeff());
        }
        phi.Advance();
      }
    }
  }
  return {q_err <= kRowSumTolerance && phi_err <= kRowSumTolerance && limit_dev <= kPhiLimitTolerance &&
              oracle_gap <= 1e-10,
          "Q row sums " + Sci(q_err) + ", Phi row sums " + Sci(phi_err) + " (<= 1e-12), |Phi(500,s) - limit| " +
              Sci(limit_dev) + " (<= 1e-8), closed form vs explicit product " + Sci(oracle_gap)};
}

Outcome Criterion3() {
  std::mt19937_64 rng(202);
  std::size_t failures = 0;
  double min_r2 = 1.0, max_gap = 0.0, max_lambda = 0.0;
  std::string note;
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t n = 3 + k % 8;
    const PerronMatrix p = PerronFromOutDegrees(RandomStronglyConnectedGraph(n, 0.2, rng()));
    try {
      const MixingEstimate est = EstimateMixing(p, 0, 1000);
      min_r2 = std::min(min_r2, est.r_squared);
      max_lambda = std::max(max_lambda, est.lambda);
      bool ok = est.lambda > 0.0 && est.lambda < 1.0 && est.slope < 0.0 && est.r_squared >= kMinRSquared;
      if (n <= 8) {
        const double gap = std::abs(est.lambda - oracle::SubdominantModulus(p.entries));
        max_gap = std::max(max_gap, gap);
        ok = ok && gap <= kLambdaGap;
      }
      failures += ok ? 0 : 1;
    } catch (const Error& e) {
      ++failures;
      note = std::string(", ") + e.what();
    }
  }
  return {failures == 0, "50 graphs n in [3,10]: failures " + std::to_string(failures) + ", min R^2 " + Sci(min_r2) +
                             " (>= 0.95), max |lambda - |lambda_2|| " + Sci(max_gap) + " (<= 0.05), max lambda " +
                             Sci(max_lambda) + note};
}

Outcome Criterion4() {
  std::mt19937_64 rng(303);
  std::normal_distribution<double> normal(0.0, 3.0);
  std::uniform_real_distribution<double> level(0.0, 5.0);
  double gap = 0.0, bisection_gap = 0.0, expansion = -INFINITY;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t d = 1 + static_cast<std::size_t>(k % 6);
    const ScaledSimplex set(d, level(rng));
    Eigen::VectorXd u(static_cast<Eigen::Index>(d));
    for (Eigen::Index j = 0; j < u.size(); ++j) u[j] = normal(rng);
    const Eigen::VectorXd fast = ProjectSimplex(u, set);
    gap = std::max(gap, (fast - QpOracleProject(u, set)).cwiseAbs().maxCoeff());
    bisection_gap = std::max(bisection_gap, (fast - oracle::ProjectSimplexBisection(u, set.level())).cwiseAbs().maxCoeff());
  }
  for (int k = 0; k < 1000; ++k) {
    const std::size_t d = 1 + static_cast<std::size_t>(k % 6);
    const ScaledSimplex set(d, level(rng));
    Eigen::VectorXd u(static_cast<Eigen::Index>(d)), v(static_cast<Eigen::Index>(d));
    for (Eigen::Index j = 0; j < u.size(); ++j) {
      u[j] = normal(rng);
      v[j] = normal(rng);
    }
    expansion = std::max(expansion, (ProjectSimplex(u, set) - ProjectSimplex(v, set)).norm() - (u - v).norm());
  }
  return {gap <= kProjectionTolerance && bisection_gap <= kProjectionTolerance && expansion <= 1e-12,
          "sort vs enumeration " + Sci(gap) + ", vs bisection " + Sci(bisection_gap) +
              " (<= 1e-9), max ||Pu-Pv|| - ||u-v|| " + Sci(expansion) + " (<= 1e-12)"};
}

Outcome Criterion5() {
  std::mt19937_64 rng(404);
  std::vector<DispatchInstance> fixtures = {MakeFig1Fixture().instance};
  for (std::size_t n : {1u, 3u, 7u, 10u}) {
    const oracle::Dispatch d = oracle::RandomDispatch(n, rng);
    fixtures.push_back(DispatchInstance::Build(d.a, d.b, d.c, d.demand, d.p_min, d.p_max));
  }
  double worst = 0.0;
  std::size_t problems = 0;
  auto relative = [](const Eigen::VectorXd& fd, const Eigen::VectorXd& g) {
    return ((fd - g).array().abs() / g.array().abs().max(1.0)).maxCoeff();
  };
  for (const DispatchInstance& inst : fixtures) {
    for (const LocalProblem& lp : inst.LocalProblems(kDefaultDualBoxUpper)) {
      ++problems;
      std::uniform_real_distribution<double> coord(-inst.demand(), 2.0 * inst.demand());
      for (int k = 0; k < 100; ++k) {
        Eigen::VectorXd x(static_cast<Eigen::Index>(lp.dimension()));
        for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = coord(rng);
        const Eigen::VectorXd mu = lp.dual_box().Sample(rng);
        worst = std::max(worst, relative(oracle::CentralDifference([&](const Eigen::VectorXd& v) { return Lagrangian(lp, v, mu); }, x),
                                         GradXLagrangian(lp, x, mu)));
        worst = std::max(worst, relative(oracle::CentralDifference([&](const Eigen::VectorXd& m) { return Lagrangian(lp, x, m); }, mu),
                                         GradMuLagrangian(lp, x)));
      }
    }
  }
  return {worst <= kGradientTolerance,
          std::to_string(problems) + " local problems x 100 points, max relative FD mismatch " + Sci(worst) + " (<= 1e-6)"};
}

struct Fig1Run {
  Fig1Fixture fixture = MakeFig1Fixture();
  PerronMatrix perron = PerronFromOutDegrees(fixture.graph);
  DispatchOptimum opt = SolveCentralized(fixture.instance);
  GradientBounds bounds = IndependentCornerBounds(fixture.instance, kDefaultDualBoxUpper);
};

Outcome Criterion6() {
  const Fig1Run f;
  const GradientBounds lib = CornerGradientBounds(f.fixture.instance, kDefaultDualBoxUpper);
  double bound_gap = std::abs(lib.l_x - f.bounds.l_x);
  for (std::size_t i = 0; i < 4; ++i) bound_gap = std::max(bound_gap, std::abs(lib.l_mu[i] - f.bounds.l_mu[i]));
  const ExperimentOutcome out = RunExperiment(Fig1Config());
  double ratio_x = 0.0, ratio_mu = 0.0;
  std::size_t rows = 0;
  for (const TraceRecord& r : out.run.trace.records) {
    ++rows;
    for (std::size_t i = 0; i < 4; ++i) {
      ratio_x = std::max(ratio_x, r.eps_x_norm[i] / (r.alpha * f.bounds.l_x / r.y_next[i]));
      ratio_mu = std::max(ratio_mu, r.eps_mu_norm[i] / (r.alpha * f.bounds.l_mu[i]));
    }
  }
  const RunDiagnostics& d = out.run.diagnostics;
  return {bound_gap <= 1e-12 && ratio_x <= 1.0 && ratio_mu <= 1.0 && d.max_eps_x_excess <= 0.0 && d.max_eps_mu_excess <= 0.0,
          std::to_string(rows) + " traced rounds: max ||eps_x|| / bound " + Sci(ratio_x) + ", max ||eps_mu|| / bound " +
              Sci(ratio_mu) + " (<= 1); every round: excess " + Sci(std::max(d.max_eps_x_excess, d.max_eps_mu_excess)) +
              "; L_x " + Sci(f.bounds.l_x)};
}

// Steps the fixture by hand and evaluates the Lyapunov triple independently.
Outcome Criterion7() {
  const Fig1Run f;
  const auto problems = f.fixture.instance.LocalProblems(kDefaultDualBoxUpper);
  const ScaledSimplex x_set = f.fixture.instance.GlobalSet();
  const std::vector<Eigen::VectorXd> mu_star = f.opt.DualPairs();
  const Eigen::VectorXd& w = f.perron.perron_vector;
  const double n = 4.0;
  std::vector<AgentState> states(4, AgentState{x_set.Project(Eigen::VectorXd::Zero(4)), Eigen::Vector2d::Zero(), 1.0});

  std::vector<double> v, u, c;
  std::vector<bool> settled;
  double lib_gap = 0.0;
  for (std::size_t t = 0; t <= 4000; ++t) {
    const double alpha = f.fixture.schedule(t);
    Eigen::VectorXd x_bar = Eigen::VectorXd::Zero(4);
    for (const AgentState& s : states) x_bar += s.x / n;
    double vt = 0.0, spread = 0.0;
    std::vector<Eigen::VectorXd> mu_t;
    bool ok = true;
    for (std::size_t i = 0; i < 4; ++i) {
      vt += states[i].y * (states[i].x - f.opt.p_star).squaredNorm() + (states[i].mu - mu_star[i]).squaredNorm();
      spread += (states[i].x - x_bar).norm();
      mu_t.push_back(states[i].mu);
      ok = ok && states[i].y >= n * w[static_cast<Eigen::Index>(i)] / 2.0;
    }
    const double l_star = DispatchLagrangian(f.fixture.instance, f.opt.p_star, mu_star);
    const double ut = 2.0 * alpha *
                      (DispatchLagrangian(f.fixture.instance, x_bar, mu_star) - l_star + l_star -
                       DispatchLagrangian(f.fixture.instance, f.opt.p_star, mu_t));
    double sum_l_mu_sq = 0.0;
    for (double l : f.bounds.l_mu) sum_l_mu_sq += l * l;
    const double ct = 2.0 * alpha * f.bounds.l_x * n * spread +
                      f.bounds.l_x * f.bounds.l_x * alpha * alpha * w.cwiseInverse().sum() +
                      alpha * alpha * sum_l_mu_sq;
    v.push_back(vt);
    u.push_back(ut);
    c.push_back(ct);
    settled.push_back(ok);
    if (t == 4000) break;
    const LyapunovTerms lib = ComputeLyapunovTerms(states, f.opt.AsReference(), problems, f.fixture.schedule, t, f.bounds, w);
    lib_gap = std::max({lib_gap, std::abs(lib.v - vt) / (1 + vt), std::abs(lib.u - ut) / (1 + std::abs(ut)),
                        std::abs(lib.c - ct) / (1 + ct)});
    states = PpsgdaStep(states, f.perron, problems, x_set, t, f.fixture.schedule).states;
  }
  std::size_t t0 = 0;
  for (std::size_t t = 0; t < settled.size(); ++t) {
    if (!settled[t]) t0 = t + 1;
  }
  double worst = -INFINITY, min_u = INFINITY;
  std::size_t checked = 0;
  for (std::size_t t = 0; t + 1 < v.size(); ++t) {
    min_u = std::min(min_u, u[t]);
    if (t <= t0) continue;
    worst = std::max(worst, v[t + 1] - (v[t] - u[t] + c[t]));
    ++checked;
  }
  return {checked > 0 && worst <= 0.0 && min_u >= kUFloor && lib_gap <= 1e-9,
          "t0 = " + std::to_string(t0) + ", " + std::to_string(checked) + " rounds: max v_{t+1} - (v_t - u_t + c_t) " +
              Sci(worst) + " (<= 0), min u_t " + Sci(min_u) + " (>= -1e-9), library vs independent terms " + Sci(lib_gap)};
}

Outcome Criterion8() {
  const Fig1Run f;
  const ExperimentOutcome out = RunExperiment(Fig1Config());
  const std::vector<Eigen::VectorXd> mu_star = f.opt.DualPairs();
  Eigen::VectorXd x_bar = Eigen::VectorXd::Zero(4);
  for (const AgentState& s : out.run.final_states) x_bar += s.x / 4.0;
  double primal = 0.0, dual = 0.0, consensus = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const AgentState& s = out.run.final_states[i];
    primal = std::max(primal, (s.x - f.opt.p_star).norm() / f.opt.p_star.norm());
    dual = std::max(dual, (s.mu - mu_star[i]).norm() / (1.0 + mu_star[i].norm()));
    consensus = std::max(consensus, (s.x - x_bar).norm());
  }
  return {primal <= kPrimalTolerance && dual <= kDualTolerance && consensus <= kConsensusTolerance,
          "max ||x_i - x*|| / ||x*|| " + Sci(primal) + " (<= 1e-2), max ||mu_i - mu_i*|| / (1 + ||mu_i*||) " +
              Sci(dual) + " (<= 0.05), consensus " + Sci(consensus) + " (<= 1e-3)"};
}

Outcome Criterion9() {
  std::mt19937_64 rng(909);
  double worst_kkt = 0.0, worst_gap = -INFINITY;
  std::size_t samples = 0;
  for (int k = 0; k < 1000; ++k) {
    const oracle::Dispatch d = oracle::RandomDispatch(1 + static_cast<std::size_t>(k % 10), rng);
    const DispatchOptimum opt = SolveCentralized(DispatchInstance::Build(d.a, d.b, d.c, d.demand, d.p_min, d.p_max));
    const Eigen::VectorXd& p = opt.p_star;
    double kkt = std::abs(p.sum() - d.demand);
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const double lo = d.p_min[i] - p[i], hi = p[i] - d.p_max[i];
      kkt = std::max({kkt, lo, hi, -opt.mu_min[i], -opt.mu_max[i], std::abs(opt.mu_min[i] * lo),
                      std::abs(opt.mu_max[i] * hi),
                      std::abs(2 * d.a[i] * p[i] + d.b[i] - opt.lambda_star - opt.mu_min[i] + opt.mu_max[i])});
    }
    worst_kkt = std::max(worst_kkt, kkt);
    const double best = d.Objective(p);
    for (int j = 0; j < 1000; ++j, ++samples) {
      worst_gap = std::max(worst_gap, (best - d.Objective(oracle::FeasiblePoint(d, rng))) / (1.0 + std::abs(best)));
    }
  }
  return {worst_kkt <= kKktTolerance && worst_gap <= 1e-12,
          "1000 instances n <= 10: max KKT residual " + Sci(worst_kkt) + " (<= 1e-10); " + std::to_string(samples) +
              " feasible samples, max (oracle - sample) / (1 + |oracle|) " + Sci(worst_gap) + " (<= 1e-12, rounding)"};
}

Outcome Criterion10() {
  const fs::path dir = ScratchDir();
  ExperimentConfig cfg = LoadConfig(fs::path(PPSGDA_SOURCE_DIR) / "configs" / "fig1.json");
  cfg.summary_path.clear();
  cfg.trace_path = (dir / "det_a.csv").string();
  RunExperiment(cfg);
  cfg.trace_path = (dir / "det_b.csv").string();
  RunExperiment(cfg);
  const std::string a = Slurp(dir / "det_a.csv"), b = Slurp(dir / "det_b.csv");
  ExperimentConfig random = cfg;
  random.graph = GeneratedGraph{"random", 4, 99, 0.3};
  random.seed = 7;
  random.trace_path = (dir / "det_c.csv").string();
  RunExperiment(random);
  random.trace_path = (dir / "det_d.csv").string();
  RunExperiment(random);
  const std::string c = Slurp(dir / "det_c.csv"), d = Slurp(dir / "det_d.csv");
  return {!a.empty() && a == b && !c.empty() && c == d,
          "fig1 trace " + std::to_string(a.size()) + " bytes identical: " + (a == b ? "yes" : "no") +
              "; seeded random-graph trace identical: " + (c == d ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"fig1 reproduction", Criterion1},      {"push-sum matrix products", Criterion2},
      {"geometric mixing fit", Criterion3},   {"projection oracle", Criterion4},
      {"gradient checks", Criterion5},        {"disturbance bounds", Criterion6},
      {"Lyapunov inequality", Criterion7},    {"limit point", Criterion8},
      {"dispatch oracle", Criterion9},        {"determinism", Criterion10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.passed ? 0 : 1;
    std::printf("%s criterion %zu (%s): %s\n", o.passed ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
