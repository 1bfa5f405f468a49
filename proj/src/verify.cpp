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

#include "ppsgda/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ppsgda/consensus.hpp"
#include "ppsgda/error.hpp"
#include "ppsgda/experiment.hpp"
#include "ppsgda/graph.hpp"
#include "ppsgda/projections.hpp"

namespace ppsgda {
namespace {

constexpr std::size_t kGraphCount = 50;

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t UniformIndex(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Eigen::VectorXd NormalVector(std::mt19937_64& rng, std::size_t d, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::VectorXd v(static_cast<Eigen::Index>(d));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = normal(rng);
  return v;
}

std::string Sci(double value) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << value;
  return out.str();
}

double MaxRowSumError(const Eigen::MatrixXd& m) {
  return (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

// Max componentwise |fd - analytic| / max(1, |analytic|).
double GradientMismatch(const std::function<double(const Eigen::VectorXd&)>& f,
                        const Eigen::VectorXd& at, const Eigen::VectorXd& analytic) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < at.size(); ++k) {
    const double h = 1e-6 * std::max(1.0, std::abs(at[k]));
    Eigen::VectorXd plus = at, minus = at;
    plus[k] += h;
    minus[k] -= h;
    const double fd = (f(plus) - f(minus)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - analytic[k]) / std::max(1.0, std::abs(analytic[k])));
  }
  return worst;
}

}  // namespace

double SubdominantModulus(const Eigen::MatrixXd& p) {
  if (p.rows() < 2) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(p, false);
  Eigen::VectorXd moduli = solver.eigenvalues().cwiseAbs();
  std::sort(moduli.data(), moduli.data() + moduli.size(), std::greater<>());
  return moduli[1];
}

DispatchInstance RandomDispatchInstance(std::size_t n, std::mt19937_64& rng) {
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::VectorXd a(m), b(m), c(m), p_min(m), p_max(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a[i] = Uniform(rng, 0.05, 1.0);
    b[i] = Uniform(rng, -2.0, 2.0);
    c[i] = Uniform(rng, 0.0, 3.0);
    p_min[i] = Uniform(rng, 0.0, 2.0);
    p_max[i] = p_min[i] + Uniform(rng, 0.1, 5.0);
  }
  const double demand = p_min.sum() + Uniform(rng, 0.0, 1.0) * (p_max.sum() - p_min.sum());
  return DispatchInstance::Build(a, b, c, demand, p_min, p_max);
}

Eigen::VectorXd RandomFeasibleDispatch(const DispatchInstance& inst,
                                       std::mt19937_64& rng) {
  Eigen::VectorXd u(inst.p_min().size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    u[i] = Uniform(rng, inst.p_min()[i], inst.p_max()[i]);
  }
  auto at = [&](double shift) {
    return (u.array() + shift).matrix().cwiseMax(inst.p_min()).cwiseMin(inst.p_max()).eval();
  };
  const double span = (inst.p_max() - inst.p_min()).maxCoeff() + 1.0;
  double lo = -span, hi = span;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (at(mid).sum() < inst.demand() ? lo : hi) = mid;
  }
  return at(0.5 * (lo + hi));
}

CheckResult CheckProductLimits(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double q_err = 0.0, phi_err = 0.0, limit_dev = 0.0;
  for (std::size_t k = 0; k < kGraphCount; ++k) {
    const std::size_t n = 2 + k % 9;
    const double q = Uniform(rng, 0.1, 0.5);
    const PerronMatrix p = PerronFromOutDegrees(RandomStronglyConnectedGraph(n, q, rng()));
    WeightTrajectory y(p.entries);
    for (std::size_t t = 0; t <= 1000; ++t) {
      q_err = std::max(q_err, MaxRowSumError(QMatrix(y.at(t + 1), y.at(t), p)));
    }
    for (std::size_t s : {0, 5, 17}) {
      PhiSequence phi(p, s);
      while (phi.t() <= 1000) {
        phi_err = std::max(phi_err, MaxRowSumError(phi.current()));
        phi.Advance();
      }
      limit_dev = std::max(limit_dev, VerifyProductLimits(p, s, 500, 1e-8).deviation);
    }
  }
  CheckResult r{"product_limits", q_err <= 1e-12 && phi_err <= 1e-12 && limit_dev <= 1e-8, ""};
  r.detail = "Q row-sum err " + Sci(q_err) + ", Phi row-sum err " + Sci(phi_err) +
             ", |Phi(500,s) - limit| " + Sci(limit_dev);
  return r;
}

CheckResult CheckMixingFit(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t failures = 0, fitted = 0;
  double min_r2 = 1.0, max_gap = 0.0;
  for (std::size_t k = 0; k < kGraphCount; ++k) {
    const std::size_t n = 3 + k % 8;
    const PerronMatrix p = PerronFromOutDegrees(RandomStronglyConnectedGraph(n, 0.2, rng()));
    try {
      const MixingEstimate est = EstimateMixing(p, 0, 1000);
      ++fitted;
      min_r2 = std::min(min_r2, est.r_squared);
      bool ok = est.lambda > 0.0 && est.lambda < 1.0 && est.slope < 0.0 &&
                est.r_squared >= 0.95;
      if (n <= 8) {
        const double gap = std::abs(est.lambda - SubdominantModulus(p.entries));
        max_gap = std::max(max_gap, gap);
        ok = ok && gap <= 0.05;
      }
      failures += ok ? 0 : 1;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kAlreadyMixed) throw;
      ++failures;
    }
  }
  CheckResult r{"mixing_rate", failures == 0, ""};
  r.detail = std::to_string(fitted) + "/" + std::to_string(kGraphCount) +
             " fitted, min R^2 " + Sci(min_r2) + ", max |lambda - |lambda_2|| " +
             Sci(max_gap) + ", failures " + std::to_string(failures);
  return r;
}

CheckResult CheckProjections(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double oracle_gap = 0.0, expansion = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t d = UniformIndex(rng, 1, 6);
    const ScaledSimplex set(d, Uniform(rng, 0.0, 5.0));
    const Eigen::VectorXd u = NormalVector(rng, d, 3.0);
    oracle_gap = std::max(
        oracle_gap, (ProjectSimplex(u, set) - QpOracleProject(u, set)).cwiseAbs().maxCoeff());
  }
  for (int k = 0; k < 1000; ++k) {
    const std::size_t d = UniformIndex(rng, 1, 20);
    const ScaledSimplex set(d, Uniform(rng, 0.0, 5.0));
    const Eigen::VectorXd u = NormalVector(rng, d, 3.0), v = NormalVector(rng, d, 3.0);
    const double lhs = (ProjectSimplex(u, set) - ProjectSimplex(v, set)).norm();
    expansion = std::max(expansion, lhs - (u - v).norm());
  }
  CheckResult r{"projections", oracle_gap <= 1e-9 && expansion <= 1e-12, ""};
  r.detail = "max |simplex - oracle| " + Sci(oracle_gap) +
             ", max expansion " + Sci(std::max(expansion, 0.0));
  return r;
}

CheckResult CheckGradients(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DispatchInstance> instances = {MakeFig1Fixture().instance};
  for (std::size_t n : {2, 5, 10}) instances.push_back(RandomDispatchInstance(n, rng));
  double worst = 0.0;
  std::size_t problems_checked = 0;
  for (const DispatchInstance& inst : instances) {
    for (const LocalProblem& problem : inst.LocalProblems(kDefaultDualBoxUpper)) {
      ++problems_checked;
      for (int k = 0; k < 100; ++k) {
        Eigen::VectorXd x(static_cast<Eigen::Index>(problem.dimension()));
        for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = Uniform(rng, -inst.demand(), 2 * inst.demand());
        const Eigen::VectorXd mu = problem.dual_box().Sample(rng);
        worst = std::max(worst, GradientMismatch(
                                    [&](const Eigen::VectorXd& v) { return Lagrangian(problem, v, mu); },
                                    x, GradXLagrangian(problem, x, mu)));
        worst = std::max(worst, GradientMismatch(
                                    [&](const Eigen::VectorXd& m) { return Lagrangian(problem, x, m); },
                                    mu, GradMuLagrangian(problem, x)));
      }
    }
  }
  CheckResult r{"gradients", worst <= 1e-6, ""};
  r.detail = std::to_string(problems_checked) + " local problems, max FD mismatch " + Sci(worst);
  return r;
}

CheckResult CheckDispatchOracle(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst_kkt = 0.0, worst_gap = -INFINITY;
  for (int k = 0; k < 1000; ++k) {
    const DispatchInstance inst = RandomDispatchInstance(UniformIndex(rng, 1, 10), rng);
    const DispatchOptimum opt = SolveCentralized(inst);
    worst_kkt = std::max(
        worst_kkt,
        ComputeKktResiduals(inst, opt.p_star, opt.lambda_star, opt.mu_min, opt.mu_max).Max());
    for (int j = 0; j < 1000; ++j) {
      const double sample = inst.Objective(RandomFeasibleDispatch(inst, rng));
      worst_gap = std::max(worst_gap, (opt.objective - sample) / (1.0 + std::abs(opt.objective)));
    }
  }
  CheckResult r{"dispatch_oracle", worst_kkt <= 1e-10 && worst_gap <= 1e-9, ""};
  r.detail = "max KKT residual " + Sci(worst_kkt) +
             ", max (oracle - sample) / (1 + |oracle|) " + Sci(worst_gap);
  return r;
}

CheckResult CheckFig1Run() {
  const ExperimentOutcome out = RunExperiment(Fig1Config());
  const RunDiagnostics& d = out.run.diagnostics;
  double err_after_1000 = 0.0;
  for (const TraceRecord& rec : out.run.trace.records) {
    if (rec.t < 1000) continue;
    err_after_1000 = std::max(err_after_1000,
                              *std::max_element(rec.rel_err_max.begin(), rec.rel_err_max.end()));
  }
  const auto& final_err = out.summary.final_max_relative_error;
  const double final_max = *std::max_element(final_err.begin(), final_err.end());
  const bool ok = err_after_1000 <= 0.04 && final_max <= 0.02 &&
                  d.max_eps_x_excess <= 0.0 && d.max_eps_mu_excess <= 0.0 &&
                  d.max_lyapunov_violation <= 0.0 && d.min_u >= -1e-9 &&
                  d.max_x_infeasibility <= 1e-10 && d.max_mu_infeasibility <= 1e-12 &&
                  d.max_weight_sum_error <= 1e-10 &&
                  out.summary.final_consensus_residual <= 1e-3;
  CheckResult r{"fig1_run", ok, ""};
  r.detail = "max rel err after t=1000 " + Sci(err_after_1000) + ", final " + Sci(final_max) +
             ", eps/bound (" + Sci(d.max_eps_x_ratio) + ", " + Sci(d.max_eps_mu_ratio) +
             "), Lyapunov slack " + Sci(d.max_lyapunov_violation) + ", min u " + Sci(d.min_u) +
             ", consensus " + Sci(out.summary.final_consensus_residual);
  return r;
}

std::vector<CheckResult> RunVerification(const VerifyOptions& options) {
  return {CheckProductLimits(options.seed),      CheckMixingFit(options.seed + 1),
          CheckProjections(options.seed + 2), CheckGradients(options.seed + 3),
          CheckDispatchOracle(options.seed + 4), CheckFig1Run()};
}

}  // namespace ppsgda
