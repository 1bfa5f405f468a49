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

// Self-check suite behind the `verify` command. Every check is deterministic
// in the seed and reports one line of detail.

#ifndef PPSGDA_VERIFY_HPP_
#define PPSGDA_VERIFY_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ppsgda/dispatch.hpp"

namespace ppsgda {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 2026;
};

CheckResult CheckProductLimits(std::uint64_t seed);
CheckResult CheckMixingFit(std::uint64_t seed);
CheckResult CheckProjections(std::uint64_t seed);
CheckResult CheckGradients(std::uint64_t seed);
CheckResult CheckDispatchOracle(std::uint64_t seed);
CheckResult CheckFig1Run();

std::vector<CheckResult> RunVerification(const VerifyOptions& options = {});

// Random dispatch instance with n generators and a feasible demand.
DispatchInstance RandomDispatchInstance(std::size_t n, std::mt19937_64& rng);

// A random point of {p_min <= p <= p_max, sum p = D}: a uniform draw in the
// box shifted by the scalar that restores the balance.
Eigen::VectorXd RandomFeasibleDispatch(const DispatchInstance& inst,
                                       std::mt19937_64& rng);

// Second-largest eigenvalue modulus.
double SubdominantModulus(const Eigen::MatrixXd& p);

}  // namespace ppsgda

#endif  // PPSGDA_VERIFY_HPP_
