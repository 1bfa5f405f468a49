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

#include "ppsgda/error.hpp"

namespace ppsgda {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidEdge: return "InvalidEdge";
    case ErrorCode::kNotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::kInconsistentWeights: return "InconsistentWeights";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kAlreadyMixed: return "AlreadyMixed";
    case ErrorCode::kInvalidSet: return "InvalidSet";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kDimensionError: return "DimensionError";
    case ErrorCode::kInvalidSchedule: return "InvalidSchedule";
    case ErrorCode::kInfeasibleDemand: return "InfeasibleDemand";
    case ErrorCode::kNotStronglyConvex: return "NotStronglyConvex";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNotConverged: return "NotConverged";
  }
  return "Unknown";
}

}  // namespace ppsgda
