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

#ifndef PPSGDA_ERROR_HPP_
#define PPSGDA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ppsgda {

// Every failure raised by the library carries one of these codes. The C API
// maps them one-to-one onto ppsgda_status values.
enum class ErrorCode {
  kInvalidArgument = 1,
  kInvalidEdge,
  kNotStronglyConnected,
  kInconsistentWeights,
  kInvalidRange,
  kAlreadyMixed,
  kInvalidSet,
  kTooLarge,
  kDimensionError,
  kInvalidSchedule,
  kInfeasibleDemand,
  kNotStronglyConvex,
  kConfigError,
  kIoError,
  kNotConverged,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Configuration errors additionally name the offending field, e.g.
// "schedule.gamma".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(ErrorCode::kConfigError, field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ppsgda

#endif  // PPSGDA_ERROR_HPP_
