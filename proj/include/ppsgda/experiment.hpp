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

// Experiment orchestration: JSON configuration files, the dispatch run they
// describe, the per-round CSV trace and the summary report.
//
// Configuration schema (unknown keys are rejected at every level):
//
//   {
//     "problem":  "fig1" | {"a": [...], "b": [...], "c": [...],
//                           "demand": D, "p_min": [...], "p_max": [...]},
//     "graph":    "fig1" | {"n": 4, "edges": [[1, 2], ...]}
//                        | {"generator": "ring" | "complete", "n": 4}
//                        | {"generator": "random", "n": 6, "seed": 1,
//                           "edge_probability": 0.3},
//     "schedule": {"c": 15, "gamma": 0.6},
//     "iterations": 4000,
//     "trace_stride": 10,
//     "mu_box_upper": 100,
//     "seed": 0,
//     "output": {"trace": "trace.csv", "summary": "summary.json"}
//   }
//
// Every key except "problem" and "graph" is optional and defaults to the
// values shown. Empty output paths disable the corresponding file.

#ifndef PPSGDA_EXPERIMENT_HPP_
#define PPSGDA_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ppsgda/dispatch.hpp"
#include "ppsgda/graph.hpp"
#include "ppsgda/pushsum_gda.hpp"

namespace ppsgda {

struct Fig1Preset {
  friend bool operator==(const Fig1Preset&, const Fig1Preset&) = default;
};

struct DispatchSpec {
  std::vector<double> a, b, c;
  double demand = 0.0;
  std::vector<double> p_min, p_max;

  friend bool operator==(const DispatchSpec&, const DispatchSpec&) = default;
};

struct EdgeListGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;

  friend bool operator==(const EdgeListGraph&, const EdgeListGraph&) = default;
};

struct GeneratedGraph {
  std::string generator;  // "ring", "complete" or "random"
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double edge_probability = 0.0;

  friend bool operator==(const GeneratedGraph&, const GeneratedGraph&) = default;
};

using ProblemSpec = std::variant<Fig1Preset, DispatchSpec>;
using GraphSpec = std::variant<Fig1Preset, EdgeListGraph, GeneratedGraph>;

struct ExperimentConfig {
  ProblemSpec problem = Fig1Preset{};
  GraphSpec graph = Fig1Preset{};
  double schedule_c = 15.0;
  double schedule_gamma = 0.6;
  std::size_t iterations = 4000;
  std::size_t trace_stride = 10;
  double mu_box_upper = kDefaultDualBoxUpper;
  std::uint64_t seed = 0;
  std::string trace_path;
  std::string summary_path;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// The preset matching MakeFig1Fixture(), 4000 iterations, stride 10.
ExperimentConfig Fig1Config();

// Throws Error(kIoError) if the file cannot be read and ConfigError naming the
// field for schema or range violations.
ExperimentConfig LoadConfig(const std::filesystem::path& path);
ExperimentConfig ParseConfig(std::string_view json_text);
std::string SerializeConfig(const ExperimentConfig& config);
void SaveConfig(const ExperimentConfig& config, const std::filesystem::path& path);

// Range checks plus the strong-connectivity and size-agreement checks that
// need the built objects. Throws ConfigError.
void ValidateConfig(const ExperimentConfig& config);

struct ResolvedExperiment {
  DispatchInstance instance;
  DirectedGraph graph;
  PerronMatrix perron;
  StepSizeSchedule schedule;
};

// Builds every object the config describes; throws ConfigError.
ResolvedExperiment Resolve(const ExperimentConfig& config);

struct SummaryReport {
  std::size_t iterations = 0;
  std::vector<double> final_max_relative_error;  // per agent
  // First iteration from which every later state stays under the threshold;
  // empty if the run never settles below it.
  std::optional<std::size_t> iterations_to_0_04;
  std::optional<std::size_t> iterations_to_0_01;
  double final_consensus_residual = 0.0;  // max over agents
  // Residuals of (x_bar, lambda_hat, mu) where lambda_hat averages the
  // agents' marginal-cost stationarity terms.
  KktResiduals final_kkt;
  DispatchOptimum optimum;
  double wall_clock_seconds = 0.0;
};

std::string SummaryToJson(const SummaryReport& report);
// Centralized optimum as JSON: p_star, lambda_star, mu_min, mu_max, objective.
std::string OptimumToJson(const DispatchOptimum& optimum);

struct ExperimentOutcome {
  SummaryReport summary;
  RunResult run;
};

// Runs the dispatch experiment against the lambda-iteration oracle with
// corner-exact gradient bounds and writes the trace/summary files named in
// the config. Throws Error(kIoError) on write failures.
ExperimentOutcome RunExperiment(const ExperimentConfig& config);

// CSV columns: t, alpha, then per agent i (1-based) rel_err_max_i,
// consensus_residual_i, eps_x_norm_i, eps_mu_norm_i, then v_t, u_t, c_t.
// Without an oracle the rel_err_max_i and Lyapunov columns are omitted.
// Numbers use 12 significant digits, independent of the C locale.
std::string FormatTraceCsv(const RunTrace& trace);
void WriteTraceCsv(const RunTrace& trace, const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Throws Error(kInvalidArgument) if the column is absent.
  std::size_t column(std::string_view name) const;
};

// Throws Error(kInvalidArgument) on ragged or non-numeric rows.
CsvTable ParseTraceCsv(std::string_view text);
CsvTable ReadTraceCsv(const std::filesystem::path& path);

std::string FormatNumber(double value);

}  // namespace ppsgda

#endif  // PPSGDA_EXPERIMENT_HPP_
