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

#include "ppsgda/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "ppsgda/error.hpp"

namespace ppsgda {
namespace {

using Json = nlohmann::json;

// Reads one JSON object, remembering which keys were consumed so that
// anything left over can be rejected.
class ObjectReader {
 public:
  ObjectReader(const Json& value, std::string path)
      : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string FieldPath(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool Has(std::string_view key) const { return value_.contains(std::string(key)); }

  const Json& Get(std::string_view key) {
    const std::string k(key);
    seen_.insert(k);
    if (!value_.contains(k)) throw ConfigError(FieldPath(key), "missing required field");
    return value_.at(k);
  }

  double Number(std::string_view key) {
    const Json& v = Get(key);
    if (!v.is_number()) throw ConfigError(FieldPath(key), "expected a number");
    return v.get<double>();
  }

  double Number(std::string_view key, double fallback) {
    return Has(key) ? Number(key) : fallback;
  }

  std::uint64_t Unsigned(std::string_view key) {
    const Json& v = Get(key);
    if (!v.is_number_unsigned()) {
      throw ConfigError(FieldPath(key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::uint64_t Unsigned(std::string_view key, std::uint64_t fallback) {
    return Has(key) ? Unsigned(key) : fallback;
  }

  std::string String(std::string_view key) {
    const Json& v = Get(key);
    if (!v.is_string()) throw ConfigError(FieldPath(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> Numbers(std::string_view key) {
    const Json& v = Get(key);
    if (!v.is_array()) throw ConfigError(FieldPath(key), "expected an array of numbers");
    std::vector<double> out;
    for (const Json& item : v) {
      if (!item.is_number()) throw ConfigError(FieldPath(key), "expected an array of numbers");
      out.push_back(item.get<double>());
    }
    return out;
  }

  void RejectUnknown() const {
    for (const auto& [key, _] : value_.items()) {
      if (!seen_.contains(key)) throw ConfigError(FieldPath(key), "unknown field");
    }
  }

 private:
  const Json& value_;
  std::string path_;
  std::set<std::string> seen_;
};

ProblemSpec ParseProblem(const Json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "fig1") return Fig1Preset{};
    throw ConfigError("problem", "unknown preset '" + value.get<std::string>() + "'");
  }
  ObjectReader r(value, "problem");
  DispatchSpec spec;
  spec.a = r.Numbers("a");
  spec.b = r.Numbers("b");
  spec.c = r.Numbers("c");
  spec.demand = r.Number("demand");
  spec.p_min = r.Numbers("p_min");
  spec.p_max = r.Numbers("p_max");
  r.RejectUnknown();
  return spec;
}

GraphSpec ParseGraph(const Json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "fig1") return Fig1Preset{};
    throw ConfigError("graph", "unknown preset '" + value.get<std::string>() + "'");
  }
  ObjectReader r(value, "graph");
  if (r.Has("generator")) {
    GeneratedGraph g;
    g.generator = r.String("generator");
    g.n = r.Unsigned("n");
    if (g.generator == "random") {
      g.seed = r.Unsigned("seed", 0);
      g.edge_probability = r.Number("edge_probability");
    } else if (g.generator != "ring" && g.generator != "complete") {
      throw ConfigError("graph.generator", "expected ring, complete or random");
    }
    r.RejectUnknown();
    return g;
  }
  EdgeListGraph g;
  g.n = r.Unsigned("n");
  const Json& edges = r.Get("edges");
  if (!edges.is_array()) throw ConfigError("graph.edges", "expected an array of [from, to] pairs");
  for (const Json& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
        !e[1].is_number_unsigned()) {
      throw ConfigError("graph.edges", "expected an array of [from, to] pairs");
    }
    g.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
  }
  r.RejectUnknown();
  return g;
}

Json ToJson(const ExperimentConfig& config) {
  Json j;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Fig1Preset>) {
          j["problem"] = "fig1";
        } else {
          j["problem"] = {{"a", p.a},         {"b", p.b},
                          {"c", p.c},         {"demand", p.demand},
                          {"p_min", p.p_min}, {"p_max", p.p_max}};
        }
      },
      config.problem);
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Fig1Preset>) {
          j["graph"] = "fig1";
        } else if constexpr (std::is_same_v<T, EdgeListGraph>) {
          Json edges = Json::array();
          for (const Edge& e : g.edges) edges.push_back({e.from, e.to});
          j["graph"] = {{"n", g.n}, {"edges", edges}};
        } else {
          j["graph"] = {{"generator", g.generator}, {"n", g.n}};
          if (g.generator == "random") {
            j["graph"]["seed"] = g.seed;
            j["graph"]["edge_probability"] = g.edge_probability;
          }
        }
      },
      config.graph);
  j["schedule"] = {{"c", config.schedule_c}, {"gamma", config.schedule_gamma}};
  j["iterations"] = config.iterations;
  j["trace_stride"] = config.trace_stride;
  j["mu_box_upper"] = config.mu_box_upper;
  j["seed"] = config.seed;
  j["output"] = {{"trace", config.trace_path}, {"summary", config.summary_path}};
  return j;
}

DispatchInstance BuildInstance(const ProblemSpec& spec) {
  if (std::holds_alternative<Fig1Preset>(spec)) return MakeFig1Fixture().instance;
  const auto& d = std::get<DispatchSpec>(spec);
  const std::size_t n = d.a.size();
  if (n == 0) throw ConfigError("problem.a", "needs at least one generator");
  auto vec = [n](const std::vector<double>& v, const char* field) {
    if (v.size() != n) {
      throw ConfigError(std::string("problem.") + field,
                        "expected " + std::to_string(n) + " entries");
    }
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(n)).eval();
  };
  try {
    return DispatchInstance::Build(vec(d.a, "a"), vec(d.b, "b"), vec(d.c, "c"),
                                   d.demand, vec(d.p_min, "p_min"),
                                   vec(d.p_max, "p_max"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kNotStronglyConvex: throw ConfigError("problem.a", e.what());
      case ErrorCode::kInfeasibleDemand: throw ConfigError("problem.demand", e.what());
      default: throw ConfigError("problem", e.what());
    }
  }
}

DirectedGraph BuildGraph(const GraphSpec& spec) {
  try {
    if (std::holds_alternative<Fig1Preset>(spec)) return MakeFig1Fixture().graph;
    if (const auto* list = std::get_if<EdgeListGraph>(&spec)) {
      if (list->n == 0) throw ConfigError("graph.n", "needs at least one vertex");
      return DirectedGraph::Build(list->n, list->edges);
    }
    const auto& gen = std::get<GeneratedGraph>(spec);
    if (gen.n == 0) throw ConfigError("graph.n", "needs at least one vertex");
    if (gen.generator == "ring") return RingGraph(gen.n);
    if (gen.generator == "complete") return CompleteGraph(gen.n);
    if (gen.generator == "random") {
      if (!(gen.edge_probability >= 0.0 && gen.edge_probability <= 1.0)) {
        throw ConfigError("graph.edge_probability", "must lie in [0, 1]");
      }
      return RandomStronglyConnectedGraph(gen.n, gen.edge_probability, gen.seed);
    }
    throw ConfigError("graph.generator", "expected ring, complete or random");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.code() == ErrorCode::kInvalidEdge ? "graph.edges" : "graph",
                      e.what());
  }
}

StepSizeSchedule BuildSchedule(const ExperimentConfig& config) {
  if (!(config.schedule_c > 0.0)) throw ConfigError("schedule.c", "must be positive");
  if (!(config.schedule_gamma > 0.5 && config.schedule_gamma <= 1.0)) {
    throw ConfigError("schedule.gamma", "must lie in (0.5, 1]");
  }
  return StepSizeSchedule(config.schedule_c, config.schedule_gamma);
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIoError, "failed writing '" + path.string() + "'");
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json VectorJson(const Eigen::VectorXd& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

Json KktJson(const KktResiduals& r) {
  return {{"stationarity", r.stationarity},
          {"primal_violation", r.primal_violation},
          {"dual_negativity", r.dual_negativity},
          {"complementarity", r.complementarity}};
}

Json OptimumJsonValue(const DispatchOptimum& o) {
  return {{"p_star", VectorJson(o.p_star)},
          {"lambda_star", o.lambda_star},
          {"mu_min", VectorJson(o.mu_min)},
          {"mu_max", VectorJson(o.mu_max)},
          {"objective", o.objective}};
}

std::optional<std::size_t> SettlingIteration(const RunTrace& trace,
                                             const std::vector<double>& final_errors,
                                             std::size_t iterations, double threshold) {
  if (*std::max_element(final_errors.begin(), final_errors.end()) > threshold) {
    return std::nullopt;
  }
  std::size_t settled = iterations;
  for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
    if (it->rel_err_max.empty()) break;
    if (*std::max_element(it->rel_err_max.begin(), it->rel_err_max.end()) > threshold) break;
    settled = it->t;
  }
  return settled;
}

}  // namespace

ExperimentConfig Fig1Config() { return ExperimentConfig{}; }

ExperimentConfig ParseConfig(std::string_view json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  ObjectReader r(root, "");
  ExperimentConfig config;
  config.problem = ParseProblem(r.Get("problem"));
  config.graph = ParseGraph(r.Get("graph"));
  if (r.Has("schedule")) {
    ObjectReader s(r.Get("schedule"), "schedule");
    config.schedule_c = s.Number("c", config.schedule_c);
    config.schedule_gamma = s.Number("gamma", config.schedule_gamma);
    s.RejectUnknown();
  }
  config.iterations = r.Unsigned("iterations", config.iterations);
  config.trace_stride = r.Unsigned("trace_stride", config.trace_stride);
  config.mu_box_upper = r.Number("mu_box_upper", config.mu_box_upper);
  config.seed = r.Unsigned("seed", config.seed);
  if (r.Has("output")) {
    ObjectReader o(r.Get("output"), "output");
    if (o.Has("trace")) config.trace_path = o.String("trace");
    if (o.Has("summary")) config.summary_path = o.String("summary");
    o.RejectUnknown();
  }
  r.RejectUnknown();
  ValidateConfig(config);
  return config;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  return ParseConfig(ReadFile(path));
}

std::string SerializeConfig(const ExperimentConfig& config) {
  return ToJson(config).dump(2) + "\n";
}

void SaveConfig(const ExperimentConfig& config, const std::filesystem::path& path) {
  WriteFile(path, SerializeConfig(config));
}

void ValidateConfig(const ExperimentConfig& config) { Resolve(config); }

ResolvedExperiment Resolve(const ExperimentConfig& config) {
  if (config.iterations == 0) throw ConfigError("iterations", "must be >= 1");
  if (config.trace_stride == 0) throw ConfigError("trace_stride", "must be >= 1");
  if (!(config.mu_box_upper > 0.0) || !std::isfinite(config.mu_box_upper)) {
    throw ConfigError("mu_box_upper", "must be positive and finite");
  }
  StepSizeSchedule schedule = BuildSchedule(config);
  DispatchInstance instance = BuildInstance(config.problem);
  DirectedGraph graph = BuildGraph(config.graph);
  if (graph.size() != instance.size()) {
    throw ConfigError("graph.n", "graph has " + std::to_string(graph.size()) +
                                     " vertices but the problem has " +
                                     std::to_string(instance.size()) + " generators");
  }
  if (!IsStronglyConnected(graph)) {
    throw ConfigError("graph", "communication graph is not strongly connected");
  }
  const DispatchOptimum optimum = SolveCentralized(instance);
  if (std::max(optimum.mu_min.maxCoeff(), optimum.mu_max.maxCoeff()) > config.mu_box_upper) {
    throw ConfigError("mu_box_upper", "dual box does not contain the optimal multipliers");
  }
  PerronMatrix perron = PerronFromOutDegrees(graph);
  return ResolvedExperiment{std::move(instance), std::move(graph), std::move(perron),
                            schedule};
}

std::string SummaryToJson(const SummaryReport& report) {
  Json j;
  j["iterations"] = report.iterations;
  j["final_max_relative_error"] = report.final_max_relative_error;
  j["max_final_relative_error"] =
      report.final_max_relative_error.empty()
          ? 0.0
          : *std::max_element(report.final_max_relative_error.begin(),
                              report.final_max_relative_error.end());
  j["iterations_to_0_04"] = report.iterations_to_0_04 ? Json(*report.iterations_to_0_04) : Json();
  j["iterations_to_0_01"] = report.iterations_to_0_01 ? Json(*report.iterations_to_0_01) : Json();
  j["final_consensus_residual"] = report.final_consensus_residual;
  j["final_kkt"] = KktJson(report.final_kkt);
  j["optimum"] = OptimumJsonValue(report.optimum);
  j["wall_clock_seconds"] = report.wall_clock_seconds;
  return j.dump(2) + "\n";
}

std::string OptimumToJson(const DispatchOptimum& optimum) {
  return OptimumJsonValue(optimum).dump(2) + "\n";
}

ExperimentOutcome RunExperiment(const ExperimentConfig& config) {
  ResolvedExperiment resolved = Resolve(config);
  const DispatchInstance& inst = resolved.instance;
  const std::vector<LocalProblem> problems = inst.LocalProblems(config.mu_box_upper);
  const ScaledSimplex x_set = inst.GlobalSet();
  const DispatchOptimum optimum = SolveCentralized(inst);

  RunConfig run_config;
  run_config.iterations = config.iterations;
  run_config.schedule = resolved.schedule;
  run_config.trace_stride = config.trace_stride;
  run_config.seed = config.seed;

  const auto start = std::chrono::steady_clock::now();
  ExperimentOutcome outcome;
  outcome.run = Run(run_config, resolved.perron, problems, x_set, optimum.AsReference(),
                    CornerGradientBounds(inst, config.mu_box_upper));
  const auto stop = std::chrono::steady_clock::now();

  SummaryReport& summary = outcome.summary;
  summary.iterations = config.iterations;
  summary.optimum = optimum;
  summary.wall_clock_seconds = std::chrono::duration<double>(stop - start).count();
  const auto& final_states = outcome.run.final_states;
  for (const AgentState& s : final_states) {
    summary.final_max_relative_error.push_back(MaxRelativeError(s.x, optimum.p_star));
  }
  summary.iterations_to_0_04 = SettlingIteration(
      outcome.run.trace, summary.final_max_relative_error, config.iterations, 0.04);
  summary.iterations_to_0_01 = SettlingIteration(
      outcome.run.trace, summary.final_max_relative_error, config.iterations, 0.01);
  const std::vector<double> residuals = ConsensusResiduals(final_states);
  summary.final_consensus_residual = *std::max_element(residuals.begin(), residuals.end());

  const Eigen::VectorXd x_bar = AverageEstimate(final_states);
  const auto n = static_cast<Eigen::Index>(inst.size());
  Eigen::VectorXd mu_min(n), mu_max(n);
  double lambda_hat = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    mu_min[i] = final_states[static_cast<std::size_t>(i)].mu[0];
    mu_max[i] = final_states[static_cast<std::size_t>(i)].mu[1];
    lambda_hat += inst.MarginalCost(static_cast<std::size_t>(i), x_bar[i]) - mu_min[i] + mu_max[i];
  }
  lambda_hat /= static_cast<double>(n);
  summary.final_kkt = ComputeKktResiduals(inst, x_bar, lambda_hat, mu_min, mu_max);

  if (!config.trace_path.empty()) WriteTraceCsv(outcome.run.trace, config.trace_path);
  if (!config.summary_path.empty()) WriteFile(config.summary_path, SummaryToJson(summary));
  return outcome;
}

std::string FormatNumber(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, 12);
  return std::string(buffer, result.ptr);
}

std::string FormatTraceCsv(const RunTrace& trace) {
  std::string out = "t,alpha";
  for (std::size_t i = 1; i <= trace.agents; ++i) {
    const std::string suffix = "_" + std::to_string(i);
    if (trace.has_oracle) out += ",rel_err_max" + suffix;
    out += ",consensus_residual" + suffix + ",eps_x_norm" + suffix + ",eps_mu_norm" + suffix;
  }
  if (trace.has_oracle) out += ",v_t,u_t,c_t";
  out += '\n';

  for (const TraceRecord& r : trace.records) {
    out += std::to_string(r.t);
    out += ',';
    out += FormatNumber(r.alpha);
    for (std::size_t i = 0; i < trace.agents; ++i) {
      if (trace.has_oracle) out += ',' + FormatNumber(r.rel_err_max.at(i));
      out += ',' + FormatNumber(r.consensus_residual.at(i));
      out += ',' + FormatNumber(r.eps_x_norm.at(i));
      out += ',' + FormatNumber(r.eps_mu_norm.at(i));
    }
    if (trace.has_oracle) {
      const LyapunovTerms terms = r.lyapunov.value_or(LyapunovTerms{});
      out += ',' + FormatNumber(terms.v) + ',' + FormatNumber(terms.u) + ',' +
             FormatNumber(terms.c);
    }
    out += '\n';
  }
  return out;
}

void WriteTraceCsv(const RunTrace& trace, const std::filesystem::path& path) {
  WriteFile(path, FormatTraceCsv(trace));
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw Error(ErrorCode::kInvalidArgument, "no column '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable ParseTraceCsv(std::string_view text) {
  auto split = [](std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return cells;
  };

  CsvTable table;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (first) {
      for (auto c : cells) table.header.emplace_back(c);
      first = false;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw Error(ErrorCode::kInvalidArgument, "ragged CSV row");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto c : cells) {
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), value);
      if (ec != std::errc() || ptr != c.data() + c.size()) {
        throw Error(ErrorCode::kInvalidArgument, "non-numeric CSV cell '" + std::string(c) + "'");
      }
      row.push_back(value);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable ReadTraceCsv(const std::filesystem::path& path) {
  return ParseTraceCsv(ReadFile(path));
}

}  // namespace ppsgda
