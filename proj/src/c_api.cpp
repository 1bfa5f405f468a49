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

#include "ppsgda/ppsgda.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "ppsgda/dispatch.hpp"
#include "ppsgda/error.hpp"
#include "ppsgda/experiment.hpp"
#include "ppsgda/graph.hpp"
#include "ppsgda/verify.hpp"

struct ppsgda_graph {
  ppsgda::DirectedGraph graph;
};

struct ppsgda_dispatch {
  ppsgda::DispatchInstance instance;
};

struct ppsgda_config {
  ppsgda::ExperimentConfig config;
};

struct ppsgda_report {
  ppsgda::ExperimentOutcome outcome;
};

namespace {

thread_local std::string last_error;

ppsgda_status Fail(ppsgda_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
ppsgda_status Guard(F&& body) {
  try {
    body();
    return PPSGDA_OK;
  } catch (const ppsgda::Error& e) {
    return Fail(static_cast<ppsgda_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(PPSGDA_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return Fail(PPSGDA_INTERNAL_ERROR, e.what());
  }
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Require(bool condition, const char* what) {
  if (!condition) throw ppsgda::Error(ppsgda::ErrorCode::kInvalidArgument, what);
}

Eigen::VectorXd ToVector(const double* data, size_t n) {
  Require(data != nullptr, "null coefficient array");
  return Eigen::Map<const Eigen::VectorXd>(data, static_cast<Eigen::Index>(n));
}

void CopyOut(const Eigen::VectorXd& v, double* out) {
  if (out != nullptr) std::copy(v.data(), v.data() + v.size(), out);
}

}  // namespace

extern "C" {

const char* ppsgda_last_error(void) { return last_error.c_str(); }

const char* ppsgda_status_name(ppsgda_status status) {
  if (status == PPSGDA_OK) return "Ok";
  if (status == PPSGDA_INTERNAL_ERROR) return "InternalError";
  if (status >= PPSGDA_INVALID_ARGUMENT && status <= PPSGDA_NOT_CONVERGED) {
    return ppsgda::ErrorCodeName(static_cast<ppsgda::ErrorCode>(status)).data();
  }
  return "Unknown";
}

void ppsgda_string_free(char* s) { std::free(s); }

ppsgda_status ppsgda_graph_create(size_t n, const size_t* from, const size_t* to,
                                  size_t edge_count, ppsgda_graph** out) {
  return Guard([&] {
    Require(out != nullptr, "null output handle");
    Require(edge_count == 0 || (from != nullptr && to != nullptr), "null edge arrays");
    std::vector<ppsgda::Edge> edges(edge_count);
    for (size_t k = 0; k < edge_count; ++k) edges[k] = {from[k], to[k]};
    *out = new ppsgda_graph{ppsgda::DirectedGraph::Build(n, edges)};
  });
}

ppsgda_status ppsgda_graph_generate(const char* generator, size_t n, double q,
                                    uint64_t seed, ppsgda_graph** out) {
  return Guard([&] {
    Require(out != nullptr && generator != nullptr, "null argument");
    Require(n > 0, "graph needs at least one vertex");
    const std::string name(generator);
    if (name == "ring") {
      *out = new ppsgda_graph{ppsgda::RingGraph(n)};
    } else if (name == "complete") {
      *out = new ppsgda_graph{ppsgda::CompleteGraph(n)};
    } else if (name == "random") {
      Require(q >= 0.0 && q <= 1.0, "edge probability must lie in [0, 1]");
      *out = new ppsgda_graph{ppsgda::RandomStronglyConnectedGraph(n, q, seed)};
    } else {
      throw ppsgda::Error(ppsgda::ErrorCode::kInvalidArgument,
                          "unknown generator '" + name + "'");
    }
  });
}

size_t ppsgda_graph_size(const ppsgda_graph* graph) {
  return graph == nullptr ? 0 : graph->graph.size();
}

ppsgda_status ppsgda_graph_is_strongly_connected(const ppsgda_graph* graph, int* out) {
  return Guard([&] {
    Require(graph != nullptr && out != nullptr, "null argument");
    *out = ppsgda::IsStronglyConnected(graph->graph) ? 1 : 0;
  });
}

ppsgda_status ppsgda_graph_perron(const ppsgda_graph* graph, double* entries,
                                  double* perron_vector) {
  return Guard([&] {
    Require(graph != nullptr, "null graph");
    const ppsgda::PerronMatrix p = ppsgda::PerronFromOutDegrees(graph->graph);
    if (entries != nullptr) {
      const Eigen::Index n = p.entries.rows();
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) entries[i * n + j] = p.entries(i, j);
      }
    }
    CopyOut(p.perron_vector, perron_vector);
  });
}

void ppsgda_graph_destroy(ppsgda_graph* graph) { delete graph; }

ppsgda_status ppsgda_dispatch_create(size_t n, const double* a, const double* b,
                                     const double* c, double demand,
                                     const double* p_min, const double* p_max,
                                     ppsgda_dispatch** out) {
  return Guard([&] {
    Require(out != nullptr, "null output handle");
    *out = new ppsgda_dispatch{ppsgda::DispatchInstance::Build(
        ToVector(a, n), ToVector(b, n), ToVector(c, n), demand, ToVector(p_min, n),
        ToVector(p_max, n))};
  });
}

size_t ppsgda_dispatch_size(const ppsgda_dispatch* inst) {
  return inst == nullptr ? 0 : inst->instance.size();
}

ppsgda_status ppsgda_dispatch_solve(const ppsgda_dispatch* inst, double* p_star,
                                    double* lambda_star, double* mu_min,
                                    double* mu_max, double* objective) {
  return Guard([&] {
    Require(inst != nullptr, "null instance");
    const ppsgda::DispatchOptimum opt = ppsgda::SolveCentralized(inst->instance);
    CopyOut(opt.p_star, p_star);
    CopyOut(opt.mu_min, mu_min);
    CopyOut(opt.mu_max, mu_max);
    if (lambda_star != nullptr) *lambda_star = opt.lambda_star;
    if (objective != nullptr) *objective = opt.objective;
  });
}

void ppsgda_dispatch_destroy(ppsgda_dispatch* inst) { delete inst; }

ppsgda_status ppsgda_config_load(const char* path, ppsgda_config** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new ppsgda_config{ppsgda::LoadConfig(path)};
  });
}

ppsgda_status ppsgda_config_parse(const char* json, ppsgda_config** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    *out = new ppsgda_config{ppsgda::ParseConfig(json)};
  });
}

ppsgda_status ppsgda_config_fig1(ppsgda_config** out) {
  return Guard([&] {
    Require(out != nullptr, "null output handle");
    *out = new ppsgda_config{ppsgda::Fig1Config()};
  });
}

ppsgda_status ppsgda_config_set_output(ppsgda_config* config, const char* trace_path,
                                       const char* summary_path) {
  return Guard([&] {
    Require(config != nullptr, "null config");
    if (trace_path != nullptr) config->config.trace_path = trace_path;
    if (summary_path != nullptr) config->config.summary_path = summary_path;
  });
}

ppsgda_status ppsgda_config_to_json(const ppsgda_config* config, char** out) {
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "null argument");
    *out = CopyString(ppsgda::SerializeConfig(config->config));
  });
}

void ppsgda_config_destroy(ppsgda_config* config) { delete config; }

ppsgda_status ppsgda_run(const ppsgda_config* config, ppsgda_report** out) {
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "null argument");
    *out = new ppsgda_report{ppsgda::RunExperiment(config->config)};
  });
}

ppsgda_status ppsgda_report_summary_json(const ppsgda_report* report, char** out) {
  return Guard([&] {
    Require(report != nullptr && out != nullptr, "null argument");
    *out = CopyString(ppsgda::SummaryToJson(report->outcome.summary));
  });
}

ppsgda_status ppsgda_report_trace_csv(const ppsgda_report* report, char** out) {
  return Guard([&] {
    Require(report != nullptr && out != nullptr, "null argument");
    *out = CopyString(ppsgda::FormatTraceCsv(report->outcome.run.trace));
  });
}

ppsgda_status ppsgda_report_max_final_error(const ppsgda_report* report, double* out) {
  return Guard([&] {
    Require(report != nullptr && out != nullptr, "null argument");
    const auto& errors = report->outcome.summary.final_max_relative_error;
    *out = errors.empty() ? 0.0 : *std::max_element(errors.begin(), errors.end());
  });
}

void ppsgda_report_destroy(ppsgda_report* report) { delete report; }

ppsgda_status ppsgda_oracle_json(const ppsgda_config* config, char** out) {
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "null argument");
    const ppsgda::ResolvedExperiment resolved = ppsgda::Resolve(config->config);
    *out = CopyString(ppsgda::OptimumToJson(ppsgda::SolveCentralized(resolved.instance)));
  });
}

ppsgda_status ppsgda_verify(uint64_t seed, char** report, int* all_passed) {
  return Guard([&] {
    Require(report != nullptr && all_passed != nullptr, "null argument");
    std::string text;
    bool ok = true;
    for (const ppsgda::CheckResult& r : ppsgda::RunVerification({seed})) {
      ok = ok && r.passed;
      text += (r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail + "\n";
    }
    *report = CopyString(text);
    *all_passed = ok ? 1 : 0;
  });
}

}  // extern "C"
