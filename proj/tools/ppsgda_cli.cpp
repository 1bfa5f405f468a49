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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ppsgda/ppsgda.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitError = 2;

struct ConfigDeleter {
  void operator()(ppsgda_config* c) const { ppsgda_config_destroy(c); }
};
struct ReportDeleter {
  void operator()(ppsgda_report* r) const { ppsgda_report_destroy(r); }
};
using ConfigPtr = std::unique_ptr<ppsgda_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<ppsgda_report, ReportDeleter>;

struct StatusError {
  ppsgda_status status;
  std::string message;
};

void Check(ppsgda_status status) {
  if (status != PPSGDA_OK) throw StatusError{status, ppsgda_last_error()};
}

// Takes ownership of a library string.
std::string Take(char* s) {
  std::string out(s);
  ppsgda_string_free(s);
  return out;
}

ConfigPtr LoadConfig(const std::string& path) {
  ppsgda_config* raw = nullptr;
  Check(ppsgda_config_load(path.c_str(), &raw));
  return ConfigPtr(raw);
}

int RunAndReport(ppsgda_config* config, const std::optional<std::string>& trace,
                 const std::optional<std::string>& summary) {
  Check(ppsgda_config_set_output(config, trace ? trace->c_str() : nullptr,
                                 summary ? summary->c_str() : nullptr));
  ppsgda_report* raw = nullptr;
  Check(ppsgda_run(config, &raw));
  ReportPtr report(raw);
  char* json = nullptr;
  Check(ppsgda_report_summary_json(report.get(), &json));
  std::fputs(Take(json).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projected push-sum gradient descent-ascent for economic dispatch"};
  app.require_subcommand(1);

  std::string run_config;
  std::optional<std::string> run_trace, run_summary;
  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", run_config, "JSON configuration file")->required();
  run->add_option("--trace", run_trace, "Trace CSV path (overrides the config)");
  run->add_option("--summary", run_summary, "Summary JSON path (overrides the config)");

  std::optional<std::string> fig1_trace = std::string("fig1_trace.csv");
  std::optional<std::string> fig1_summary = std::string("fig1_summary.json");
  CLI::App* fig1 = app.add_subcommand("fig1", "Run the four-generator reference experiment");
  fig1->add_option("--trace", fig1_trace, "Trace CSV path")->capture_default_str();
  fig1->add_option("--summary", fig1_summary, "Summary JSON path")->capture_default_str();

  std::uint64_t verify_seed = 2026;
  CLI::App* verify = app.add_subcommand("verify", "Run the property self-check suite");
  verify->add_option("--seed", verify_seed, "Seed for the random test cases")
      ->capture_default_str();

  std::string oracle_config;
  CLI::App* oracle = app.add_subcommand("oracle", "Print the centralized optimum");
  oracle->add_option("config", oracle_config, "JSON configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ConfigPtr config = LoadConfig(run_config);
      return RunAndReport(config.get(), run_trace, run_summary);
    }
    if (*fig1) {
      ppsgda_config* raw = nullptr;
      Check(ppsgda_config_fig1(&raw));
      ConfigPtr config(raw);
      return RunAndReport(config.get(), fig1_trace, fig1_summary);
    }
    if (*verify) {
      char* text = nullptr;
      int all_passed = 0;
      Check(ppsgda_verify(verify_seed, &text, &all_passed));
      std::fputs(Take(text).c_str(), stdout);
      if (!all_passed) {
        std::fputs("error: verification failed\n", stderr);
        return kExitFailure;
      }
      return 0;
    }
    if (*oracle) {
      ConfigPtr config = LoadConfig(oracle_config);
      char* json = nullptr;
      Check(ppsgda_oracle_json(config.get(), &json));
      std::fputs(Take(json).c_str(), stdout);
      return 0;
    }
  } catch (const StatusError& e) {
    std::fprintf(stderr, "error: %s: %s\n", ppsgda_status_name(e.status), e.message.c_str());
    return kExitError;
  }
  return kExitError;
}
