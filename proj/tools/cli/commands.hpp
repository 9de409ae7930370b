#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/run_spec.hpp"
#include "stagesim/metrics.hpp"
#include "stagesim/run_result.hpp"
#include "stagesim/summary.hpp"

namespace stagesim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntimeError = 1,
  kExitConfigError = 2,
  kExitAborted = 3,
};

struct RunOutput {
  std::string label;
  ScenarioConfig scenario;
  RunResult run;
  SummaryReport summary;
  MetricsStore metrics;
};

/// Builds the model, drives its scenario to drain, and summarizes.
/// Throws ConfigError for bad specs and RunAborted past the tick budget.
RunOutput executeRun(const RunSpec& spec);

/// Runs one spec, prints its summary to `out` and writes any requested
/// summary/samples files. Returns an ExitCode.
int runCommand(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Runs each spec in order and prints one column per run. Needs at least
/// two specs; differing scenarios only produce a warning on `err`.
int compareCommand(const std::vector<RunSpec>& specs, ReportFormat format, std::ostream& out,
                   std::ostream& err);

}  // namespace stagesim::cli
