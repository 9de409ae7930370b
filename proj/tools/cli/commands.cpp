#include "cli/commands.hpp"

#include <fstream>
#include <ostream>

#include "stagesim/model_config.hpp"
#include "stagesim/scenario.hpp"
#include "stagesim/simulation.hpp"

namespace stagesim::cli {

namespace {

void writeFile(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  body(out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const RunAborted& e) {
    err << "run aborted: " << e.what() << '\n';
    return kExitAborted;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

}  // namespace

RunOutput executeRun(const RunSpec& spec) {
  if (spec.pollPeriod < 0) throw ConfigError("poll period must be >= 0");
  if (spec.maxTicks < 1) throw ConfigError("max ticks must be >= 1");

  Simulation sim(spec.seed);
  Model model;
  try {
    model = spec.chain ? buildChain(sim, *spec.chain, ScenarioConfig{})
                       : buildRegisteredModel(sim, spec.model, spec.seed, spec.circleci);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  RunOutput output;
  output.label = spec.label();
  output.scenario = resolveScenario(model.scenario, spec);
  std::optional<Scenario> scenario;
  try {
    scenario.emplace(sim, output.scenario);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }

  RunOptions options;
  options.maxTicks = spec.maxTicks;
  options.pollPeriod = spec.pollPeriod;
  output.run = scenario->run(*model.entry, options);
  output.summary = summarize(sim.metrics(), output.run);
  output.metrics = sim.metrics();
  return output;
}

int runCommand(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunOutput result = executeRun(spec);
    writeReports(out, {result.label}, {result.summary}, spec.format);
    if (!spec.summaryPath.empty()) {
      writeFile(spec.summaryPath, [&](std::ostream& file) { file << toJson(result.summary); });
    }
    if (!spec.samplesPath.empty()) {
      writeFile(spec.samplesPath, [&](std::ostream& file) {
        writeRecords(file, result.metrics, result.run, result.summary);
      });
    }
    return static_cast<int>(kExitOk);
  });
}

int compareCommand(const std::vector<RunSpec>& specs, ReportFormat format, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    if (specs.size() < 2) throw ConfigError("compare needs at least two models");
    std::vector<std::string> labels;
    std::vector<SummaryReport> reports;
    std::optional<ScenarioConfig> first;
    for (const RunSpec& spec : specs) {
      RunOutput result = executeRun(spec);
      if (!first) {
        first = result.scenario;
      } else if (!(*first == result.scenario)) {
        err << "warning: " << result.label << " ran a different scenario than " << labels.front()
            << "; columns are not directly comparable\n";
      }
      labels.push_back(result.label);
      reports.push_back(result.summary);
    }
    writeReports(out, labels, reports, format);
    return static_cast<int>(kExitOk);
  });
}

}  // namespace stagesim::cli
