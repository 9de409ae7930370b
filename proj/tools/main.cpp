#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/run_spec.hpp"
#include "stagesim/models/circleci.hpp"

namespace {

using stagesim::RateRule;
using stagesim::Tick;
using namespace stagesim::cli;

// Flags shared by `run` and `compare`. Only flags the user actually passed
// override the model or config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> events;
  std::optional<double> rate;
  std::optional<Tick> rampEvery;
  std::optional<double> rampDelta;
  bool noRamp = false;
  std::optional<double> keyspaceMean;
  std::optional<double> keyspaceStd;
  std::optional<Tick> pollPeriod;
  std::optional<Tick> maxTicks;

  void attach(CLI::App& app) {
    app.add_option("--seed", seed, "Random seed (runs are reproducible per seed)");
    app.add_option("--events", events, "Total events to inject");
    app.add_option("--rate", rate, "Initial arrival rate, events per 1000 ticks");
    app.add_option("--ramp-every", rampEvery, "Ramp period in ticks (with --ramp-delta)");
    app.add_option("--ramp-delta", rampDelta, "Rate increase per ramp period");
    app.add_flag("--no-ramp", noRamp, "Hold the arrival rate constant");
    app.add_option("--keyspace-mean", keyspaceMean, "Mean of the discrete normal keyspace");
    app.add_option("--keyspace-std", keyspaceStd, "Std deviation of the keyspace");
    app.add_option("--poll-period", pollPeriod, "Entry queue depth sampling period (0 = off)");
    app.add_option("--max-ticks", maxTicks, "Abort the run past this many ticks");
  }

  void apply(RunSpec& spec) const {
    if (seed) spec.seed = *seed;
    if (events) spec.scenario.totalEvents = *events;
    if (rate) spec.scenario.eventsPer1000Ticks = *rate;
    if (keyspaceMean) spec.scenario.keyspaceMean = *keyspaceMean;
    if (keyspaceStd) spec.scenario.keyspaceStd = *keyspaceStd;
    if (pollPeriod) spec.pollPeriod = *pollPeriod;
    if (maxTicks) spec.maxTicks = *maxTicks;
    if (noRamp) spec.scenario.rateSchedule = std::vector<RateRule>{};
    if (rampEvery || rampDelta) {
      if (!rampEvery || !rampDelta) throw ConfigError("--ramp-every and --ramp-delta go together");
      spec.scenario.rateSchedule =
          std::vector<RateRule>{{RateRule::When::kEvery, *rampEvery, RateRule::Op::kAdd, *rampDelta}};
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stagesim: simulate how staged systems degrade under load and failure"};
  app.require_subcommand(1);

  std::string format = "table";

  auto* run = app.add_subcommand("run", "Run one model and print its summary");
  std::string model;
  std::string config;
  std::string summaryOut;
  std::string samplesOut;
  Overrides runOverrides;
  run->add_option("-m,--model", model, "Registered model name, e.g. circleci:original");
  run->add_option("-c,--config", config, "JSON run config file")->check(CLI::ExistingFile);
  run->add_option("--summary-out", summaryOut, "Write the summary as JSON to this file");
  run->add_option("--samples-out", samplesOut, "Write line-delimited metric records to this file");
  run->add_option("-f,--format", format, "table | csv | json");
  runOverrides.attach(*run);

  auto* compare = app.add_subcommand("compare", "Run several models and print them side by side");
  std::vector<std::string> models;
  std::vector<std::string> configs;
  Overrides compareOverrides;
  compare->add_option("models", models, "Registered model names");
  compare->add_option("-c,--config", configs, "JSON run config files (repeatable)")
      ->check(CLI::ExistingFile);
  compare->add_option("-f,--format", format, "table | csv | json");
  compareOverrides.attach(*compare);

  auto* list = app.add_subcommand("models", "List registered model names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*list) {
      for (const auto& name : stagesim::registeredModels()) std::cout << name << '\n';
      return kExitOk;
    }
    if (*run) {
      RunSpec spec = config.empty() ? RunSpec{} : loadRunSpec(config);
      if (!model.empty()) {
        spec.model = model;
        spec.chain.reset();
      }
      if (run->count("--format") > 0 || config.empty()) spec.format = parseFormat(format);
      if (!summaryOut.empty()) spec.summaryPath = summaryOut;
      if (!samplesOut.empty()) spec.samplesPath = samplesOut;
      runOverrides.apply(spec);
      return runCommand(spec, std::cout, std::cerr);
    }
    std::vector<RunSpec> specs;
    for (const auto& path : configs) specs.push_back(loadRunSpec(path));
    for (const auto& name : models) {
      RunSpec spec;
      spec.model = name;
      specs.push_back(spec);
    }
    for (auto& spec : specs) compareOverrides.apply(spec);
    return compareCommand(specs, parseFormat(format), std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
}
