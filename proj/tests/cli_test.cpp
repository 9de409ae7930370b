#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/run_spec.hpp"

namespace stagesim::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

fs::path scratchDir() {
  const fs::path dir = fs::temp_directory_path() /
                       ("stagesim-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunSpec quick(const std::string& model) {
  RunSpec spec;
  spec.model = model;
  spec.scenario.totalEvents = 3000;
  return spec;
}

TEST(RunSpecTest, ParsesRegisteredModelAndOverrides) {
  const RunSpec spec = parseRunSpec(R"({
    "model": "circleci:b",
    "seed": 7,
    "scenario": {"totalEvents": 1200, "rateSchedule": [{"every": 500, "add": 50}]},
    "circleci": {"limitedWorkers": 60, "database": {"degradation": {"enabled": false}}},
    "output": {"format": "csv", "summary": "s.json"}
  })");
  EXPECT_EQ(spec.model, "circleci:b");
  EXPECT_EQ(spec.seed, 7u);
  EXPECT_EQ(spec.scenario.totalEvents, 1200u);
  ASSERT_TRUE(spec.scenario.rateSchedule);
  EXPECT_EQ(spec.scenario.rateSchedule->at(0).ticks, 500);
  EXPECT_EQ(spec.circleci.limitedWorkers, 60u);
  EXPECT_FALSE(spec.circleci.database.degradation.enabled);
  EXPECT_EQ(spec.format, ReportFormat::kCsv);
  EXPECT_EQ(spec.summaryPath, "s.json");
}

TEST(RunSpecTest, ParsesDeclarativeChains) {
  const RunSpec spec = parseRunSpec(R"({
    "model": {"name": "api", "stages": [
      {"type": "queue", "name": "front", "capacity": 100, "workers": 8},
      {"type": "breaker", "window": 20, "threshold": 0.4, "cooldown": 500},
      {"type": "timeout", "deadline": 200},
      {"type": "cache", "mode": "background-refresh", "capacity": 50, "ttl": 1000},
      {"type": "retry", "attempts": 2},
      {"type": "service", "latency": {"dist": "exponential", "mean": 40}, "availability": 0.99,
       "workers": "unbounded"}
    ]}
  })");
  ASSERT_TRUE(spec.chain);
  EXPECT_EQ(spec.label(), "api");
  ASSERT_EQ(spec.chain->stages.size(), 6u);
  EXPECT_EQ(spec.chain->stages[1].name, "breaker");
  const auto& cache = std::get<CacheConfig>(spec.chain->stages[3].config);
  EXPECT_EQ(cache.mode, CacheMode::kBackgroundRefresh);
  EXPECT_EQ(cache.ttl, 1000);
  const auto& service = std::get<ServiceConfig>(spec.chain->stages[5].config);
  EXPECT_EQ(service.workers, FifoQueue::kUnbounded);

  std::ostringstream out, err;
  RunSpec runnable = spec;
  runnable.scenario.totalEvents = 500;
  EXPECT_EQ(runCommand(runnable, out, err), kExitOk) << err.str();
}

TEST(RunSpecTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parseRunSpec(R"({"modle": "circleci:a"})"), ConfigError);
  EXPECT_THROW(parseRunSpec(R"({"scenario": {"rate": 5}})"), ConfigError);
  EXPECT_THROW(parseRunSpec(R"({"model": {"stages": [{"type": "teleport"}]}})"), ConfigError);
  EXPECT_THROW(parseRunSpec(R"({"seed": "one"})"), ConfigError);
  EXPECT_THROW(parseRunSpec("{"), ConfigError);
  EXPECT_THROW(parseRunSpec(R"({"scenario": {"rateSchedule": [{"every": 5}]}})"), ConfigError);
  EXPECT_THROW(parseFormat("xml"), ConfigError);
}

TEST(RunSpecTest, OverridesApplyOnTopOfModelDefaults) {
  RunSpec spec;
  spec.seed = 4;
  spec.scenario.keyspaceStd = 0;
  const ScenarioConfig resolved = resolveScenario(models::circleCiSurge({}, 1), spec);
  EXPECT_EQ(resolved.keyspaceStd, 0);
  EXPECT_EQ(resolved.keyspaceMean, 1000);
  EXPECT_EQ(resolved.seed, 4u);
}

TEST(RunCommandTest, OriginalSurgeHasNoRejections) {
  RunSpec spec;
  spec.model = "circleci:original";
  spec.format = ReportFormat::kJson;
  const RunOutput result = executeRun(spec);
  EXPECT_EQ(result.summary.injected, 50'000u);
  EXPECT_EQ(result.summary.rejectionRate, 0.0);
}

TEST(RunCommandTest, SameSeedWritesByteIdenticalFiles) {
  const fs::path dir = scratchDir();
  std::string summaries[2];
  std::string samples[2];
  for (int i = 0; i < 2; ++i) {
    RunSpec spec;
    spec.model = "circleci:a";
    spec.summaryPath = (dir / ("summary" + std::to_string(i) + ".json")).string();
    spec.samplesPath = (dir / ("samples" + std::to_string(i) + ".jsonl")).string();
    std::ostringstream out, err;
    ASSERT_EQ(runCommand(spec, out, err), kExitOk) << err.str();
    summaries[i] = slurp(spec.summaryPath);
    samples[i] = slurp(spec.samplesPath);
  }
  EXPECT_FALSE(summaries[0].empty());
  EXPECT_EQ(summaries[0], summaries[1]);
  EXPECT_EQ(samples[0], samples[1]);
  EXPECT_EQ(summaryFromJson(summaries[0]), summaryFromJson(summaries[1]));
  fs::remove_all(dir);
}

TEST(RunCommandTest, ExitCodesDistinguishConfigErrorsFromAborts) {
  std::ostringstream out, err;
  EXPECT_EQ(runCommand(quick("circleci:zz"), out, err), kExitConfigError);
  RunSpec zeroEvents = quick("circleci:a");
  zeroEvents.scenario.totalEvents = 0;
  EXPECT_EQ(runCommand(zeroEvents, out, err), kExitConfigError);
  RunSpec aborted = quick("circleci:original");
  aborted.maxTicks = 100;
  EXPECT_EQ(runCommand(aborted, out, err), kExitAborted);
  EXPECT_NE(err.str().find("run aborted"), std::string::npos);
  RunSpec unwritable = quick("circleci:c");
  unwritable.summaryPath = "/nonexistent-dir/summary.json";
  EXPECT_EQ(runCommand(unwritable, out, err), kExitConfigError);
}

TEST(CompareCommandTest, NeedsAtLeastTwoModels) {
  std::ostringstream out, err;
  EXPECT_EQ(compareCommand({quick("circleci:a")}, ReportFormat::kTable, out, err), kExitConfigError);
}

TEST(CompareCommandTest, SameModelTwiceGivesIdenticalColumns) {
  std::ostringstream out, err;
  ASSERT_EQ(compareCommand({quick("circleci:a"), quick("circleci:a")}, ReportFormat::kCsv, out, err),
            kExitOk);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    EXPECT_EQ(line.substr(first + 1, second - first - 1), line.substr(second + 1)) << line;
  }
  EXPECT_TRUE(err.str().empty());
}

TEST(CompareCommandTest, FourVariantTableAndScenarioMismatchWarning) {
  std::ostringstream out, err;
  std::vector<RunSpec> specs;
  for (const auto* name : {"circleci:original", "circleci:a", "circleci:b", "circleci:c"}) {
    specs.push_back(quick(name));
  }
  ASSERT_EQ(compareCommand(specs, ReportFormat::kTable, out, err), kExitOk);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  for (const auto* name : {"circleci:original", "circleci:a", "circleci:b", "circleci:c"}) {
    EXPECT_NE(header.find(name), std::string::npos);
  }
  EXPECT_TRUE(err.str().empty());

  specs[1].seed = 2;
  std::ostringstream out2, err2;
  EXPECT_EQ(compareCommand(specs, ReportFormat::kTable, out2, err2), kExitOk);
  EXPECT_NE(err2.str().find("warning"), std::string::npos);
}

TEST(RunSpecTest, ShippedConfigsLoadAndRun) {
  for (const char* file : {"cached-api.json", "circleci-no-degradation.json"}) {
    RunSpec spec = loadRunSpec(fs::path(STAGESIM_CONFIG_DIR) / file);
    spec.scenario.totalEvents = 2000;
    std::ostringstream out, err;
    EXPECT_EQ(runCommand(spec, out, err), kExitOk) << file << ": " << err.str();
  }
}

int runExecutable(const std::string& args) {
  const std::string command = std::string(STAGESIM_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(ExecutableTest, ExitCodes) {
  EXPECT_EQ(runExecutable("models"), kExitOk);
  EXPECT_EQ(runExecutable("run --model circleci:c --events 500"), kExitOk);
  EXPECT_EQ(runExecutable("run --bogus"), kExitConfigError);
  EXPECT_EQ(runExecutable("run --model circleci:none"), kExitConfigError);
  EXPECT_EQ(runExecutable("run --model circleci:original --events 5000 --max-ticks 50"), kExitAborted);
  EXPECT_EQ(runExecutable("compare circleci:a"), kExitConfigError);
  EXPECT_EQ(runExecutable("run --ramp-every 10"), kExitConfigError);
}

}  // namespace
}  // namespace stagesim::cli
