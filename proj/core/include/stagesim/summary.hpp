#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stagesim/metrics.hpp"
#include "stagesim/run_result.hpp"

namespace stagesim {

/// Headline numbers for one run, computed at the entry stage.
///
/// Rates partition the injected events: rejectionRate + availability +
/// failRate == 1. Queue waits are dequeue minus admission tick; a mean over
/// an empty set is reported as 0 with its `defined` flag cleared.
struct SummaryReport {
  std::uint64_t injected = 0;
  double rejectionRate = 0.0;
  double availability = 0.0;
  double failRate = 0.0;
  double maxQueueSize = 0.0;
  double meanQueueWait = 0.0;
  double meanQueueWaitSuccess = 0.0;
  double meanQueueWaitFail = 0.0;
  bool queueWaitDefined = false;
  bool queueWaitSuccessDefined = false;
  bool queueWaitFailDefined = false;
  double throughput = 0.0;  // successful events per tick, start to drain
  double recoveryTime = 0.0;  // drain tick minus last arrival tick

  friend bool operator==(const SummaryReport&, const SummaryReport&) = default;
};

/// Throws std::invalid_argument if `run` has not drained.
SummaryReport summarize(const MetricsStore& store, const RunResult& run);

/// Formats `value` with 4 significant figures.
std::string formatSig4(double value);

/// Row labels in display order, paired with the formatted cell for `report`.
std::vector<std::pair<std::string, std::string>> summaryRows(const SummaryReport& report);

enum class ReportFormat { kTable, kCsv, kJson };

/// Renders one or more reports side by side, one column per report.
void writeReports(std::ostream& out, const std::vector<std::string>& columns,
                  const std::vector<SummaryReport>& reports, ReportFormat format);

/// Summary file I/O (a single JSON object per report, full precision).
std::string toJson(const SummaryReport& report);
SummaryReport summaryFromJson(const std::string& text);

/// Line-delimited record stream: one JSON object per line, tagged by "type":
/// "run", "counter", "stage", "sample" (one per sample point), and
/// optionally "summary" last.
void writeRecords(std::ostream& out, const MetricsStore& store, const RunResult& run,
                  const std::optional<SummaryReport>& summary = std::nullopt);

struct RecordStream {
  MetricsStore store;
  RunResult run;
  std::optional<SummaryReport> summary;
};

/// Throws std::runtime_error on malformed lines.
RecordStream readRecords(std::istream& in);

}  // namespace stagesim
