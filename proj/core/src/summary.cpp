#include "stagesim/summary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace stagesim {

using nlohmann::json;

namespace {

struct Mean {
  double sum = 0.0;
  std::uint64_t count = 0;
  void add(double v) {
    sum += v;
    ++count;
  }
  double value() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
};

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string percent(double fraction) {
  std::ostringstream out;
  out << formatSig4(fraction * 100.0) << '%';
  return out.str();
}

std::string csvEscape(const std::string& text) {
  if (text.find_first_of(",\"") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

json reportJson(const SummaryReport& r) {
  return json{{"injected", r.injected},
              {"rejectionRate", r.rejectionRate},
              {"availability", r.availability},
              {"failRate", r.failRate},
              {"maxQueueSize", r.maxQueueSize},
              {"meanQueueWait", r.meanQueueWait},
              {"meanQueueWaitSuccess", r.meanQueueWaitSuccess},
              {"meanQueueWaitFail", r.meanQueueWaitFail},
              {"queueWaitDefined", r.queueWaitDefined},
              {"queueWaitSuccessDefined", r.queueWaitSuccessDefined},
              {"queueWaitFailDefined", r.queueWaitFailDefined},
              {"throughput", r.throughput},
              {"recoveryTime", r.recoveryTime}};
}

SummaryReport reportFromJson(const json& j) {
  SummaryReport r;
  r.injected = j.at("injected").get<std::uint64_t>();
  r.rejectionRate = j.at("rejectionRate").get<double>();
  r.availability = j.at("availability").get<double>();
  r.failRate = j.at("failRate").get<double>();
  r.maxQueueSize = j.at("maxQueueSize").get<double>();
  r.meanQueueWait = j.at("meanQueueWait").get<double>();
  r.meanQueueWaitSuccess = j.at("meanQueueWaitSuccess").get<double>();
  r.meanQueueWaitFail = j.at("meanQueueWaitFail").get<double>();
  r.queueWaitDefined = j.at("queueWaitDefined").get<bool>();
  r.queueWaitSuccessDefined = j.at("queueWaitSuccessDefined").get<bool>();
  r.queueWaitFailDefined = j.at("queueWaitFailDefined").get<bool>();
  r.throughput = j.at("throughput").get<double>();
  r.recoveryTime = j.at("recoveryTime").get<double>();
  return r;
}

json runJson(const RunResult& run) {
  return json{{"type", "run"},
              {"injected", run.injected},
              {"rejected", run.rejected},
              {"succeeded", run.succeeded},
              {"failed", run.failed},
              {"startTick", run.startTick},
              {"lastArrivalTick", run.lastArrivalTick},
              {"drainTick", run.drainTick},
              {"drained", run.drained}};
}

}  // namespace

SummaryReport summarize(const MetricsStore& store, const RunResult& run) {
  if (!run.drained) throw std::invalid_argument("cannot summarize a run that has not drained");

  SummaryReport report;
  report.injected = run.injected;
  report.rejectionRate = ratio(run.rejected, run.injected);
  report.availability = ratio(run.succeeded, run.injected);
  report.failRate = ratio(run.failed, run.injected);

  for (const SamplePoint& point : store.series(series::kPoll)) {
    if (auto size = point.get(series::kQueueSize)) {
      report.maxQueueSize = std::max(report.maxQueueSize, *size);
    }
  }

  Mean all, success, fail;
  for (const SamplePoint& point : store.series(series::kEvent)) {
    const auto wait = point.get(series::kQueueWait);
    if (!wait) continue;
    all.add(*wait);
    const auto status = point.get(series::kStatus).value_or(-1.0);
    if (status == 0.0) success.add(*wait);
    if (status == 1.0) fail.add(*wait);
  }
  report.meanQueueWait = all.value();
  report.meanQueueWaitSuccess = success.value();
  report.meanQueueWaitFail = fail.value();
  report.queueWaitDefined = all.count > 0;
  report.queueWaitSuccessDefined = success.count > 0;
  report.queueWaitFailDefined = fail.count > 0;

  const Tick span = run.drainTick - run.startTick;
  report.throughput = span > 0 ? static_cast<double>(run.succeeded) / static_cast<double>(span)
                               : static_cast<double>(run.succeeded);
  report.recoveryTime = static_cast<double>(run.drainTick - run.lastArrivalTick);
  return report;
}

std::string formatSig4(double value) {
  if (value == 0.0 || !std::isfinite(value)) {
    std::ostringstream out;
    out << value;
    return out.str();
  }
  const int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(value))));
  const int decimals = std::max(0, 3 - magnitude);
  const double scale = std::pow(10.0, magnitude - 3);
  const double rounded = std::round(value / scale) * scale;
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, rounded);
  return buffer;
}

std::vector<std::pair<std::string, std::string>> summaryRows(const SummaryReport& r) {
  auto wait = [](double value, bool defined) { return defined ? formatSig4(value) : std::string("-"); };
  return {
      {"Event rejection rate", percent(r.rejectionRate)},
      {"Availability", percent(r.availability)},
      {"Max queue size", formatSig4(r.maxQueueSize)},
      {"Mean time in queue", wait(r.meanQueueWait, r.queueWaitDefined)},
      {"  Success events", wait(r.meanQueueWaitSuccess, r.queueWaitSuccessDefined)},
      {"  Failed events", wait(r.meanQueueWaitFail, r.queueWaitFailDefined)},
      {"Throughput", formatSig4(r.throughput)},
      {"Recovery time", formatSig4(r.recoveryTime)},
  };
}

void writeReports(std::ostream& out, const std::vector<std::string>& columns,
                  const std::vector<SummaryReport>& reports, ReportFormat format) {
  if (columns.size() != reports.size()) {
    throw std::invalid_argument("one column label per report is required");
  }
  if (format == ReportFormat::kJson) {
    json doc = json::object();
    for (std::size_t i = 0; i < reports.size(); ++i) doc[columns[i]] = reportJson(reports[i]);
    out << doc.dump(2) << '\n';
    return;
  }

  std::vector<std::vector<std::pair<std::string, std::string>>> cells;
  for (const auto& report : reports) cells.push_back(summaryRows(report));
  const std::size_t rows = summaryRows(SummaryReport{}).size();

  if (format == ReportFormat::kCsv) {
    out << "metric";
    for (const auto& column : columns) out << ',' << csvEscape(column);
    out << '\n';
    for (std::size_t row = 0; row < rows; ++row) {
      std::string label = cells.empty() ? "" : cells[0][row].first;
      label.erase(0, label.find_first_not_of(' '));
      out << csvEscape(label);
      for (const auto& column : cells) out << ',' << csvEscape(column[row].second);
      out << '\n';
    }
    return;
  }

  std::size_t labelWidth = std::string("Metric").size();
  for (const auto& [label, _] : summaryRows(SummaryReport{})) labelWidth = std::max(labelWidth, label.size());
  std::vector<std::size_t> widths;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    std::size_t width = columns[c].size();
    for (const auto& [_, cell] : cells[c]) width = std::max(width, cell.size());
    widths.push_back(width);
  }
  out << std::left << std::setw(static_cast<int>(labelWidth)) << "Metric";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << "  " << std::right << std::setw(static_cast<int>(widths[c])) << columns[c];
  }
  out << '\n';
  for (std::size_t row = 0; row < rows; ++row) {
    out << std::left << std::setw(static_cast<int>(labelWidth)) << summaryRows(SummaryReport{})[row].first;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << "  " << std::right << std::setw(static_cast<int>(widths[c])) << cells[c][row].second;
    }
    out << '\n';
  }
}

std::string toJson(const SummaryReport& report) { return reportJson(report).dump(2) + "\n"; }

SummaryReport summaryFromJson(const std::string& text) {
  try {
    return reportFromJson(json::parse(text));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed summary: ") + e.what());
  }
}

void writeRecords(std::ostream& out, const MetricsStore& store, const RunResult& run,
                  const std::optional<SummaryReport>& summary) {
  out << runJson(run).dump() << '\n';
  for (const auto& [name, value] : store.counters()) {
    out << json{{"type", "counter"}, {"name", name}, {"value", value}}.dump() << '\n';
  }
  for (const auto& [name, stats] : store.stages()) {
    out << json{{"type", "stage"},
                {"name", name},
                {"added", stats.added},
                {"rejected", stats.rejected},
                {"success", stats.success},
                {"fail", stats.fail},
                {"latencies", stats.latencies}}
               .dump()
        << '\n';
  }
  for (const auto& [name, points] : store.allSeries()) {
    for (const SamplePoint& point : points) {
      // Field order is preserved as an array of pairs.
      json fields = json::array();
      for (const auto& [field, value] : point.fields) fields.push_back(json::array({field, value}));
      out << json{{"type", "sample"}, {"tick", point.tick}, {"name", name}, {"fields", fields}}.dump()
          << '\n';
    }
  }
  if (summary) {
    json line = reportJson(*summary);
    line["type"] = "summary";
    out << line.dump() << '\n';
  }
}

RecordStream readRecords(std::istream& in) {
  RecordStream stream;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "run") {
        RunResult& run = stream.run;
        run.injected = j.at("injected").get<std::uint64_t>();
        run.rejected = j.at("rejected").get<std::uint64_t>();
        run.succeeded = j.at("succeeded").get<std::uint64_t>();
        run.failed = j.at("failed").get<std::uint64_t>();
        run.startTick = j.at("startTick").get<Tick>();
        run.lastArrivalTick = j.at("lastArrivalTick").get<Tick>();
        run.drainTick = j.at("drainTick").get<Tick>();
        run.drained = j.at("drained").get<bool>();
      } else if (type == "counter") {
        stream.store.increment(j.at("name").get<std::string>(), j.at("value").get<std::uint64_t>());
      } else if (type == "stage") {
        StageStats& stats = stream.store.stage(j.at("name").get<std::string>());
        stats.added = j.at("added").get<std::uint64_t>();
        stats.rejected = j.at("rejected").get<std::uint64_t>();
        stats.success = j.at("success").get<std::uint64_t>();
        stats.fail = j.at("fail").get<std::uint64_t>();
        stats.latencies = j.at("latencies").get<std::vector<Tick>>();
      } else if (type == "sample") {
        Fields fields;
        for (const auto& pair : j.at("fields")) {
          fields.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<double>());
        }
        stream.store.record(j.at("tick").get<Tick>(), j.at("name").get<std::string>(), std::move(fields));
      } else if (type == "summary") {
        stream.summary = reportFromJson(j);
      } else {
        throw std::runtime_error("unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw std::runtime_error("record line " + std::to_string(lineNo) + ": " + e.what());
    }
  }
  return stream;
}

}  // namespace stagesim
