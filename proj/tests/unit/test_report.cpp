#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ossbench/fixture.hpp"
#include "ossbench/report.hpp"

using namespace ossbench;

namespace {

std::string fixture_path(const char* name) {
  return std::string(OSSBENCH_FIXTURE_DIR) + "/" + name;
}

const Period kPeriod{Timestamp::parse("2022-07-01T00:00:00Z"),
                     Timestamp::parse("2022-12-01T00:00:00Z")};

Timestamp ts(const char* text) { return Timestamp::parse(text); }

MetricResult computed(MetricKind kind, double mean, std::optional<double> sd,
                      std::vector<double> samples) {
  return MetricResult{kind, MetricStatus::Computed, mean, sd, samples.size(), std::move(samples)};
}

BenchmarkReport table_style_report() {
  BenchmarkReport report{"angular/angular", kPeriod, {}, {}, EngineConfig{}};
  report.config_echo.bug_labels = {"bug", "kind/bug", "type:bug"};
  report.results.emplace(MetricKind::ReleaseFrequency,
                         computed(MetricKind::ReleaseFrequency, 6.09, 3.28, {6.09}));
  report.results.emplace(
      MetricKind::LeadTimeForReleasedChanges,
      computed(MetricKind::LeadTimeForReleasedChanges, 3.41, 2.36, {3.41}));
  report.results.emplace(MetricKind::TimeToRepairCode,
                         computed(MetricKind::TimeToRepairCode, 79.22, 94.11, {79.22}));
  report.results.emplace(MetricKind::BugIssuesRate,
                         computed(MetricKind::BugIssuesRate, 0.0384, std::nullopt, {0.0, 1.0}));
  for (const auto& [kind, result] : report.results)
    report.levels.emplace(kind, *classify(result));
  return report;
}

BenchmarkReport all_no_data_report() {
  BenchmarkReport report{"empty/repo", kPeriod, {}, {}, EngineConfig{}};
  for (MetricKind kind : kAllMetricKinds)
    report.results.emplace(
        kind, MetricResult{kind, MetricStatus::NoData, std::nullopt, std::nullopt, 0, {}});
  return report;
}

}  // namespace

TEST_CASE("markdown mirrors the results-table structure") {
  const std::string text = render(table_style_report(), ReportFormat::Markdown);
  CHECK(text.find("| Metric | Mean | Std dev | Level |") != std::string::npos);
  CHECK(text.find("Release Frequency | 6.09 days | 3.28 days | Medium") != std::string::npos);
  CHECK(text.find("Lead Time For Released Changes | 3.41 days | 2.36 days | High") !=
        std::string::npos);
  CHECK(text.find("Time To Repair Code | 79.22 days | 94.11 days | Low") != std::string::npos);
  CHECK(text.find("Bug Issues Rate | 3.84 % | - | High") != std::string::npos);
  // status and sample counts ride below the table
  CHECK(text.find("status computed") != std::string::npos);
  CHECK(text.find("Config: bug labels = bug, kind/bug, type:bug") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
  const auto report = table_style_report();
  for (const auto format : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Markdown})
    CHECK(render(report, format) == render(report, format));
}

TEST_CASE("a report with no data renders every metric with status text") {
  const auto report = all_no_data_report();

  const std::string markdown = render(report, ReportFormat::Markdown);
  CHECK(markdown.find("Release Frequency | no data (no releases published in period "
                       "(frequency longer than period)) | - | -") != std::string::npos);

  const auto doc = nlohmann::json::parse(render(report, ReportFormat::Json));
  REQUIRE(doc.at("results").size() == 4);
  for (const auto& [key, entry] : doc.at("results").items()) {
    CHECK(entry.at("status") == "no_data");
    CHECK(entry.at("mean").is_null());
  }
  CHECK(doc.at("levels").empty());
}

TEST_CASE("json round-trips to identical bytes") {
  for (const auto& report : {table_style_report(), all_no_data_report()}) {
    const std::string once = render(report, ReportFormat::Json);
    const std::string twice = render(report_from_json(once), ReportFormat::Json);
    CHECK(once == twice);
  }
}

TEST_CASE("json carries full precision; human formats round for display") {
  BenchmarkReport report{"p/q", kPeriod, {}, {}, EngineConfig{}};
  const double mean = 6.0893999999999995;  // displays as 6.09, json keeps every bit
  report.results.emplace(MetricKind::ReleaseFrequency,
                         computed(MetricKind::ReleaseFrequency, mean, 0.125, {mean}));
  report.levels.emplace(MetricKind::ReleaseFrequency, Level::Medium);

  const auto doc = nlohmann::json::parse(render(report, ReportFormat::Json));
  CHECK(doc.at("results").at("release_frequency").at("mean").get<double>() == mean);

  const std::string markdown = render(report, ReportFormat::Markdown);
  CHECK(markdown.find("6.09 days") != std::string::npos);
  CHECK(markdown.find("0.13 days") != std::string::npos);  // 0.125 rounds half up
}

TEST_CASE("csv emits a header and one row per metric") {
  const std::string text = render(table_style_report(), ReportFormat::Csv);
  std::istringstream lines(text);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "metric,status,mean,std_dev,sample_count,level,units");
  CHECK(rows[1] == "Release Frequency,computed,6.09,3.28,1,Medium,days");
  CHECK(rows[4] == "Bug Issues Rate,computed,3.84,,2,High,percent");
}

TEST_CASE("negative durations surface as warnings") {
  BenchmarkReport report{"p/q", kPeriod, {}, {}, EngineConfig{}};
  report.results.emplace(
      MetricKind::LeadTimeForReleasedChanges,
      computed(MetricKind::LeadTimeForReleasedChanges, -1.0, 2.0, {-3.0, 1.0}));
  report.levels.emplace(MetricKind::LeadTimeForReleasedChanges, Level::High);

  const auto doc = nlohmann::json::parse(render(report, ReportFormat::Json));
  REQUIRE(doc.at("warnings").size() == 1);
  const std::string warning = doc.at("warnings")[0].get<std::string>();
  CHECK(warning.find("lead_time_for_released_changes") != std::string::npos);
  CHECK(warning.find("1 negative duration sample") != std::string::npos);

  const std::string markdown = render(report, ReportFormat::Markdown);
  CHECK(markdown.find("Warnings:") != std::string::npos);
}

TEST_CASE("run computes a report from an offline fixture") {
  CliConfig config;
  config.from = ts("2022-07-01T00:00:00Z");
  config.to = ts("2022-12-01T00:00:00Z");
  config.offline_fixture = fixture_path("fig7.json");
  config.format = ReportFormat::Markdown;

  std::ostringstream out, err;
  CHECK(run(config, out, err) == 0);
  CHECK(err.str().empty());
  const std::string text = out.str();
  CHECK(text.find("figures/fig7") != std::string::npos);
  // single in-period release: the frequency approximation equals the period
  CHECK(text.find("Release Frequency | 153.00 days (single release; period length)") !=
        std::string::npos);
  CHECK(text.find("Lead Time For Released Changes | 13.50 days") != std::string::npos);
}

TEST_CASE("run annotates an empty release window") {
  CliConfig config;
  config.from = ts("2023-07-01T00:00:00Z");  // period past every fixture event
  config.to = ts("2023-12-01T00:00:00Z");
  config.offline_fixture = fixture_path("fig1.json");

  std::ostringstream out, err;
  CHECK(run(config, out, err) == 0);
  CHECK(out.str().find("longer than period") != std::string::npos);
}

TEST_CASE("run exit codes") {
  std::ostringstream out, err;

  SUBCASE("inverted period is a usage error") {
    CliConfig config;
    config.from = ts("2022-12-01T00:00:00Z");
    config.to = ts("2022-07-01T00:00:00Z");
    config.offline_fixture = fixture_path("fig1.json");
    CHECK(run(config, out, err) == 2);
    CHECK(err.str().find("usage error") == 0);
  }
  SUBCASE("unreadable fixture") {
    CliConfig config;
    config.from = ts("2022-07-01T00:00:00Z");
    config.to = ts("2022-12-01T00:00:00Z");
    config.offline_fixture = "/nonexistent/nope.json";
    CHECK(run(config, out, err) == 4);
    CHECK(err.str().find("fixture error") == 0);
  }
  SUBCASE("refresh conflicts with offline") {
    CliConfig config;
    config.from = ts("2022-07-01T00:00:00Z");
    config.to = ts("2022-12-01T00:00:00Z");
    config.offline_fixture = fixture_path("fig1.json");
    config.refresh = true;
    CHECK(run(config, out, err) == 2);
  }
}

TEST_CASE("json reports from run parse back losslessly") {
  CliConfig config;
  config.from = ts("2022-07-01T00:00:00Z");
  config.to = ts("2022-12-01T00:00:00Z");
  config.offline_fixture = fixture_path("fig9.json");
  config.format = ReportFormat::Json;

  std::ostringstream out, err;
  REQUIRE(run(config, out, err) == 0);
  const BenchmarkReport parsed = report_from_json(out.str());
  CHECK(render(parsed, ReportFormat::Json) == out.str());
  CHECK(parsed.repo == "figures/fig9");
  CHECK(parsed.results.at(MetricKind::LeadTimeForReleasedChanges).sample_count == 2);
}
