#include "ossbench/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ossbench/fixture.hpp"
#include "ossbench/github.hpp"

namespace ossbench {
namespace {

using nlohmann::json;

// Two decimals, ties away from zero ("6.09", "3.84").
std::string fixed2(double x) {
  const double rounded = std::round(x * 100.0) / 100.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", rounded);
  return buf;
}

std::optional<std::string> status_note(const MetricResult& result) {
  if (result.status == MetricStatus::SingleRelease)
    return "single release in period; mean approximated by period length";
  if (result.status != MetricStatus::NoData) return std::nullopt;
  switch (result.kind) {
    case MetricKind::ReleaseFrequency:
      return "no releases published in period (frequency longer than period)";
    case MetricKind::LeadTimeForReleasedChanges:
      return "no changes attributed to in-period releases";
    case MetricKind::TimeToRepairCode:
      return "no bug issues attributed to in-period releases";
    case MetricKind::BugIssuesRate:
      return "no issues opened in period";
  }
  return std::nullopt;
}

std::vector<std::string> data_quality_warnings(const BenchmarkReport& report) {
  std::vector<std::string> warnings;
  for (const auto& [kind, result] : report.results) {
    if (kind == MetricKind::BugIssuesRate) continue;
    std::size_t negatives = 0;
    for (double s : result.samples)
      if (s < 0.0) ++negatives;
    if (negatives > 0)
      warnings.push_back(std::string(metric_kind_id(kind)) + ": " + std::to_string(negatives) +
                         " negative duration sample(s) (publication precedes anchor)");
  }
  return warnings;
}

std::string display_mean(const MetricResult& result) {
  if (!result.mean) {
    const auto note = status_note(result);
    return "no data" + (note ? " (" + *note + ")" : "");
  }
  if (result.kind == MetricKind::BugIssuesRate) return fixed2(*result.mean * 100.0) + " %";
  std::string text = fixed2(*result.mean) + " days";
  if (result.status == MetricStatus::SingleRelease) text += " (single release; period length)";
  return text;
}

std::string display_std_dev(const MetricResult& result) {
  if (!result.std_dev) return "-";
  return fixed2(*result.std_dev) + " days";
}

std::string render_json(const BenchmarkReport& report) {
  json doc;
  doc["repo"] = report.repo;
  doc["period"] = {{"from", report.period.start().to_iso8601()},
                   {"to", report.period.end().to_iso8601()}};

  json config;
  config["bug_labels"] = json(report.config_echo.bug_labels);
  config["include_prereleases"] = report.config_echo.include_prereleases;
  config["exclude_pull_requests"] = report.config_echo.exclude_pull_requests;
  doc["config"] = std::move(config);

  json results = json::object();
  for (const auto& [kind, result] : report.results) {
    json entry;
    entry["status"] = std::string(metric_status_id(result.status));
    entry["mean"] = result.mean ? json(*result.mean) : json(nullptr);
    entry["std_dev"] = result.std_dev ? json(*result.std_dev) : json(nullptr);
    entry["sample_count"] = result.sample_count;
    entry["samples"] = json(result.samples);
    const auto note = status_note(result);
    entry["note"] = note ? json(*note) : json(nullptr);
    results[std::string(metric_kind_id(kind))] = std::move(entry);
  }
  doc["results"] = std::move(results);

  json levels = json::object();
  for (const auto& [kind, level] : report.levels)
    levels[std::string(metric_kind_id(kind))] = std::string(level_name(level));
  doc["levels"] = std::move(levels);

  doc["warnings"] = json(data_quality_warnings(report));

  return doc.dump(2) + "\n";
}

std::string render_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "metric,status,mean,std_dev,sample_count,level,units\n";
  for (const auto& [kind, result] : report.results) {
    out << metric_kind_name(kind) << ',' << metric_status_id(result.status) << ',';
    if (result.mean)
      out << (kind == MetricKind::BugIssuesRate ? fixed2(*result.mean * 100.0)
                                                : fixed2(*result.mean));
    out << ',';
    if (result.std_dev) out << fixed2(*result.std_dev);
    out << ',' << result.sample_count << ',';
    if (const auto it = report.levels.find(kind); it != report.levels.end())
      out << level_name(it->second);
    out << ',' << (kind == MetricKind::BugIssuesRate ? "percent" : "days") << '\n';
  }
  return out.str();
}

std::string render_markdown(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "# " << report.repo << " delivery performance\n\n";
  out << "Period: " << report.period.start().to_iso8601() << " to "
      << report.period.end().to_iso8601() << " (" << fixed2(report.period.length())
      << " days)\n\n";
  out << "| Metric | Mean | Std dev | Level |\n";
  out << "| --- | --- | --- | --- |\n";
  for (const auto& [kind, result] : report.results) {
    out << "| " << metric_kind_name(kind) << " | " << display_mean(result) << " | "
        << display_std_dev(result) << " | ";
    if (const auto it = report.levels.find(kind); it != report.levels.end())
      out << level_name(it->second);
    else
      out << '-';
    out << " |\n";
  }

  out << "\nDetails:\n";
  for (const auto& [kind, result] : report.results) {
    out << "- " << metric_kind_name(kind) << ": status " << metric_status_id(result.status)
        << ", " << result.sample_count << " sample(s)";
    if (const auto note = status_note(result)) out << "; " << *note;
    out << "\n";
  }

  out << "\nConfig: bug labels =";
  bool first = true;
  for (const auto& label : report.config_echo.bug_labels) {
    out << (first ? " " : ", ") << label;
    first = false;
  }
  out << "; prereleases " << (report.config_echo.include_prereleases ? "included" : "excluded");
  out << "; pull requests "
      << (report.config_echo.exclude_pull_requests ? "excluded" : "included") << "\n";

  const auto warnings = data_quality_warnings(report);
  if (!warnings.empty()) {
    out << "\nWarnings:\n";
    for (const auto& w : warnings) out << "- " << w << "\n";
  }
  return out.str();
}

}  // namespace

BenchmarkReport make_report(const RepositorySnapshot& snapshot, const Period& period,
                            const EngineConfig& config, const BandTable& table) {
  BenchmarkReport report{snapshot.repo, period, compute_all(snapshot, period, config), {}, config};
  for (const auto& [kind, result] : report.results)
    if (const auto level = classify(result, table)) report.levels.emplace(kind, *level);
  return report;
}

BenchmarkReport make_report(const RepositorySnapshot& snapshot, const Period& period,
                            const EngineConfig& config) {
  return make_report(snapshot, period, config, BandTable::dora_2022());
}

std::optional<ReportFormat> report_format_from_name(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown") return ReportFormat::Markdown;
  return std::nullopt;
}

std::string render(const BenchmarkReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return render_json(report);
    case ReportFormat::Csv: return render_csv(report);
    case ReportFormat::Markdown: return render_markdown(report);
  }
  return {};
}

BenchmarkReport report_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("report document: ") + e.what());
  }

  const auto require = [&](const char* key) -> const json& {
    const auto it = doc.find(key);
    if (it == doc.end()) throw std::invalid_argument(std::string("report document: missing ") + key);
    return *it;
  };

  const json& period = require("period");
  BenchmarkReport report{
      require("repo").get<std::string>(),
      Period(Timestamp::parse(period.at("from").get<std::string>()),
             Timestamp::parse(period.at("to").get<std::string>())),
      {},
      {},
      {}};

  const json& config = require("config");
  report.config_echo.bug_labels.clear();
  for (const json& label : config.at("bug_labels"))
    report.config_echo.bug_labels.insert(label.get<std::string>());
  report.config_echo.include_prereleases = config.at("include_prereleases").get<bool>();
  report.config_echo.exclude_pull_requests = config.at("exclude_pull_requests").get<bool>();

  for (const auto& [key, entry] : require("results").items()) {
    const auto kind = metric_kind_from_id(key);
    if (!kind) throw std::invalid_argument("report document: unknown metric \"" + key + "\"");
    MetricResult result;
    result.kind = *kind;
    const auto status = metric_status_from_id(entry.at("status").get<std::string>());
    if (!status) throw std::invalid_argument("report document: bad status for " + key);
    result.status = *status;
    if (!entry.at("mean").is_null()) result.mean = entry["mean"].get<double>();
    if (!entry.at("std_dev").is_null()) result.std_dev = entry["std_dev"].get<double>();
    result.sample_count = entry.at("sample_count").get<std::size_t>();
    for (const json& s : entry.at("samples")) result.samples.push_back(s.get<double>());
    report.results.emplace(*kind, std::move(result));
  }

  for (const auto& [key, value] : require("levels").items()) {
    const auto kind = metric_kind_from_id(key);
    const auto level = level_from_name(value.get<std::string>());
    if (!kind || !level)
      throw std::invalid_argument("report document: bad level entry \"" + key + "\"");
    report.levels.emplace(*kind, *level);
  }
  return report;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (!(config.from < config.to)) {
    err << "usage error: --from must precede --to\n";
    return 2;
  }
  if (config.offline_fixture && config.refresh) {
    err << "usage error: --refresh has no effect with --offline\n";
    return 2;
  }
  const Period period(config.from, config.to);

  RepositorySnapshot snapshot;
  if (config.offline_fixture) {
    try {
      snapshot = load_fixture(*config.offline_fixture);
    } catch (const FixtureError& e) {
      err << "fixture error: " << e.what() << "\n";
      return 4;
    }
  } else {
    if (config.repo.empty()) {
      err << "usage error: --repo is required\n";
      return 2;
    }
    try {
      FetchPlan plan{.repo = config.repo,
                     .period = period,
                     .auth_token = config.auth_token,
                     .cache_dir = config.cache_dir};
      if (config.refresh) {
        const auto slash = config.repo.find('/');
        PageCache(config.cache_dir, config.repo.substr(0, slash), config.repo.substr(slash + 1))
            .purge();
      }
      const auto transport = make_github_transport(config.auth_token);
      snapshot = fetch_snapshot(plan, *transport);
    } catch (const IngestError& e) {
      err << "ingestion error: " << e.what() << "\n";
      return 3;
    } catch (const std::invalid_argument& e) {
      err << "usage error: " << e.what() << "\n";
      return 2;
    }
  }

  EngineConfig engine;
  engine.bug_labels = {config.bug_labels.begin(), config.bug_labels.end()};
  engine.include_prereleases = config.include_prereleases;
  engine.exclude_pull_requests = true;

  const BenchmarkReport report = make_report(snapshot, period, engine);
  out << render(report, config.format);
  return 0;
}

}  // namespace ossbench
