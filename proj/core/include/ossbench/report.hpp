#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ossbench/classifier.hpp"
#include "ossbench/engine.hpp"
#include "ossbench/model.hpp"
#include "ossbench/time.hpp"

namespace ossbench {

/// The four metric results plus performance levels for one repo + period.
/// A levels entry exists exactly when the result has data to classify.
struct BenchmarkReport {
  std::string repo;
  Period period;
  std::map<MetricKind, MetricResult> results;
  std::map<MetricKind, Level> levels;
  EngineConfig config_echo;
};

BenchmarkReport make_report(const RepositorySnapshot& snapshot, const Period& period,
                            const EngineConfig& config, const BandTable& table);
BenchmarkReport make_report(const RepositorySnapshot& snapshot, const Period& period,
                            const EngineConfig& config);

enum class ReportFormat { Json, Csv, Markdown };

std::optional<ReportFormat> report_format_from_name(std::string_view name);

/// Pure rendering. json is lossless with stable key order; csv emits one
/// row per metric; markdown mirrors the four-column results-table layout
/// (metric / mean / std dev / level). Day and percent values display with
/// two decimals, rounded half away from zero; the json format keeps full
/// precision. Metrics without data render with an explanatory status note
/// instead of being dropped, and negative elapsed samples are surfaced as
/// data-quality warnings.
std::string render(const BenchmarkReport& report, ReportFormat format);

/// Inverse of the json rendering: render(report_from_json(s), Json) == s
/// for any s produced by render.
BenchmarkReport report_from_json(const std::string& text);

struct CliConfig {
  std::string repo;
  Timestamp from;
  Timestamp to;
  std::vector<std::string> bug_labels{"bug", "type:bug", "kind/bug"};
  std::optional<std::filesystem::path> offline_fixture;
  std::filesystem::path cache_dir{".bench-cache"};
  ReportFormat format = ReportFormat::Markdown;
  bool include_prereleases = false;
  bool refresh = false;
  std::optional<std::string> auth_token;  // from the environment, never argv
};

/// Exit codes: 0 success (NoData metrics included), 2 usage error,
/// 3 ingestion error, 4 fixture error. Failures print one diagnostic line
/// to err.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ossbench
