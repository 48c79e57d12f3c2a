#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ossbench/model.hpp"

namespace ossbench {

/// One performance band. Bounds are in days for the time metrics and a
/// ratio for BugIssuesRate; an absent bound means unbounded (the outermost
/// bands clamp out-of-range values to High/Low).
struct Band {
  Level level = Level::Medium;
  std::optional<double> lower;
  std::optional<double> upper;
};

/// Per-metric performance bands.
///
/// Time metrics match lower <= x < upper; BugIssuesRate matches
/// lower < x <= upper. Bands are ordered best to worst and must tile the
/// value axis without overlap.
struct BandTable {
  std::map<MetricKind, std::vector<Band>> bands;

  /// The 2022 DORA report levels mapped onto continuous boundaries, with
  /// calendar units fixed at month = 30 days and six months = 182 days.
  /// The report's bands leave gaps (e.g. one day vs one week for release
  /// cadence, 30% vs 46% failure rate); each gap is split at its midpoint:
  ///   release frequency   High < 4d,   Medium [4, 30)d,     Low >= 30d
  ///   lead time           High < 7d,   Medium [7, 30)d,     Low >= 30d
  ///   time to repair      High < 1d,   Medium [1, 7)d,      Low >= 7d
  ///   bug issues rate     High <= 15%, Medium (15%, 38%],   Low > 38%
  static BandTable dora_2022();

  /// Alternative thresholds from a JSON override document (same syntax the
  /// fixture files use); null bounds mean unbounded.
  static BandTable from_json_text(const std::string& text);
  std::string to_json_text() const;

  /// Throws std::invalid_argument if the bands for any metric overlap,
  /// leave holes, or are not ordered best to worst.
  void validate() const;
};

/// Table lookup on the metric's mean. NoData yields nothing; SingleRelease
/// classifies its approximated mean like any other. The std_dev never
/// influences the level.
std::optional<Level> classify(const MetricResult& result, const BandTable& table);
std::optional<Level> classify(const MetricResult& result);

}  // namespace ossbench
