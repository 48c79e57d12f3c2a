#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ossbench/time.hpp"

namespace ossbench {

/// A published repository release record. Creation and publication dates
/// are both mandatory; no ordering between them is assumed.
struct Release {
  std::string id;  // opaque, unique within a snapshot
  std::string tag;
  Timestamp created_at;
  Timestamp published_at;
  bool is_prerelease = false;
};

struct CommitEvent {
  std::string sha;
  Timestamp committed_at;
};

struct Issue {
  std::int64_t number = 0;  // positive, unique within a snapshot
  Timestamp opened_at;
  std::optional<Timestamp> closed_at;
  std::set<std::string> labels;
  bool is_pull_request = false;
  std::vector<CommitEvent> linked_commits;  // ascending committed_at
};

/// Ordering used wherever release identifiers break ties: all-digit ids
/// compare numerically, anything else lexicographically.
bool id_less(std::string_view a, std::string_view b);

/// Normalized event log of one repository: every release plus the issues
/// (and their linked commits) relevant to a measurement window.
struct RepositorySnapshot {
  std::string repo;  // "owner/name"
  Timestamp fetched_at;
  std::vector<Release> releases;  // ascending (created_at, id)
  std::vector<Issue> issues;      // ascending (opened_at, number)

  /// Restores the sorting invariants (releases, issues, per-issue commits).
  void normalize();

  /// Verifies every structural invariant; throws std::invalid_argument
  /// naming the first offending field.
  void validate() const;
};

enum class MetricKind {
  ReleaseFrequency,
  LeadTimeForReleasedChanges,
  TimeToRepairCode,
  BugIssuesRate,
};

inline constexpr MetricKind kAllMetricKinds[] = {
    MetricKind::ReleaseFrequency,
    MetricKind::LeadTimeForReleasedChanges,
    MetricKind::TimeToRepairCode,
    MetricKind::BugIssuesRate,
};

/// Machine name, e.g. "release_frequency".
std::string_view metric_kind_id(MetricKind kind);
/// Human name, e.g. "Release Frequency".
std::string_view metric_kind_name(MetricKind kind);
std::optional<MetricKind> metric_kind_from_id(std::string_view id);

enum class MetricStatus {
  Computed,
  SingleRelease,  // ReleaseFrequency only: mean approximated by the period length
  NoData,
};

std::string_view metric_status_id(MetricStatus status);
std::optional<MetricStatus> metric_status_from_id(std::string_view id);

/// One metric's outcome over a snapshot and period.
///
/// mean is in fractional days for the three time metrics and a ratio in
/// [0, 1] for BugIssuesRate, which never carries a std_dev. samples holds
/// the per-item values behind the mean (gap lengths, elapsed durations, or
/// 0/1 bug indicators).
struct MetricResult {
  MetricKind kind = MetricKind::ReleaseFrequency;
  MetricStatus status = MetricStatus::NoData;
  std::optional<double> mean;
  std::optional<double> std_dev;
  std::size_t sample_count = 0;
  std::vector<double> samples;
};

enum class Level { Low, Medium, High };  // ordered worst to best

std::string_view level_name(Level level);
std::optional<Level> level_from_name(std::string_view name);

}  // namespace ossbench
