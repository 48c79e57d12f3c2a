#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ossbench/model.hpp"
#include "ossbench/time.hpp"

namespace ossbench {

struct EngineConfig {
  std::set<std::string> bug_labels{"bug"};  // exact, case-sensitive match
  bool include_prereleases = false;
  bool exclude_pull_requests = true;
};

/// Which event anchors the elapsed time of an attributed issue.
enum class Anchor {
  LastCommit,   // lead time: last linked commit -> release publication
  IssueOpened,  // repair time: issue opened -> release publication
};

/// An issue bound to the release that shipped it.
///
/// elapsed = shipped_at - anchor_time. A negative value (publication before
/// the anchor) only arises from pathological inputs; it is kept in the
/// sample set and surfaced as a data-quality warning by report rendering.
struct AttributedChange {
  std::int64_t issue_number = 0;
  std::string release_id;
  Timestamp anchor_time;
  Timestamp shipped_at;
  Days elapsed = 0.0;
};

/// Releases published inside the period (half-open), prereleases dropped
/// unless configured in; ascending by published_at, ties by created_at
/// then id.
std::vector<Release> window_releases(const RepositorySnapshot& snapshot, const Period& period,
                                     const EngineConfig& config);

/// Binds issues to the in-period release whose attribution interval
/// contains the issue's last linked commit.
///
/// Intervals run over release *creation* times: each release owns
/// (created_at(predecessor), created_at(self)], with the predecessor taken
/// from the full creation-ordered release list, not just the window. An
/// issue ships with the owning release's *publication* time, which restores
/// the intended behaviour when publication order is inverted relative to
/// creation order. Commits predating the period still attribute; a last
/// commit newer than every in-period creation leaves the issue unattributed.
std::vector<AttributedChange> attribute_changes(const RepositorySnapshot& snapshot,
                                                const Period& period, const EngineConfig& config,
                                                Anchor anchor, bool bug_only);

/// Mean/σ of gaps between consecutive in-period publications. Zero
/// releases: NoData (the frequency is only known to exceed the period).
/// One release: SingleRelease with the period length as the approximation.
MetricResult release_frequency(const RepositorySnapshot& snapshot, const Period& period,
                               const EngineConfig& config);

/// Mean/σ of last-commit -> publication durations over attributed issues.
MetricResult lead_time_for_released_changes(const RepositorySnapshot& snapshot,
                                            const Period& period, const EngineConfig& config);

/// Mean/σ of opened -> publication durations over attributed bug issues.
MetricResult time_to_repair_code(const RepositorySnapshot& snapshot, const Period& period,
                                 const EngineConfig& config);

/// Share of issues opened in the period that carry a configured bug label.
/// No std_dev: the metric is a ratio, not a mean of durations.
MetricResult bug_issues_rate(const RepositorySnapshot& snapshot, const Period& period,
                             const EngineConfig& config);

/// All four metrics; a pure function of its inputs.
std::map<MetricKind, MetricResult> compute_all(const RepositorySnapshot& snapshot,
                                               const Period& period, const EngineConfig& config);

}  // namespace ossbench
