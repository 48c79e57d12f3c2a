#include "ossbench/engine.hpp"

#include <algorithm>
#include <unordered_set>

#include "ossbench/stats.hpp"

namespace ossbench {
namespace {

bool release_admitted(const Release& r, const EngineConfig& config) {
  return config.include_prereleases || !r.is_prerelease;
}

bool issue_admitted(const Issue& issue, const EngineConfig& config, bool bug_only) {
  if (config.exclude_pull_requests && issue.is_pull_request) return false;
  if (bug_only) {
    return std::any_of(config.bug_labels.begin(), config.bug_labels.end(),
                       [&](const std::string& l) { return issue.labels.count(l) > 0; });
  }
  return true;
}

MetricResult no_data(MetricKind kind) {
  return MetricResult{kind, MetricStatus::NoData, std::nullopt, std::nullopt, 0, {}};
}

MetricResult from_samples(MetricKind kind, std::vector<double> samples) {
  if (samples.empty()) return no_data(kind);
  const SampleStats stats = population_stats(samples);
  return MetricResult{kind,   MetricStatus::Computed, stats.mean,
                      stats.std_dev, samples.size(),  std::move(samples)};
}

}  // namespace

std::vector<Release> window_releases(const RepositorySnapshot& snapshot, const Period& period,
                                     const EngineConfig& config) {
  std::vector<Release> out;
  for (const Release& r : snapshot.releases)
    if (release_admitted(r, config) && period.contains(r.published_at)) out.push_back(r);
  std::sort(out.begin(), out.end(), [](const Release& a, const Release& b) {
    if (a.published_at != b.published_at) return a.published_at < b.published_at;
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return id_less(a.id, b.id);
  });
  return out;
}

std::vector<AttributedChange> attribute_changes(const RepositorySnapshot& snapshot,
                                                const Period& period, const EngineConfig& config,
                                                Anchor anchor, bool bug_only) {
  // Full release list in creation order; snapshot.releases already carries
  // the (created_at, id) ordering, so a filtered copy preserves it.
  std::vector<const Release*> by_creation;
  by_creation.reserve(snapshot.releases.size());
  for (const Release& r : snapshot.releases)
    if (release_admitted(r, config)) by_creation.push_back(&r);

  // Same membership as window_releases(): admitted and published in period.
  std::unordered_set<std::string_view> in_window;
  for (const Release* r : by_creation)
    if (period.contains(r->published_at)) in_window.insert(r->id);

  std::vector<AttributedChange> out;
  for (const Issue& issue : snapshot.issues) {
    if (!issue_admitted(issue, config, bug_only)) continue;
    if (issue.linked_commits.empty()) continue;

    const Timestamp last_commit = issue.linked_commits.back().committed_at;

    // Owner = first release (creation order) with created_at >= last commit,
    // i.e. the release whose interval (prev.created_at, created_at] contains
    // it. Later members of a same-created_at tie group own empty intervals
    // and never attract issues.
    const auto it = std::lower_bound(by_creation.begin(), by_creation.end(), last_commit,
                                     [](const Release* r, const Timestamp& t) {
                                       return r->created_at < t;
                                     });
    if (it == by_creation.end()) continue;  // newer than every release creation
    const Release* owner = *it;
    if (in_window.find(owner->id) == in_window.end()) continue;  // owner not shipped in period

    const Timestamp anchor_time =
        anchor == Anchor::LastCommit ? last_commit : issue.opened_at;
    out.push_back(AttributedChange{issue.number, owner->id, anchor_time, owner->published_at,
                                   duration_between(anchor_time, owner->published_at)});
  }
  return out;
}

MetricResult release_frequency(const RepositorySnapshot& snapshot, const Period& period,
                               const EngineConfig& config) {
  const std::vector<Release> window = window_releases(snapshot, period, config);
  if (window.empty()) return no_data(MetricKind::ReleaseFrequency);
  if (window.size() == 1) {
    return MetricResult{MetricKind::ReleaseFrequency, MetricStatus::SingleRelease,
                        period.length(), std::nullopt, 0, {}};
  }
  std::vector<double> gaps;
  gaps.reserve(window.size() - 1);
  for (std::size_t i = 1; i < window.size(); ++i)
    gaps.push_back(duration_between(window[i - 1].published_at, window[i].published_at));
  return from_samples(MetricKind::ReleaseFrequency, std::move(gaps));
}

MetricResult lead_time_for_released_changes(const RepositorySnapshot& snapshot,
                                            const Period& period, const EngineConfig& config) {
  std::vector<double> samples;
  for (const AttributedChange& change :
       attribute_changes(snapshot, period, config, Anchor::LastCommit, /*bug_only=*/false))
    samples.push_back(change.elapsed);
  return from_samples(MetricKind::LeadTimeForReleasedChanges, std::move(samples));
}

MetricResult time_to_repair_code(const RepositorySnapshot& snapshot, const Period& period,
                                 const EngineConfig& config) {
  std::vector<double> samples;
  for (const AttributedChange& change :
       attribute_changes(snapshot, period, config, Anchor::IssueOpened, /*bug_only=*/true))
    samples.push_back(change.elapsed);
  return from_samples(MetricKind::TimeToRepairCode, std::move(samples));
}

MetricResult bug_issues_rate(const RepositorySnapshot& snapshot, const Period& period,
                             const EngineConfig& config) {
  std::vector<double> indicators;  // 1.0 = bug-labeled, 0.0 = not
  for (const Issue& issue : snapshot.issues) {
    if (config.exclude_pull_requests && issue.is_pull_request) continue;
    if (!period.contains(issue.opened_at)) continue;
    const bool bug = std::any_of(config.bug_labels.begin(), config.bug_labels.end(),
                                 [&](const std::string& l) { return issue.labels.count(l) > 0; });
    indicators.push_back(bug ? 1.0 : 0.0);
  }
  if (indicators.empty()) return no_data(MetricKind::BugIssuesRate);
  const double mean = population_stats(indicators).mean;
  return MetricResult{MetricKind::BugIssuesRate, MetricStatus::Computed,
                      mean,  std::nullopt,       indicators.size(),
                      std::move(indicators)};
}

std::map<MetricKind, MetricResult> compute_all(const RepositorySnapshot& snapshot,
                                               const Period& period, const EngineConfig& config) {
  std::map<MetricKind, MetricResult> out;
  out.emplace(MetricKind::ReleaseFrequency, release_frequency(snapshot, period, config));
  out.emplace(MetricKind::LeadTimeForReleasedChanges,
              lead_time_for_released_changes(snapshot, period, config));
  out.emplace(MetricKind::TimeToRepairCode, time_to_repair_code(snapshot, period, config));
  out.emplace(MetricKind::BugIssuesRate, bug_issues_rate(snapshot, period, config));
  return out;
}

}  // namespace ossbench
