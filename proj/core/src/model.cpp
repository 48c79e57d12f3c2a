#include "ossbench/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace ossbench {

bool id_less(std::string_view a, std::string_view b) {
  const auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return c >= '0' && c <= '9'; });
  };
  if (all_digits(a) && all_digits(b)) {
    const auto strip = [](std::string_view s) {
      const auto p = s.find_first_not_of('0');
      return p == std::string_view::npos ? s.substr(s.size() - 1) : s.substr(p);
    };
    const std::string_view na = strip(a), nb = strip(b);
    if (na.size() != nb.size()) return na.size() < nb.size();
    if (na != nb) return na < nb;
    return a < b;
  }
  return a < b;
}

void RepositorySnapshot::normalize() {
  std::sort(releases.begin(), releases.end(), [](const Release& a, const Release& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return id_less(a.id, b.id);
  });
  std::sort(issues.begin(), issues.end(), [](const Issue& a, const Issue& b) {
    if (a.opened_at != b.opened_at) return a.opened_at < b.opened_at;
    return a.number < b.number;
  });
  for (auto& issue : issues) {
    std::sort(issue.linked_commits.begin(), issue.linked_commits.end(),
              [](const CommitEvent& a, const CommitEvent& b) {
                if (a.committed_at != b.committed_at) return a.committed_at < b.committed_at;
                return a.sha < b.sha;
              });
  }
}

void RepositorySnapshot::validate() const {
  std::unordered_set<std::string> release_ids;
  for (std::size_t i = 0; i < releases.size(); ++i) {
    const Release& r = releases[i];
    const std::string where = "releases[" + std::to_string(i) + "]";
    if (r.id.empty()) throw std::invalid_argument(where + ".id: empty");
    if (!release_ids.insert(r.id).second)
      throw std::invalid_argument(where + ".id: duplicate \"" + r.id + "\"");
    if (i > 0) {
      const Release& p = releases[i - 1];
      const bool ordered = p.created_at < r.created_at ||
                           (p.created_at == r.created_at && id_less(p.id, r.id));
      if (!ordered) throw std::invalid_argument(where + ": releases not sorted by created_at/id");
    }
  }

  std::unordered_set<std::int64_t> issue_numbers;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    const Issue& issue = issues[i];
    const std::string where = "issues[" + std::to_string(i) + "]";
    if (issue.number <= 0) throw std::invalid_argument(where + ".number: must be positive");
    if (!issue_numbers.insert(issue.number).second)
      throw std::invalid_argument(where + ".number: duplicate " + std::to_string(issue.number));
    if (issue.closed_at && *issue.closed_at < issue.opened_at)
      throw std::invalid_argument(where + ".closed_at: precedes opened_at");
    if (i > 0) {
      const Issue& p = issues[i - 1];
      const bool ordered = p.opened_at < issue.opened_at ||
                           (p.opened_at == issue.opened_at && p.number < issue.number);
      if (!ordered) throw std::invalid_argument(where + ": issues not sorted by opened_at/number");
    }
    std::unordered_set<std::string> shas;
    for (std::size_t k = 0; k < issue.linked_commits.size(); ++k) {
      const CommitEvent& c = issue.linked_commits[k];
      const std::string cw = where + ".commits[" + std::to_string(k) + "]";
      if (c.sha.empty()) throw std::invalid_argument(cw + ".sha: empty");
      if (!shas.insert(c.sha).second)
        throw std::invalid_argument(cw + ".sha: duplicate \"" + c.sha + "\"");
      if (k > 0 && c.committed_at < issue.linked_commits[k - 1].committed_at)
        throw std::invalid_argument(cw + ": commits not sorted by committed_at");
    }
  }
}

std::string_view metric_kind_id(MetricKind kind) {
  switch (kind) {
    case MetricKind::ReleaseFrequency: return "release_frequency";
    case MetricKind::LeadTimeForReleasedChanges: return "lead_time_for_released_changes";
    case MetricKind::TimeToRepairCode: return "time_to_repair_code";
    case MetricKind::BugIssuesRate: return "bug_issues_rate";
  }
  return "unknown";
}

std::string_view metric_kind_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::ReleaseFrequency: return "Release Frequency";
    case MetricKind::LeadTimeForReleasedChanges: return "Lead Time For Released Changes";
    case MetricKind::TimeToRepairCode: return "Time To Repair Code";
    case MetricKind::BugIssuesRate: return "Bug Issues Rate";
  }
  return "Unknown";
}

std::optional<MetricKind> metric_kind_from_id(std::string_view id) {
  for (MetricKind kind : kAllMetricKinds)
    if (metric_kind_id(kind) == id) return kind;
  return std::nullopt;
}

std::string_view metric_status_id(MetricStatus status) {
  switch (status) {
    case MetricStatus::Computed: return "computed";
    case MetricStatus::SingleRelease: return "single_release";
    case MetricStatus::NoData: return "no_data";
  }
  return "unknown";
}

std::optional<MetricStatus> metric_status_from_id(std::string_view id) {
  for (MetricStatus s :
       {MetricStatus::Computed, MetricStatus::SingleRelease, MetricStatus::NoData})
    if (metric_status_id(s) == id) return s;
  return std::nullopt;
}

std::string_view level_name(Level level) {
  switch (level) {
    case Level::Low: return "Low";
    case Level::Medium: return "Medium";
    case Level::High: return "High";
  }
  return "Unknown";
}

std::optional<Level> level_from_name(std::string_view name) {
  for (Level l : {Level::Low, Level::Medium, Level::High})
    if (level_name(l) == name) return l;
  return std::nullopt;
}

}  // namespace ossbench
