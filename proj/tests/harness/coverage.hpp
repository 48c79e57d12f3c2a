#pragma once

#include "ossbench/engine.hpp"
#include "ossbench/model.hpp"
#include "ossbench/time.hpp"

namespace ossbench::harness {

/// Occurrence counts of the boundary geometries the attribution rules hinge
/// on. A generated corpus is only trustworthy for differential testing if
/// every one of these shows up at least once.
struct GeometryCounters {
  long window_creation_before_period = 0;   // included release created before the period
  long window_publication_after_end = 0;    // excluded release published past the period
  long release_shipping_multiple_issues = 0;
  long last_commit_in_later_interval = 0;   // first commit in an earlier release's interval
  long publication_order_inversion = 0;     // shipped by a release published before an older one
  long pre_period_commit_attributed = 0;
  long commit_after_newest_creation = 0;    // has commits but nothing to attribute to
  long bug_issue_attributed = 0;
  long bug_issue_unattributed = 0;

  GeometryCounters& operator+=(const GeometryCounters& other);
  bool all_covered() const;
};

GeometryCounters count_geometries(const RepositorySnapshot& snapshot, const Period& period,
                                  const EngineConfig& config);

}  // namespace ossbench::harness
