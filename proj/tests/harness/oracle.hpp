#pragma once

#include <map>

#include "ossbench/engine.hpp"
#include "ossbench/model.hpp"
#include "ossbench/time.hpp"

namespace ossbench::harness {

/// Brute-force re-derivation of all four metrics for differential testing.
///
/// Same contract as compute_all, but every formula is translated literally
/// with per-event quadratic scans and naive two-pass statistics; none of the
/// engine's windowing, sorting or accumulation code is reused. Intended for
/// snapshots of up to ~50 releases and ~500 issues.
std::map<MetricKind, MetricResult> oracle_metrics(const RepositorySnapshot& snapshot,
                                                  const Period& period,
                                                  const EngineConfig& config);

}  // namespace ossbench::harness
