#pragma once

#include <span>

namespace ossbench {

struct SampleStats {
  double mean = 0.0;
  double std_dev = 0.0;
};

/// Population statistics: mean = sum(x)/n, std_dev = sqrt(sum((x-mean)^2)/n).
///
/// The divisor is n (every deviation term counts), not n-1. Accumulation
/// happens over an ascending-sorted copy, so any permutation of the same
/// samples returns bit-identical results, and an all-equal input yields a
/// std_dev of exactly zero.
///
/// Throws std::invalid_argument("no samples") on empty input.
SampleStats population_stats(std::span<const double> samples);

}  // namespace ossbench
