#include "ossbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ossbench {

SampleStats population_stats(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("no samples");

  std::vector<double> ordered(samples.begin(), samples.end());
  std::sort(ordered.begin(), ordered.end());

  // Constant input short-circuits so the dispersion is exactly zero.
  if (ordered.front() == ordered.back()) return {ordered.front(), 0.0};

  double sum = 0.0;
  for (double x : ordered) sum += x;
  const double mean = sum / static_cast<double>(ordered.size());

  double sq = 0.0;
  for (double x : ordered) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / static_cast<double>(ordered.size()))};
}

}  // namespace ossbench
