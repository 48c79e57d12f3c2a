#include "timeline.hpp"

#include <cmath>
#include <random>
#include <string>

namespace ossbench::harness {
namespace {

constexpr std::int64_t kMicrosPerDayInt = 86400LL * 1000000;
constexpr double kMarginDays = 45.0;

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  int uniform_int(CountRange range) {
    const int span = range.hi - range.lo + 1;
    const int v = range.lo + static_cast<int>(u01() * span);
    return v > range.hi ? range.hi : v;
  }

  double exponential(double mean) { return -mean * std::log(1.0 - u01()); }

  bool chance(double p) { return u01() < p; }

 private:
  std::mt19937_64 engine_;
};

std::int64_t day_us(double days) {
  return static_cast<std::int64_t>(std::llround(days * 86400.0 * 1e6));
}

}  // namespace

std::pair<RepositorySnapshot, Period> generate(const TimelineSpec& spec) {
  const Timestamp period_start = Timestamp::parse("2022-07-01T00:00:00Z");
  const Timestamp period_end = Timestamp::parse("2022-12-01T00:00:00Z");
  const Period period(period_start, period_end);

  const std::int64_t t0 = period_start.unix_micros() - day_us(kMarginDays);
  const std::int64_t t1 = period_end.unix_micros() + day_us(kMarginDays);
  const std::int64_t span_us = t1 - t0;

  Draw draw(spec.seed);
  RepositorySnapshot snapshot;
  snapshot.repo = "synthetic/timeline-" + std::to_string(spec.seed);
  snapshot.fetched_at = Timestamp::from_unix_micros(t1);

  const bool constant_cadence = spec.cadence_jitter_days == 0.0;
  const int release_count = draw.uniform_int(spec.release_count);
  if (release_count > 0) {
    const std::int64_t cadence_us = span_us / (release_count + 1);
    const double cadence_days = static_cast<double>(cadence_us) / (86400.0 * 1e6);
    for (int i = 0; i < release_count; ++i) {
      const std::int64_t base = t0 + (i + 1) * cadence_us;
      Release release;
      release.id = "r" + std::to_string(i + 1);
      release.tag = "v1." + std::to_string(i + 1);
      if (constant_cadence) {
        release.created_at = Timestamp::from_unix_micros(base);
        release.published_at = Timestamp::from_unix_micros(base + cadence_us / 4);
        release.is_prerelease = false;
      } else {
        const std::int64_t jitter =
            day_us((2.0 * draw.u01() - 1.0) * spec.cadence_jitter_days);
        release.created_at = Timestamp::from_unix_micros(base + jitter);
        // Publication lag is usually short; one in five runs long enough to
        // cross the next publication, inverting publication order.
        const double u = draw.u01();
        const double lag_days =
            draw.chance(0.2) ? cadence_days * (0.5 + 1.2 * u) : 0.2 * cadence_days * u;
        release.published_at =
            Timestamp::from_unix_micros(release.created_at.unix_micros() + day_us(lag_days));
        release.is_prerelease = draw.chance(spec.prerelease_probability);
      }
      snapshot.releases.push_back(std::move(release));
    }
  }

  const int issue_count = draw.uniform_int(spec.issue_count);
  const double span_days = static_cast<double>(span_us) / (86400.0 * 1e6);
  for (int j = 0; j < issue_count; ++j) {
    Issue issue;
    issue.number = j + 1;
    issue.opened_at = Timestamp::from_unix_micros(t0 + day_us(draw.u01() * (span_days - 10.0)));
    issue.is_pull_request = draw.chance(0.15);
    if (draw.chance(spec.bug_probability)) issue.labels.insert("bug");
    if (draw.chance(0.3)) issue.labels.insert("enhancement");

    const int commit_count = draw.chance(0.25) ? 0 : 1 + static_cast<int>(draw.u01() * 3.0);
    std::int64_t at = issue.opened_at.unix_micros();
    for (int k = 0; k < commit_count; ++k) {
      at += day_us(draw.exponential(spec.commit_lag_mean_days));
      issue.linked_commits.push_back(CommitEvent{
          "f" + std::to_string(issue.number) + "x" + std::to_string(k),
          Timestamp::from_unix_micros(at)});
    }

    if (draw.chance(0.7)) {
      const std::int64_t done =
          issue.linked_commits.empty() ? issue.opened_at.unix_micros() : at;
      issue.closed_at = Timestamp::from_unix_micros(done + day_us(draw.u01() * 20.0));
    }
    snapshot.issues.push_back(std::move(issue));
  }

  snapshot.normalize();
  snapshot.validate();
  return {std::move(snapshot), period};
}

}  // namespace ossbench::harness
