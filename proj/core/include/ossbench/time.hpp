#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ossbench {

/// Lengths of time are plain doubles measured in fractional days.
using Days = double;

inline constexpr double kMicrosPerDay = 86400.0 * 1e6;

/// An absolute UTC instant with microsecond resolution.
///
/// The canonical text form is ISO-8601 with an explicit 'Z' designator,
/// second precision ("2022-07-01T00:00:00Z"), extended with a six-digit
/// fraction only when the instant is not on a whole second.
class Timestamp {
 public:
  constexpr Timestamp() = default;

  static constexpr Timestamp from_unix_micros(std::int64_t us) {
    Timestamp t;
    t.us_ = us;
    return t;
  }

  /// Accepts "YYYY-MM-DD" (midnight UTC), "YYYY-MM-DDTHH:MM:SS" with an
  /// optional fractional second, terminated by 'Z', '+HH:MM' or '-HH:MM'.
  /// Offsets are normalized to UTC. Throws std::invalid_argument on any
  /// other shape.
  static Timestamp parse(std::string_view iso8601);

  constexpr std::int64_t unix_micros() const { return us_; }

  std::string to_iso8601() const;

  /// Signed difference (*this - earlier) in fractional days.
  constexpr Days operator-(const Timestamp& earlier) const {
    return static_cast<double>(us_ - earlier.us_) / kMicrosPerDay;
  }

  /// Shift by a (possibly fractional, possibly negative) number of days.
  Timestamp plus_days(Days d) const;

  constexpr auto operator<=>(const Timestamp&) const = default;

 private:
  std::int64_t us_ = 0;
};

/// duration_between(a, b) = b - a in fractional days; antisymmetric.
constexpr Days duration_between(const Timestamp& a, const Timestamp& b) {
  return b - a;
}

/// Half-open UTC window [start, end); start must precede end.
class Period {
 public:
  Period(Timestamp start, Timestamp end);

  constexpr Timestamp start() const { return start_; }
  constexpr Timestamp end() const { return end_; }

  constexpr bool contains(Timestamp t) const { return start_ <= t && t < end_; }

  constexpr Days length() const { return end_ - start_; }

  constexpr bool operator==(const Period&) const = default;

 private:
  Timestamp start_;
  Timestamp end_;
};

}  // namespace ossbench
