#include "ossbench/time.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ossbench {
namespace {

// Civil <-> epoch-day conversions, valid far beyond any plausible
// repository history (proleptic Gregorian calendar).
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);             // [0, 399]
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;   // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yy + (m <= 2));
}

bool days_in_month_ok(int y, unsigned m, unsigned d) {
  static constexpr unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m < 1 || m > 12 || d < 1) return false;
  unsigned max = lengths[m - 1];
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  if (m == 2 && leap) max = 29;
  return d <= max;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("invalid ISO-8601 timestamp: \"" + std::string(text) + "\"");
}

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }

  int number(int digits) {
    int v = 0;
    for (int i = 0; i < digits; ++i) {
      if (done() || !std::isdigit(static_cast<unsigned char>(s[pos]))) bad(s);
      v = v * 10 + (s[pos++] - '0');
    }
    return v;
  }

  void expect(char c) {
    if (done() || s[pos] != c) bad(s);
    ++pos;
  }
};

}  // namespace

Timestamp Timestamp::parse(std::string_view text) {
  Cursor c{text};
  const int year = c.number(4);
  c.expect('-');
  const int month = c.number(2);
  c.expect('-');
  const int day = c.number(2);
  if (!days_in_month_ok(year, static_cast<unsigned>(month), static_cast<unsigned>(day)))
    bad(text);

  std::int64_t tod_us = 0;
  std::int64_t offset_us = 0;
  if (!c.done()) {
    if (c.peek() != 'T' && c.peek() != ' ') bad(text);
    ++c.pos;
    const int hour = c.number(2);
    c.expect(':');
    const int minute = c.number(2);
    c.expect(':');
    const int second = c.number(2);
    if (hour > 23 || minute > 59 || second > 60) bad(text);  // tolerate leap second
    tod_us = (((static_cast<std::int64_t>(hour) * 60) + minute) * 60 + second) * 1000000;

    if (c.peek() == '.') {
      ++c.pos;
      std::int64_t frac = 0;
      int digits = 0;
      while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        if (digits < 6) frac = frac * 10 + (c.peek() - '0');
        ++digits;
        ++c.pos;
      }
      if (digits == 0) bad(text);
      while (digits < 6) {
        frac *= 10;
        ++digits;
      }
      tod_us += frac;
    }

    if (c.done()) bad(text);  // zone designator is mandatory for datetimes
    const char zone = c.peek();
    ++c.pos;
    if (zone == 'Z') {
      // UTC
    } else if (zone == '+' || zone == '-') {
      const int oh = c.number(2);
      c.expect(':');
      const int om = c.number(2);
      if (oh > 23 || om > 59) bad(text);
      offset_us = (static_cast<std::int64_t>(oh) * 60 + om) * 60 * 1000000;
      if (zone == '+') offset_us = -offset_us;  // ahead of UTC => subtract
    } else {
      bad(text);
    }
    if (!c.done()) bad(text);
  }

  const std::int64_t epoch_days =
      days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  return from_unix_micros(epoch_days * 86400 * 1000000 + tod_us + offset_us);
}

std::string Timestamp::to_iso8601() const {
  std::int64_t days = us_ / (86400LL * 1000000);
  std::int64_t rem = us_ % (86400LL * 1000000);
  if (rem < 0) {
    rem += 86400LL * 1000000;
    --days;
  }
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  const int hour = static_cast<int>(rem / 3600000000LL);
  const int minute = static_cast<int>((rem / 60000000) % 60);
  const int second = static_cast<int>((rem / 1000000) % 60);
  const int micros = static_cast<int>(rem % 1000000);

  char buf[40];
  if (micros == 0) {
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", y, m, d, hour, minute,
                  second);
  } else {
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d.%06dZ", y, m, d, hour, minute,
                  second, micros);
  }
  return buf;
}

Timestamp Timestamp::plus_days(Days d) const {
  return from_unix_micros(us_ + static_cast<std::int64_t>(std::llround(d * kMicrosPerDay)));
}

Period::Period(Timestamp start, Timestamp end) : start_(start), end_(end) {
  if (!(start < end)) throw std::invalid_argument("period start must precede end");
}

}  // namespace ossbench
