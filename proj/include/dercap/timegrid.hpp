#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "dercap/common.hpp"

namespace dercap {

// Minimal civil-calendar arithmetic (no time zones; timestamps are naive local
// time as in the activation exports we ingest).

struct CivilDate {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  auto operator<=>(const CivilDate&) const = default;
};

/// Days since 1970-01-01 (Howard Hinnant's algorithm).
inline std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

inline bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

inline int days_in_month(int y, int m) {
  static const int n[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : n[m - 1];
}

/// Timestamp with 1-minute resolution, stored as minutes since 1970-01-01T00:00.
struct Timestamp {
  std::int64_t minutes = 0;

  static Timestamp from_parts(int y, int mo, int d, int h, int mi) {
    return {days_from_civil(y, mo, d) * 1440 + h * 60 + mi};
  }
  CivilDate date() const {
    std::int64_t days = minutes >= 0 ? minutes / 1440 : (minutes - 1439) / 1440;
    return civil_from_days(days);
  }
  int hour() const { return static_cast<int>(((minutes % 1440) + 1440) % 1440) / 60; }
  int minute() const { return static_cast<int>(((minutes % 60) + 60) % 60); }
  auto operator<=>(const Timestamp&) const = default;
};

/// Parse "YYYY-MM-DD[T ]HH:MM[:SS][Z]". Seconds must be zero when present.
inline Timestamp parse_timestamp(std::string_view s) {
  auto fail = [&] { throw InputError("unparseable timestamp: '" + std::string(s) + "'"); };
  auto digits = [&](std::size_t pos, int n) {
    int v = 0;
    if (pos + n > s.size()) fail();
    for (int i = 0; i < n; ++i) {
      char ch = s[pos + i];
      if (ch < '0' || ch > '9') fail();
      v = v * 10 + (ch - '0');
    }
    return v;
  };
  if (s.size() < 16) fail();
  int y = digits(0, 4);
  if (s[4] != '-') fail();
  int mo = digits(5, 2);
  if (s[7] != '-') fail();
  int d = digits(8, 2);
  if (s[10] != 'T' && s[10] != ' ') fail();
  int h = digits(11, 2);
  if (s[13] != ':') fail();
  int mi = digits(14, 2);
  if (s.size() > 16 && s[16] == ':') {
    if (digits(17, 2) != 0) fail();
  }
  if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) || h > 23 || mi > 59) fail();
  return Timestamp::from_parts(y, mo, d, h, mi);
}

inline std::string format_timestamp(Timestamp t) {
  CivilDate cd = t.date();
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", cd.year, cd.month, cd.day, t.hour(),
                t.minute());
  return buf;
}

}  // namespace dercap
