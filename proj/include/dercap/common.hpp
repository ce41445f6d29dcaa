#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dercap {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised for malformed user input (files, configs, schemas). CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for internal failures during a run. CLI maps it to exit code 1.
class RuntimeFailure : public std::runtime_error {
 public:
  explicit RuntimeFailure(const std::string& what) : std::runtime_error(what) {}
};

enum class Direction : std::uint8_t { upward, downward };

inline std::string_view to_string(Direction d) {
  return d == Direction::upward ? "upward" : "downward";
}

inline Direction direction_from_string(std::string_view s) {
  if (s == "upward" || s == "up") return Direction::upward;
  if (s == "downward" || s == "down") return Direction::downward;
  throw InputError("unknown direction: '" + std::string(s) + "'");
}

constexpr std::array<Direction, 2> kDirections = {Direction::upward, Direction::downward};

enum class Season : std::uint8_t { spring, summer, autumn, winter };

constexpr std::array<Season, 4> kSeasons = {Season::spring, Season::summer, Season::autumn,
                                            Season::winter};

inline std::string_view to_string(Season s) {
  switch (s) {
    case Season::spring: return "spring";
    case Season::summer: return "summer";
    case Season::autumn: return "autumn";
    case Season::winter: return "winter";
  }
  return "?";
}

inline Season season_from_string(std::string_view s) {
  for (Season x : kSeasons)
    if (to_string(x) == s) return x;
  throw InputError("unknown season: '" + std::string(s) + "'");
}

/// Meteorological season of a calendar month (1..12).
inline Season season_of_month(int month) {
  if (month >= 3 && month <= 5) return Season::spring;
  if (month >= 6 && month <= 8) return Season::summer;
  if (month >= 9 && month <= 11) return Season::autumn;
  return Season::winter;
}

constexpr int kHoursPerDay = 24;

/// Shortest round-trip decimal representation; used for all numeric CSV output
/// so repeated runs are byte-identical.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

inline double clip(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

/// round-half-up for nonnegative x
inline long round_half_up(double x) { return static_cast<long>(std::floor(x + 0.5)); }

}  // namespace dercap
