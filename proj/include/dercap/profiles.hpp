#pragma once

// Season-representative daily activation profiles: for every (season, hour,
// direction) the mean hourly activation over all years and season days.

#include <array>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dercap/common.hpp"
#include "dercap/csv.hpp"
#include "dercap/timeseries.hpp"

namespace dercap {

class RepresentativeProfile {
 public:
  RepresentativeProfile() { values_.fill(0.0); }

  double value(Season s, int hour, Direction d) const { return values_[index(s, hour, d)]; }
  void set_value(Season s, int hour, Direction d, double v) { values_[index(s, hour, d)] = v; }

  const std::set<Season>& seasons() const { return seasons_; }
  const std::set<int>& source_years() const { return source_years_; }
  void set_seasons(std::set<Season> s) { seasons_ = std::move(s); }
  void set_source_years(std::set<int> y) { source_years_ = std::move(y); }

  double max_value(Direction d) const {
    double m = 0.0;
    for (Season s : seasons_)
      for (int h = 0; h < kHoursPerDay; ++h) m = std::max(m, value(s, h, d));
    return m;
  }

 private:
  static std::size_t index(Season s, int hour, Direction d) {
    if (hour < 0 || hour >= kHoursPerDay) throw InputError("profile hour out of range");
    return (static_cast<std::size_t>(s) * kHoursPerDay + hour) * 2 + static_cast<std::size_t>(d);
  }
  std::array<double, 4 * kHoursPerDay * 2> values_;
  std::set<Season> seasons_;
  std::set<int> source_years_;
};

/// Mean hourly activation per (season, hour, direction) over all years and all
/// days the series contains for that season. Every present day must be
/// complete (24 hours per direction); an expected season with no mapped days
/// is an error.
inline RepresentativeProfile build_representative_profiles(
    const std::vector<HourlyEntry>& hourly,
    const std::function<Season(const CivilDate&)>& season_map, const std::set<int>& years,
    const std::set<Season>& expected_seasons = {Season::spring, Season::summer, Season::autumn,
                                                Season::winter}) {
  if (hourly.empty()) throw InputError("build_representative_profiles: empty hourly series");

  // day -> per-direction hour coverage and values
  struct DayAcc {
    std::array<std::array<double, kHoursPerDay>, 2> val{};
    std::array<std::array<bool, kHoursPerDay>, 2> seen{};
  };
  std::map<std::int64_t, DayAcc> days;
  for (const auto& e : hourly) {
    CivilDate d = e.hour_start.date();
    if (!years.contains(d.year)) continue;
    auto& acc = days[days_from_civil(d.year, d.month, d.day)];
    int h = e.hour_start.hour();
    int di = static_cast<int>(e.direction);
    if (acc.seen[di][h])
      throw InputError("duplicate hourly entry at " + format_timestamp(e.hour_start));
    acc.seen[di][h] = true;
    acc.val[di][h] = e.mwh;
  }
  if (days.empty()) throw InputError("build_representative_profiles: no data within years");

  std::array<std::array<std::array<double, kHoursPerDay>, 2>, 4> sums{};
  std::array<std::array<long, 2>, 4> day_counts{};
  for (const auto& [dayn, acc] : days) {
    CivilDate cd = civil_from_days(dayn);
    Season s = season_map(cd);
    for (int di = 0; di < 2; ++di) {
      bool any = false, all = true;
      for (int h = 0; h < kHoursPerDay; ++h) {
        any |= acc.seen[di][h];
        all &= acc.seen[di][h];
      }
      if (!any) continue;
      if (!all)
        throw InputError("incomplete day " + std::to_string(cd.year) + "-" +
                         std::to_string(cd.month) + "-" + std::to_string(cd.day) +
                         " in hourly series");
      ++day_counts[static_cast<int>(s)][di];
      for (int h = 0; h < kHoursPerDay; ++h) sums[static_cast<int>(s)][di][h] += acc.val[di][h];
    }
  }

  RepresentativeProfile profile;
  for (Season s : expected_seasons) {
    for (int di = 0; di < 2; ++di) {
      long cnt = day_counts[static_cast<int>(s)][di];
      if (cnt == 0)
        throw InputError(std::string("season with zero mapped days: ") +
                         std::string(to_string(s)));
      for (int h = 0; h < kHoursPerDay; ++h)
        profile.set_value(s, h, static_cast<Direction>(di),
                          sums[static_cast<int>(s)][di][h] / static_cast<double>(cnt));
    }
  }
  profile.set_seasons(expected_seasons);
  profile.set_source_years(years);
  return profile;
}

// ---- serialization ----

inline void write_profile_csv(std::ostream& os, const RepresentativeProfile& p,
                              const std::string& config_hash = {}) {
  if (!config_hash.empty()) os << "# config_hash=" << config_hash << "\n";
  os << "season,hour,direction,value_mw\n";
  for (Season s : p.seasons())
    for (int h = 0; h < kHoursPerDay; ++h)
      for (Direction d : kDirections)
        os << to_string(s) << "," << h + 1 << "," << to_string(d) << ","
           << format_double(p.value(s, h, d)) << "\n";
}

inline nlohmann::ordered_json profile_to_json(const RepresentativeProfile& p,
                                              const std::string& config_hash = {}) {
  nlohmann::ordered_json j;
  if (!config_hash.empty()) j["config_hash"] = config_hash;
  j["source_years"] = p.source_years();
  nlohmann::ordered_json vals;
  for (Season s : p.seasons()) {
    nlohmann::ordered_json per_dir;
    for (Direction d : kDirections) {
      std::vector<double> hours(kHoursPerDay);
      for (int h = 0; h < kHoursPerDay; ++h) hours[h] = p.value(s, h, d);
      per_dir[std::string(to_string(d))] = hours;
    }
    vals[std::string(to_string(s))] = per_dir;
  }
  j["values_mw"] = vals;
  return j;
}

inline RepresentativeProfile profile_from_json(const nlohmann::json& j) {
  RepresentativeProfile p;
  std::set<Season> seasons;
  const auto& vals = j.at("values_mw");
  for (auto it = vals.begin(); it != vals.end(); ++it) {
    Season s = season_from_string(it.key());
    seasons.insert(s);
    for (Direction d : kDirections) {
      const auto& arr = it.value().at(std::string(to_string(d)));
      if (arr.size() != kHoursPerDay)
        throw InputError("profile JSON: expected 24 hourly values");
      for (int h = 0; h < kHoursPerDay; ++h) p.set_value(s, h, d, arr[h].get<double>());
    }
  }
  p.set_seasons(std::move(seasons));
  if (j.contains("source_years")) {
    std::set<int> years;
    for (const auto& y : j.at("source_years")) years.insert(y.get<int>());
    p.set_source_years(std::move(years));
  }
  return p;
}

inline nlohmann::ordered_json cleaning_report_to_json(const CleaningReport& r) {
  nlohmann::ordered_json j;
  j["outliers_removed"] = r.outliers_removed;
  j["values_imputed"] = r.values_imputed;
  j["method_tags"] = r.method_tags;
  return j;
}

}  // namespace dercap
