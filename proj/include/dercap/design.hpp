#pragma once

// Two-objective duration design: average availability vs alignment of the
// normalized supply profile with the normalized demand (activation) profile,
// evaluated over the discrete duration set and reduced to a Pareto front plus
// a weighted recommendation.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "dercap/common.hpp"
#include "dercap/profiles.hpp"
#include "dercap/reserve.hpp"

namespace dercap {

/// Values on the evaluation grid: one row per representative day, 24 hours.
struct SeasonHourGrid {
  std::vector<std::string> days;
  std::vector<double> v;  // days.size() * 24

  SeasonHourGrid() = default;
  explicit SeasonHourGrid(std::vector<std::string> d) : days(std::move(d)) {
    v.assign(days.size() * kHoursPerDay, 0.0);
  }
  double& at(std::size_t day, int h) { return v[day * kHoursPerDay + h]; }
  double at(std::size_t day, int h) const { return v[day * kHoursPerDay + h]; }
  double max_value() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
};

/// Seasons behind a representative-day label ("spring_autumn" -> both).
inline std::vector<Season> seasons_of_day_label(const std::string& label) {
  std::vector<Season> out;
  std::size_t pos = 0;
  while (pos <= label.size()) {
    std::size_t next = label.find('_', pos);
    std::string part = label.substr(pos, next == std::string::npos ? next : next - pos);
    if (!part.empty()) out.push_back(season_from_string(part));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw InputError("cannot map day label '" + label + "' to seasons");
  return out;
}

/// Demand profile adapted to the supply grid: entries of merged seasons are
/// averaged. A label naming a season absent from the profile is an error.
inline SeasonHourGrid demand_grid(const RepresentativeProfile& profile,
                                  const std::vector<std::string>& days, Direction d) {
  SeasonHourGrid g(days);
  for (std::size_t yi = 0; yi < days.size(); ++yi) {
    auto seasons = seasons_of_day_label(days[yi]);
    for (Season s : seasons)
      if (!profile.seasons().contains(s))
        throw InputError("demand profile has no season '" + std::string(to_string(s)) +
                         "' required by day '" + days[yi] + "'");
    for (int h = 0; h < kHoursPerDay; ++h) {
      double sum = 0.0;
      for (Season s : seasons) sum += profile.value(s, h, d);
      g.at(yi, h) = sum / static_cast<double>(seasons.size());
    }
  }
  return g;
}

inline SeasonHourGrid supply_grid(const SupplyProfileFamily& fam, int duration, Direction d) {
  if (!fam.has_duration(duration))
    throw InputError("supply family does not contain duration " + std::to_string(duration));
  SeasonHourGrid g(fam.days());
  for (std::size_t yi = 0; yi < fam.days().size(); ++yi)
    for (int h = 0; h < kHoursPerDay; ++h) g.at(yi, h) = fam.value(duration, fam.days()[yi], h, d);
  return g;
}

/// Average reserve capacity over all (season, hour) entries.
inline double availability_objective(const SupplyProfileFamily& fam, int duration, Direction d) {
  SeasonHourGrid g = supply_grid(fam, duration, d);
  double sum = 0.0;
  for (double x : g.v) sum += x;
  return sum / static_cast<double>(g.v.size());
}

struct NormalizedProfile {
  SeasonHourGrid values;     // entries in [0,1]
  double normalizer = 1.0;   // the max used
  bool degenerate = false;   // identically-zero source mapped to zeros
};

/// Entrywise division by the given maximum. Negative entries are an error; an
/// identically zero profile maps to zeros with the degenerate flag set.
inline NormalizedProfile normalize(const SeasonHourGrid& g, double global_max) {
  for (double x : g.v)
    if (x < 0) throw InputError("normalize: negative profile entry");
  NormalizedProfile out;
  out.values = g;
  out.normalizer = global_max;
  if (global_max <= 0.0) {
    bool all_zero = true;
    for (double x : g.v) all_zero &= x == 0.0;
    if (!all_zero) throw InputError("normalize: nonpositive normalizer for nonzero profile");
    out.degenerate = true;
    out.normalizer = 0.0;
    return out;
  }
  for (double& x : out.values.v) x /= global_max;
  return out;
}

/// Negated mean squared error between the normalized supply and demand curves.
/// The supply normalizer spans all durations of the family (per direction);
/// the demand normalizer spans its own (season, hour) grid.
inline double alignment_objective(const SupplyProfileFamily& fam, int duration, Direction d,
                                  const RepresentativeProfile& demand,
                                  bool per_duration_normalizer = false) {
  SeasonHourGrid supply = supply_grid(fam, duration, d);
  SeasonHourGrid dem = demand_grid(demand, fam.days(), d);
  double sup_max = per_duration_normalizer ? supply.max_value() : fam.max_value(d);
  NormalizedProfile ns = normalize(supply, sup_max);
  NormalizedProfile nd = normalize(dem, dem.max_value());
  double sum = 0.0;
  for (std::size_t i = 0; i < ns.values.v.size(); ++i) {
    double e = ns.values.v[i] - nd.values.v[i];
    sum += e * e;
  }
  return -sum / static_cast<double>(ns.values.v.size());
}

struct DurationScore {
  int duration = 0;
  double availability_kw = 0.0;
  double alignment = 0.0;  // <= 0
  bool pareto = false;
};

/// Flag the non-dominated points (both objectives maximized).
inline void pareto_front(std::vector<DurationScore>& table) {
  for (auto& a : table) {
    a.pareto = true;
    for (const auto& b : table) {
      if (&a == &b) continue;
      bool weakly_better = b.availability_kw >= a.availability_kw && b.alignment >= a.alignment;
      bool strictly = b.availability_kw > a.availability_kw || b.alignment > a.alignment;
      if (weakly_better && strictly) {
        a.pareto = false;
        break;
      }
    }
  }
}

struct SelectionPolicy {
  double weight_availability = 0.5;
  double weight_alignment = 0.5;
};

/// Weighted pick over the Pareto set; ties go to the shorter duration.
inline int select_duration(const std::vector<DurationScore>& table,
                           const SelectionPolicy& policy = {}) {
  if (table.empty()) throw InputError("select_duration: empty table");
  double max_avail = 0.0, min_align = 0.0;
  for (const auto& r : table) {
    max_avail = std::max(max_avail, r.availability_kw);
    min_align = std::min(min_align, r.alignment);
  }
  bool any_pareto = false;
  for (const auto& r : table) any_pareto |= r.pareto;
  if (!any_pareto) throw InputError("select_duration: no Pareto-flagged entries");
  int best_dur = -1;
  double best_score = -kInf;
  for (const auto& r : table) {
    if (!r.pareto) continue;
    double sa = max_avail > 0 ? r.availability_kw / max_avail : 0.0;
    double sm = min_align < 0 ? r.alignment / -min_align : 0.0;
    double score = policy.weight_availability * sa + policy.weight_alignment * sm;
    if (score > best_score + 1e-12 ||
        (std::abs(score - best_score) <= 1e-12 && best_dur > 0 && r.duration < best_dur)) {
      best_score = score;
      best_dur = r.duration;
    }
  }
  return best_dur;
}

struct DirectionDesign {
  Direction direction = Direction::upward;
  std::vector<DurationScore> table;
  int recommended_duration = 0;
};

struct DesignResult {
  std::vector<DirectionDesign> per_direction;
  SelectionPolicy policy;
};

inline DesignResult evaluate_design(const SupplyProfileFamily& fam,
                                    const RepresentativeProfile& demand,
                                    const SelectionPolicy& policy = {},
                                    bool per_duration_normalizer = false,
                                    const std::vector<Direction>& directions = {
                                        Direction::upward, Direction::downward}) {
  DesignResult out;
  out.policy = policy;
  for (Direction d : directions) {
    DirectionDesign dd;
    dd.direction = d;
    for (int dur : fam.durations()) {
      DurationScore row;
      row.duration = dur;
      row.availability_kw = availability_objective(fam, dur, d);
      row.alignment = alignment_objective(fam, dur, d, demand, per_duration_normalizer);
      dd.table.push_back(row);
    }
    pareto_front(dd.table);
    dd.recommended_duration = select_duration(dd.table, policy);
    out.per_direction.push_back(std::move(dd));
  }
  return out;
}

// ---- serialization ----

inline void write_design_csv(std::ostream& os, const DesignResult& res,
                             const std::string& config_hash = {}) {
  if (!config_hash.empty()) os << "# config_hash=" << config_hash << "\n";
  os << "duration,direction,availability_kw,alignment,pareto\n";
  for (const auto& dd : res.per_direction)
    for (const auto& r : dd.table)
      os << r.duration << "," << to_string(dd.direction) << ","
         << format_double(r.availability_kw) << "," << format_double(r.alignment) << ","
         << (r.pareto ? 1 : 0) << "\n";
}

inline void write_scatter_csv(std::ostream& os, const DesignResult& res,
                              const std::string& config_hash = {}) {
  if (!config_hash.empty()) os << "# config_hash=" << config_hash << "\n";
  os << "duration,direction,availability_kw,alignment\n";
  for (const auto& dd : res.per_direction)
    for (const auto& r : dd.table)
      os << r.duration << "," << to_string(dd.direction) << ","
         << format_double(r.availability_kw) << "," << format_double(r.alignment) << "\n";
}

/// Normalized supply-vs-demand curves for one duration per direction
/// (the recommended one unless overridden).
inline void write_fit_overlay_csv(std::ostream& os, const SupplyProfileFamily& fam,
                                  const RepresentativeProfile& demand, const DesignResult& res,
                                  const std::string& config_hash = {}) {
  if (!config_hash.empty()) os << "# config_hash=" << config_hash << "\n";
  os << "duration,season,hour,direction,supply_norm,demand_norm\n";
  for (const auto& dd : res.per_direction) {
    int dur = dd.recommended_duration;
    auto sup = normalize(supply_grid(fam, dur, dd.direction), fam.max_value(dd.direction));
    auto demg = demand_grid(demand, fam.days(), dd.direction);
    auto dem = normalize(demg, demg.max_value());
    for (std::size_t yi = 0; yi < fam.days().size(); ++yi)
      for (int h = 0; h < kHoursPerDay; ++h)
        os << dur << "," << fam.days()[yi] << "," << h + 1 << "," << to_string(dd.direction)
           << "," << format_double(sup.values.at(yi, h)) << ","
           << format_double(dem.values.at(yi, h)) << "\n";
  }
}

inline nlohmann::ordered_json design_to_json(const DesignResult& res,
                                             const std::string& config_hash = {}) {
  nlohmann::ordered_json j;
  if (!config_hash.empty()) j["config_hash"] = config_hash;
  j["weights"] = {{"availability", res.policy.weight_availability},
                  {"alignment", res.policy.weight_alignment}};
  for (const auto& dd : res.per_direction) {
    nlohmann::ordered_json jd;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : dd.table) {
      rows.push_back({{"duration", r.duration},
                      {"availability_kw", r.availability_kw},
                      {"alignment", r.alignment},
                      {"pareto", r.pareto}});
    }
    jd["table"] = rows;
    jd["recommended_duration"] = dd.recommended_duration;
    j[std::string(to_string(dd.direction))] = jd;
  }
  return j;
}

}  // namespace dercap
