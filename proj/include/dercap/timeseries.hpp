#pragma once

// Ingestion and cleaning of 15-minute reserve-activation series.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dercap/common.hpp"
#include "dercap/csv.hpp"
#include "dercap/stats.hpp"
#include "dercap/timegrid.hpp"

namespace dercap {

struct ActivationRecord {
  Timestamp timestamp;
  Direction direction = Direction::upward;
  std::optional<double> energy_mwh;  // per quarter-hour; nullopt = missing
};

/// Column mapping for the activation CSV. Values are read as MWh per
/// quarter-hour by default; with power_units=true they are mean MW over the
/// quarter-hour and converted on ingestion (MWh = MW / 4).
struct ActivationCsvSchema {
  std::string timestamp_column = "timestamp";
  std::string direction_column = "direction";
  std::string value_column = "value";
  std::string upward_label = "upward";
  std::string downward_label = "downward";
  char delimiter = ',';
  bool power_units = false;
};

/// Parse a delimiter-separated activation export. Unparseable or negative
/// value cells become missing entries; structural problems throw InputError.
inline std::vector<ActivationRecord> ingest_activation_csv(std::istream& in,
                                                           const ActivationCsvSchema& schema) {
  CsvReader reader(in, schema.delimiter);
  std::vector<std::string> fields;
  if (!reader.next(fields)) throw InputError("activation CSV: empty stream");
  int ts_col = -1, dir_col = -1, val_col = -1;
  for (int i = 0; i < static_cast<int>(fields.size()); ++i) {
    if (fields[i] == schema.timestamp_column) ts_col = i;
    if (fields[i] == schema.direction_column) dir_col = i;
    if (fields[i] == schema.value_column) val_col = i;
  }
  if (ts_col < 0)
    throw InputError("activation CSV: missing mapped column '" + schema.timestamp_column + "'");
  if (dir_col < 0)
    throw InputError("activation CSV: missing mapped column '" + schema.direction_column + "'");
  if (val_col < 0)
    throw InputError("activation CSV: missing mapped column '" + schema.value_column + "'");

  std::vector<ActivationRecord> records;
  Timestamp last[2] = {{-1}, {-1}};
  bool seen[2] = {false, false};
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank trailing line
    int needed = std::max({ts_col, dir_col, val_col});
    if (static_cast<int>(fields.size()) <= needed)
      throw InputError("activation CSV line " + std::to_string(reader.line_number()) +
                       ": expected at least " + std::to_string(needed + 1) + " fields");
    ActivationRecord rec;
    rec.timestamp = parse_timestamp(fields[ts_col]);
    const std::string& d = fields[dir_col];
    if (d == schema.upward_label)
      rec.direction = Direction::upward;
    else if (d == schema.downward_label)
      rec.direction = Direction::downward;
    else
      throw InputError("activation CSV line " + std::to_string(reader.line_number()) +
                       ": unknown direction label '" + d + "'");
    auto v = parse_double(fields[val_col]);
    if (v && *v >= 0.0) rec.energy_mwh = schema.power_units ? *v / 4.0 : *v;
    int di = static_cast<int>(rec.direction);
    if (seen[di] && rec.timestamp <= last[di])
      throw InputError("activation CSV line " + std::to_string(reader.line_number()) +
                       ": timestamps not strictly increasing within direction stream");
    last[di] = rec.timestamp;
    seen[di] = true;
    records.push_back(rec);
  }
  if (records.empty()) throw InputError("activation CSV: no data rows");
  return records;
}

inline void write_activation_csv(std::ostream& os, const std::vector<ActivationRecord>& records,
                                 const ActivationCsvSchema& schema = {}) {
  os << schema.timestamp_column << schema.delimiter << schema.direction_column << schema.delimiter
     << schema.value_column << "\n";
  for (const auto& r : records) {
    os << format_timestamp(r.timestamp) << schema.delimiter
       << (r.direction == Direction::upward ? schema.upward_label : schema.downward_label)
       << schema.delimiter;
    if (r.energy_mwh)
      os << format_double(schema.power_units ? *r.energy_mwh * 4.0 : *r.energy_mwh);
    else
      os << "N/A";
    os << "\n";
  }
}

struct CleaningReport {
  long outliers_removed = 0;
  long values_imputed = 0;  // cells that were missing for reasons other than the z-rule
  std::vector<std::string> method_tags;
};

struct CleaningPolicy {
  double z_threshold = 6.0;
  int max_gap = 8;  // quarter-hours bridged by linear interpolation
  std::function<Season(const CivilDate&)> season_map = [](const CivilDate& d) {
    return season_of_month(d.month);
  };
};

namespace detail {

struct QuarterGrid {
  std::int64_t first_slot = 0;  // timestamp minutes / 15
  std::vector<std::optional<double>> values;
  std::int64_t slot_of(Timestamp t) const { return t.minutes / 15 - first_slot; }
  Timestamp time_of(std::int64_t slot) const { return Timestamp{(first_slot + slot) * 15}; }
};

inline QuarterGrid to_grid(const std::vector<const ActivationRecord*>& recs) {
  QuarterGrid g;
  g.first_slot = recs.front()->timestamp.minutes / 15;
  std::int64_t last = recs.back()->timestamp.minutes / 15;
  g.values.assign(static_cast<std::size_t>(last - g.first_slot + 1), std::nullopt);
  for (const auto* r : recs) {
    if (r->timestamp.minutes % 15 != 0)
      throw InputError("activation record not on the 15-minute grid: " +
                       format_timestamp(r->timestamp));
    g.values[static_cast<std::size_t>(g.slot_of(r->timestamp))] = r->energy_mwh;
  }
  return g;
}

}  // namespace detail

/// Outlier removal (rolling same-hour median/MAD over a 7-day window) followed
/// by imputation: linear interpolation for interior gaps of at most
/// policy.max_gap quarter-hours, season/hour median otherwise. Directions are
/// processed independently; the output covers the full 15-minute grid between
/// the first and last record of each direction.
inline std::pair<std::vector<ActivationRecord>, CleaningReport> clean_series(
    const std::vector<ActivationRecord>& records, const CleaningPolicy& policy = {}) {
  CleaningReport report;
  bool used_z = false, used_linear = false, used_seasonal = false;
  std::vector<ActivationRecord> out;

  for (Direction dir : kDirections) {
    std::vector<const ActivationRecord*> recs;
    for (const auto& r : records)
      if (r.direction == dir) recs.push_back(&r);
    if (recs.empty()) continue;

    auto grid = detail::to_grid(recs);
    const auto n = static_cast<std::int64_t>(grid.values.size());

    // pass 1: flag z-rule outliers on the original values, all cells at once
    std::vector<std::int64_t> flagged;
    const std::int64_t phase = ((grid.first_slot % 4) + 4) % 4;  // grid-start quarter offset
    for (std::int64_t s = 0; s < n; ++s) {
      if (!grid.values[s]) continue;
      std::int64_t hour_base = s - ((s + phase) % 4);  // first slot of the hour containing s
      std::vector<double> window;
      for (int dday = -3; dday <= 3; ++dday) {
        for (int q = 0; q < 4; ++q) {
          std::int64_t t = hour_base + dday * 96 + q;
          if (t < 0 || t >= n || !grid.values[t]) continue;
          window.push_back(*grid.values[t]);
        }
      }
      if (window.size() < 4) continue;
      double med = median(window);
      double scale = mad(window, med);
      double dev = std::abs(*grid.values[s] - med);
      if (dev > policy.z_threshold * scale && dev > 0) flagged.push_back(s);
    }
    for (auto s : flagged) grid.values[s] = std::nullopt;
    report.outliers_removed += static_cast<long>(flagged.size());
    if (!flagged.empty()) used_z = true;
    std::vector<bool> was_outlier(grid.values.size(), false);
    for (auto s : flagged) was_outlier[static_cast<std::size_t>(s)] = true;

    bool any_present = false;
    for (auto& v : grid.values) any_present |= v.has_value();
    if (!any_present)
      throw InputError(std::string("clean_series: all values missing for direction ") +
                       std::string(to_string(dir)));

    // seasonal same-hour medians from the surviving values
    std::map<std::pair<int, int>, std::vector<double>> pools;  // (season, hour)
    std::vector<double> all_present;
    for (std::int64_t s = 0; s < n; ++s) {
      if (!grid.values[s]) continue;
      Timestamp t = grid.time_of(s);
      pools[{static_cast<int>(policy.season_map(t.date())), t.hour()}].push_back(
          *grid.values[s]);
      all_present.push_back(*grid.values[s]);
    }
    double overall_median = median(all_present);

    // pass 2: fill missing runs
    std::int64_t s = 0;
    while (s < n) {
      if (grid.values[s]) {
        ++s;
        continue;
      }
      std::int64_t run_start = s;
      while (s < n && !grid.values[s]) ++s;
      std::int64_t run_end = s;  // exclusive
      std::int64_t len = run_end - run_start;
      bool interior = run_start > 0 && run_end < n;
      if (interior && len <= policy.max_gap) {
        double a = *grid.values[run_start - 1];
        double b = *grid.values[run_end];
        for (std::int64_t k = 0; k < len; ++k) {
          double w = static_cast<double>(k + 1) / static_cast<double>(len + 1);
          grid.values[run_start + k] = a + (b - a) * w;
          if (!was_outlier[static_cast<std::size_t>(run_start + k)]) ++report.values_imputed;
        }
        used_linear = true;
      } else {
        for (std::int64_t k = run_start; k < run_end; ++k) {
          Timestamp t = grid.time_of(k);
          auto it = pools.find({static_cast<int>(policy.season_map(t.date())), t.hour()});
          grid.values[k] = (it != pools.end() && !it->second.empty()) ? median(it->second)
                                                                      : overall_median;
          if (!was_outlier[static_cast<std::size_t>(k)]) ++report.values_imputed;
        }
        used_seasonal = true;
      }
    }

    for (std::int64_t k = 0; k < n; ++k)
      out.push_back({grid.time_of(k), dir, grid.values[k]});
  }

  if (out.empty()) throw InputError("clean_series: no records");
  std::stable_sort(out.begin(), out.end(), [](const ActivationRecord& a,
                                              const ActivationRecord& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return static_cast<int>(a.direction) < static_cast<int>(b.direction);
  });
  if (used_z) report.method_tags.push_back("rolling_hour_median_mad");
  if (used_linear) report.method_tags.push_back("linear_interpolation");
  if (used_seasonal) report.method_tags.push_back("season_hour_median");
  return {std::move(out), report};
}

struct HourlyEntry {
  Timestamp hour_start;  // minute-of-hour zero
  Direction direction = Direction::upward;
  double mwh = 0.0;  // numerically equal to the mean MW over the hour
};

/// Sum each hour's four quarter-hour energies. Hours with fewer than four
/// quarters are rejected; missing values must have been imputed beforehand.
inline std::vector<HourlyEntry> aggregate_hourly(const std::vector<ActivationRecord>& records) {
  std::map<std::pair<std::int64_t, int>, std::pair<double, int>> acc;  // (hour, dir) -> (sum, n)
  for (const auto& r : records) {
    if (!r.energy_mwh)
      throw InputError("aggregate_hourly: missing value at " + format_timestamp(r.timestamp) +
                       "; run clean_series first");
    auto key = std::make_pair(r.timestamp.minutes / 60, static_cast<int>(r.direction));
    auto& slot = acc[key];
    slot.first += *r.energy_mwh;
    slot.second += 1;
  }
  std::vector<HourlyEntry> out;
  out.reserve(acc.size());
  for (const auto& [key, val] : acc) {
    if (val.second != 4)
      throw InputError("aggregate_hourly: incomplete hour " +
                       format_timestamp(Timestamp{key.first * 60}) + " (" +
                       std::to_string(val.second) + " quarters)");
    out.push_back({Timestamp{key.first * 60},
                   static_cast<Direction>(key.second), val.first});
  }
  return out;
}

}  // namespace dercap
