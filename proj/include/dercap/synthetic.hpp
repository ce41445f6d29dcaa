#pragma once

// Deterministic synthetic fixtures: feeder networks, DER fleets matching the
// shipped case-study portfolio, and activation series with plantable
// season/hour patterns. These stand in for the proprietary network and the
// unbundled activation dataset.

#include <cmath>
#include <string>
#include <vector>

#include "dercap/devices.hpp"
#include "dercap/network.hpp"
#include "dercap/rng.hpp"
#include "dercap/timeseries.hpp"

namespace dercap {

/// Star of chains: `n_feeders` equal feeders hanging off the root bus.
inline Network make_synthetic_network(int n_buses = 97, int n_feeders = 6,
                                      double base_kva = 400.0) {
  if (n_buses < 2 || n_feeders < 1 || n_feeders > n_buses - 1)
    throw InputError("make_synthetic_network: invalid size");
  Network net;
  net.base_kva = base_kva;
  net.root = 0;
  for (int b = 0; b < n_buses; ++b) net.buses.push_back({"b" + std::to_string(b)});
  int next = 1;
  for (int f = 0; f < n_feeders; ++f) {
    int remaining = n_buses - next;
    int feeders_left = n_feeders - f;
    int len = remaining / feeders_left;
    int prev = 0;
    for (int k = 0; k < len; ++k) {
      Line l;
      l.from_bus = prev;
      l.to_bus = next;
      l.r = prev == 0 ? 0.0030 : 0.0045;
      l.x = prev == 0 ? 0.0012 : 0.0018;
      l.s_max = prev == 0 ? 0.80 : (k < len / 2 ? 0.45 : 0.25);
      net.lines.push_back(l);
      prev = next++;
    }
  }
  return net;
}

inline Network make_chain_network(int n_buses, double r = 0.01, double x = 0.005,
                                  double s_max = 0.5, double base_kva = 400.0) {
  Network net;
  net.base_kva = base_kva;
  net.root = 0;
  for (int b = 0; b < n_buses; ++b) net.buses.push_back({"b" + std::to_string(b)});
  for (int b = 1; b < n_buses; ++b) net.lines.push_back({b - 1, b, r, x, s_max});
  return net;
}

namespace synth {

struct DayShape {
  std::string label;
  double pv_peak, pv_rise, pv_set;
  double amb_lo, amb_hi;     // ambient daily range, degC
  double load_scale;
};

inline std::vector<DayShape> rep_day_shapes() {
  // summer ambient kept far below the heat-pump comfort ceiling so additive
  // temperature scenarios cannot make the heating-only model infeasible
  return {
      {"winter", 0.30, 8.0, 17.0, 0.0, 6.0, 1.00},
      {"spring_autumn", 0.55, 6.5, 19.0, 7.0, 13.0, 0.85},
      {"summer", 0.68, 5.5, 21.0, 11.0, 16.5, 0.70},
  };
}

inline double pv_cf(const DayShape& s, int h) {
  double mid = h + 0.5;
  if (mid <= s.pv_rise || mid >= s.pv_set) return 0.0;
  double u = (mid - s.pv_rise) / (s.pv_set - s.pv_rise);
  return s.pv_peak * std::sin(M_PI * u);
}

inline double ambient(const DayShape& s, int h) {
  // coolest at 05:00, warmest at 15:00
  double phase = (h + 0.5 - 15.0) / 24.0 * 2.0 * M_PI;
  return 0.5 * (s.amb_lo + s.amb_hi) + 0.5 * (s.amb_hi - s.amb_lo) * std::cos(phase);
}

inline double load_shape(const DayShape& s, int h) {
  double base = 0.45;
  double morning = 0.35 * std::exp(-0.5 * std::pow((h + 0.5 - 8.0) / 1.6, 2));
  double evening = 0.55 * std::exp(-0.5 * std::pow((h + 0.5 - 19.5) / 2.0, 2));
  return s.load_scale * (base + morning + evening);
}

}  // namespace synth

/// Case-study portfolio on the given network: 150 kWp PV, 85 kW of heat
/// pumps, a 75 kWh battery, 67 EV events at 70 kWh / 7 kW, and 150 kW of peak
/// non-dispatchable load. Placement and EV schedules are seeded draws.
inline FleetFile make_case_study_fleet(const Network& net, std::uint64_t seed = 20240001ULL) {
  FleetFile out;
  auto shapes = synth::rep_day_shapes();
  for (const auto& s : shapes) out.rep_days.push_back(s.label);
  const int nb = static_cast<int>(net.buses.size());
  Rng rng(substream_seed(seed, 0xF1EE7ULL));
  auto pick_bus = [&] { return 1 + static_cast<int>(rng.next_below(nb - 1)); };

  // device skeletons shared across representative days
  const std::vector<double> pv_sizes = {20, 20, 18, 17, 16, 15, 14, 12, 10, 8};  // 150 kWp
  const std::vector<double> hp_sizes = {20, 15, 15, 15, 10, 10};                 // 85 kW
  std::vector<int> pv_bus, hp_bus, load_bus;
  for (std::size_t i = 0; i < pv_sizes.size(); ++i) pv_bus.push_back(pick_bus());
  for (std::size_t i = 0; i < hp_sizes.size(); ++i) hp_bus.push_back(pick_bus());
  int bess_bus = pick_bus();
  const int n_loads = 30;
  std::vector<double> load_peaks(n_loads);
  double peak_sum = 0;
  for (int i = 0; i < n_loads; ++i) {
    load_bus.push_back(pick_bus());
    load_peaks[i] = 2.0 + 6.0 * rng.next_unit();
    peak_sum += load_peaks[i];
  }
  for (auto& p : load_peaks) p *= 150.0 / peak_sum;  // 150 kW peak total

  struct EvDraw {
    int bus, arrive, depart;
    double e_req, soc_arrive;
  };
  std::vector<EvDraw> evs;
  for (int i = 0; i < 67; ++i) {
    EvDraw e;
    e.bus = pick_bus();
    e.arrive = 7 + static_cast<int>(rng.next_below(11));            // 7..17
    int len = 3 + static_cast<int>(rng.next_below(6));              // 3..8 h
    e.depart = std::min(e.arrive + len, 23);
    e.e_req = 4.0 + 8.0 * rng.next_unit();
    e.soc_arrive = 0.2 + 0.3 * rng.next_unit();
    evs.push_back(e);
  }

  for (const auto& shape : shapes) {
    Fleet f;
    for (std::size_t i = 0; i < pv_sizes.size(); ++i) {
      Generator g;
      g.id = "pv" + std::to_string(i);
      g.bus = pv_bus[i];
      g.p_nom_kw = pv_sizes[i];
      g.s_rating_kva = pv_sizes[i] * 1.1;
      for (int h = 0; h < kHoursPerDay; ++h) g.cf.push_back(synth::pv_cf(shape, h));
      f.generators.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < hp_sizes.size(); ++i) {
      HeatPump h;
      h.id = "hp" + std::to_string(i);
      h.bus = hp_bus[i];
      h.p_max_kw = hp_sizes[i];
      h.cop = 3.0;
      h.r_th_k_per_kw = 2.0;
      h.c_th_kwh_per_k = 10.0;
      h.t_min_c = 20.0;
      h.t_max_c = 24.0;
      h.t_init_c = 21.0;
      for (int t = 0; t < kHoursPerDay; ++t) h.ambient_c.push_back(synth::ambient(shape, t));
      f.heat_pumps.push_back(std::move(h));
    }
    {
      Battery b;
      b.id = "bess0";
      b.bus = bess_bus;
      b.e_cap_kwh = 75.0;
      b.p_ch_max_kw = 40.0;
      b.p_dis_max_kw = 40.0;
      b.eta_ch = 0.95;
      b.eta_dis = 0.95;
      b.soc_min = 0.05;
      b.soc_max = 0.95;
      b.soc_init = 0.5;
      b.s_rating_kva = 45.0;
      f.batteries.push_back(std::move(b));
    }
    for (std::size_t i = 0; i < evs.size(); ++i) {
      EvEvent e;
      e.vehicle = "ev" + std::to_string(i);
      e.bus = evs[i].bus;
      e.t_arrive = evs[i].arrive;
      e.t_depart = evs[i].depart;
      e.e_req_kwh = evs[i].e_req;
      e.e_cap_kwh = 70.0;
      e.p_max_kw = 7.0;
      e.eta_ch = 0.95;
      e.eta_dis = 0.95;
      e.v2g = false;
      e.r_min_kw = 0.3;
      e.soc_arrive = evs[i].soc_arrive;
      f.ev_events.push_back(std::move(e));
    }
    for (int i = 0; i < n_loads; ++i) {
      FixedLoad l;
      l.id = "load" + std::to_string(i);
      l.bus = load_bus[i];
      for (int h = 0; h < kHoursPerDay; ++h) {
        double p = load_peaks[i] * synth::load_shape(shape, h);
        l.p_kw.push_back(p);
        l.q_kvar.push_back(p * 0.3287);  // power factor 0.95
      }
      f.loads.push_back(std::move(l));
    }
    f.validate();
    out.fleets[shape.label] = std::move(f);
  }
  return out;
}

/// Small test fixture: 5-bus chain with one device of each class.
inline FleetFile make_small_fixture_fleet(bool ev_v2g = true) {
  FleetFile out;
  out.rep_days = {"summer"};
  synth::DayShape shape = synth::rep_day_shapes().back();
  Fleet f;
  {
    Generator g;
    g.id = "pv0";
    g.bus = 1;
    g.p_nom_kw = 20;
    g.s_rating_kva = 22;
    for (int h = 0; h < kHoursPerDay; ++h) g.cf.push_back(synth::pv_cf(shape, h));
    f.generators.push_back(std::move(g));
  }
  {
    Battery b;
    b.id = "bess0";
    b.bus = 2;
    b.e_cap_kwh = 30;
    b.p_ch_max_kw = 10;
    b.p_dis_max_kw = 10;
    b.eta_ch = 0.95;
    b.eta_dis = 0.95;
    b.soc_init = 0.5;
    b.s_rating_kva = 12;
    f.batteries.push_back(std::move(b));
  }
  {
    EvEvent e;
    e.vehicle = "ev0";
    e.bus = 3;
    e.t_arrive = 8;
    e.t_depart = 18;
    e.e_req_kwh = 10;
    e.e_cap_kwh = 70;
    e.p_max_kw = 7;
    e.eta_ch = 0.95;
    e.eta_dis = 0.95;
    e.v2g = ev_v2g;
    e.soc_arrive = 0.3;
    f.ev_events.push_back(std::move(e));
  }
  {
    HeatPump h;
    h.id = "hp0";
    h.bus = 4;
    h.p_max_kw = 5;
    h.cop = 3.0;
    h.r_th_k_per_kw = 2.0;
    h.c_th_kwh_per_k = 10.0;
    h.t_min_c = 20.0;
    h.t_max_c = 24.0;
    h.t_init_c = 21.0;
    for (int t = 0; t < kHoursPerDay; ++t) h.ambient_c.push_back(synth::ambient(shape, t));
    f.heat_pumps.push_back(std::move(h));
  }
  {
    FixedLoad l;
    l.id = "load0";
    l.bus = 3;
    for (int h = 0; h < kHoursPerDay; ++h) {
      double p = 8.0 * synth::load_shape(shape, h);
      l.p_kw.push_back(p);
      l.q_kvar.push_back(p * 0.3287);
    }
    f.loads.push_back(std::move(l));
  }
  f.validate();
  out.fleets["summer"] = std::move(f);
  return out;
}

// ---- synthetic activation data ----

/// Smooth planted pattern: MWh per quarter-hour for (season, hour, direction).
/// Upward needs peak in morning/evening ramps plus a night shoulder; downward
/// peaks around midday.
inline double activation_pattern(Season s, int hour, Direction d) {
  double seasonal = 1.0;
  switch (s) {
    case Season::winter: seasonal = 1.25; break;
    case Season::spring: seasonal = 1.0; break;
    case Season::autumn: seasonal = 1.05; break;
    case Season::summer: seasonal = 0.85; break;
  }
  double h = hour + 0.5;
  if (d == Direction::upward) {
    double morning = 9.0 * std::exp(-0.5 * std::pow((h - 7.5) / 1.8, 2));
    double evening = 11.0 * std::exp(-0.5 * std::pow((h - 20.0) / 2.2, 2));
    double night = 5.0 * std::exp(-0.5 * std::pow((h - 2.0) / 3.0, 2));
    return seasonal * (3.0 + morning + evening + night);
  }
  double midday = 13.0 * std::exp(-0.5 * std::pow((h - 13.0) / 3.0, 2));
  return seasonal * (2.5 + midday);
}

struct ActivationGenConfig {
  std::vector<int> years = {2024};
  std::uint64_t seed = 7;
  double noise = 0.05;          // relative lognormal-ish jitter
  double missing_rate = 0.002;  // cells emitted as unparseable
  double outlier_rate = 0.0005; // cells multiplied into obvious spikes
};

/// Full 15-minute activation series for both directions over the given years.
inline std::vector<ActivationRecord> make_activation_records(
    const ActivationGenConfig& cfg = {}) {
  std::vector<ActivationRecord> out;
  Rng rng(substream_seed(cfg.seed, 0xAC7ULL));
  for (Direction d : kDirections) {
    for (int year : cfg.years) {
      std::int64_t day0 = days_from_civil(year, 1, 1);
      std::int64_t day1 = days_from_civil(year + 1, 1, 1);
      for (std::int64_t day = day0; day < day1; ++day) {
        CivilDate cd = civil_from_days(day);
        Season season = season_of_month(cd.month);
        for (int q = 0; q < 96; ++q) {
          int hour = q / 4;
          double base = activation_pattern(season, hour, d) / 4.0;  // MWh per quarter
          double value = base * (1.0 + cfg.noise * (2.0 * rng.next_unit() - 1.0));
          double roll = rng.next_unit();
          ActivationRecord rec;
          rec.timestamp = Timestamp{day * 1440 + q * 15};
          rec.direction = d;
          if (roll < cfg.missing_rate) {
            rec.energy_mwh = std::nullopt;
          } else if (roll < cfg.missing_rate + cfg.outlier_rate) {
            rec.energy_mwh = value * 40.0 + 100.0;
          } else {
            rec.energy_mwh = value;
          }
          out.push_back(rec);
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ActivationRecord& a,
                                              const ActivationRecord& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return static_cast<int>(a.direction) < static_cast<int>(b.direction);
  });
  return out;
}

}  // namespace dercap
