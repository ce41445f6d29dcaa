#pragma once

// Operational models of the four DER classes plus fixed loads, and the
// scenario realization machinery. Block builders emit constraints into a
// ModelSpec and register each device's bus injection in an InjectionTable.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dercap/common.hpp"
#include "dercap/csv.hpp"
#include "dercap/model.hpp"
#include "dercap/network.hpp"
#include "dercap/rng.hpp"

namespace dercap {

using DayProfile = std::vector<double>;  // 24 hourly values

struct Generator {
  std::string id;
  int bus = 0;
  double p_nom_kw = 0;
  double s_rating_kva = 0;
  DayProfile cf;  // capacity factor in [0,1]
  std::optional<double> ramp_kw_per_min;
};

struct HeatPump {
  std::string id;
  int bus = 0;
  double p_max_kw = 0;
  double cop = 3.0;
  double r_th_k_per_kw = 2.0;
  double c_th_kwh_per_k = 10.0;
  double t_min_c = 20.0;
  double t_max_c = 24.0;
  double t_init_c = 21.0;
  DayProfile ambient_c;
  std::optional<double> ramp_kw_per_min;
};

struct Battery {
  std::string id;
  int bus = 0;
  double e_cap_kwh = 0;
  double p_ch_max_kw = 0;
  double p_dis_max_kw = 0;
  double eta_ch = 0.95;
  double eta_dis = 0.95;
  double soc_min = 0.0;
  double soc_max = 1.0;
  double soc_init = 0.5;
  double s_rating_kva = 0;
  std::optional<double> ramp_kw_per_min;
};

struct EvEvent {
  std::string vehicle;
  int bus = 0;
  int t_arrive = 0;  // hour index, inclusive
  int t_depart = 0;  // hour index, exclusive
  double e_req_kwh = 0;
  double e_cap_kwh = 70.0;
  double p_max_kw = 7.0;
  double eta_ch = 1.0;
  double eta_dis = 1.0;
  bool v2g = false;
  double r_min_kw = 0.0;  // minimum average charge rate
  double soc_arrive = 0.2;
};

struct FixedLoad {
  std::string id;
  int bus = 0;
  DayProfile p_kw;
  DayProfile q_kvar;
};

/// DER fleet for one representative day, profiles already flattened.
struct Fleet {
  std::vector<Generator> generators;
  std::vector<HeatPump> heat_pumps;
  std::vector<Battery> batteries;
  std::vector<EvEvent> ev_events;
  std::vector<FixedLoad> loads;

  void validate(int horizon = kHoursPerDay) const {
    auto want24 = [&](const DayProfile& p, const std::string& what) {
      if (static_cast<int>(p.size()) != horizon)
        throw InputError(what + ": profile must have " + std::to_string(horizon) + " values");
    };
    for (const auto& g : generators) {
      want24(g.cf, "generator " + g.id);
      for (double c : g.cf)
        if (c < 0 || c > 1) throw InputError("generator " + g.id + ": capacity factor outside [0,1]");
      if (g.s_rating_kva < g.p_nom_kw)
        throw InputError("generator " + g.id + ": s_rating below p_nom");
      if (g.p_nom_kw < 0) throw InputError("generator " + g.id + ": negative p_nom");
    }
    for (const auto& h : heat_pumps) {
      want24(h.ambient_c, "heat pump " + h.id);
      if (!(h.t_min_c < h.t_max_c)) throw InputError("heat pump " + h.id + ": t_min >= t_max");
      if (!(h.c_th_kwh_per_k > 0) || !(h.r_th_k_per_kw > 0) || !(h.cop > 0))
        throw InputError("heat pump " + h.id + ": non-positive thermal parameters");
      if (h.t_init_c < h.t_min_c || h.t_init_c > h.t_max_c)
        throw InputError("heat pump " + h.id + ": t_init outside comfort band");
    }
    for (const auto& b : batteries) {
      if (!(b.eta_ch > 0 && b.eta_ch <= 1) || !(b.eta_dis > 0 && b.eta_dis <= 1))
        throw InputError("battery " + b.id + ": efficiencies must be in (0,1]");
      if (!(b.soc_min <= b.soc_init && b.soc_init <= b.soc_max))
        throw InputError("battery " + b.id + ": soc_init outside [soc_min, soc_max]");
      if (b.e_cap_kwh <= 0) throw InputError("battery " + b.id + ": non-positive capacity");
    }
    for (const auto& e : ev_events) {
      if (!(e.t_arrive < e.t_depart))
        throw InputError("ev event " + e.vehicle + ": arrive must precede depart");
      if (e.t_arrive < 0 || e.t_depart > horizon)
        throw InputError("ev event " + e.vehicle + ": window outside horizon");
      if (e.e_req_kwh > e.e_cap_kwh)
        throw InputError("ev event " + e.vehicle + ": required energy exceeds capacity");
      double window_h = e.t_depart - e.t_arrive;
      if (e.e_req_kwh > e.p_max_kw * e.eta_ch * window_h + 1e-9)
        throw InputError("ev event " + e.vehicle + ": required energy infeasible in window");
      if (e.soc_arrive + e.e_req_kwh / e.e_cap_kwh > 1.0 + 1e-9)
        throw InputError("ev event " + e.vehicle + ": departure SOC above 1");
    }
    for (const auto& l : loads) {
      want24(l.p_kw, "load " + l.id);
      want24(l.q_kvar, "load " + l.id);
      for (double p : l.p_kw)
        if (p < 0) throw InputError("load " + l.id + ": negative demand");
    }
  }
};

/// One realization of the uncertain parameters.
struct ScenarioSample {
  double irr_error = 0.0;      // relative multiplier on capacity factors
  double temp_error_k = 0.0;   // additive on ambient temperature
  double load_error = 0.0;     // relative multiplier on fixed loads
  double ev_disruption = 0.0;  // fraction of events removed, in [0,1]
  std::uint64_t removal_seed = 0;
};

/// Deterministic application of a scenario draw to the fleet:
/// cf' = clip(cf*(1+irr), 0, 1), ambient' = ambient + dT, load' = load*(1+e)
/// clipped nonnegative, and round(disruption * |events|) events removed by the
/// seeded draw.
inline Fleet apply_scenario(const Fleet& fleet, const ScenarioSample& sample) {
  Fleet out = fleet;
  for (auto& g : out.generators)
    for (auto& c : g.cf) c = clip(c * (1.0 + sample.irr_error), 0.0, 1.0);
  for (auto& h : out.heat_pumps)
    for (auto& a : h.ambient_c) a += sample.temp_error_k;
  const double load_factor = std::max(0.0, 1.0 + sample.load_error);
  for (auto& l : out.loads) {
    for (auto& p : l.p_kw) p *= load_factor;
    for (auto& q : l.q_kvar) q *= load_factor;
  }
  const long n_events = static_cast<long>(fleet.ev_events.size());
  long k = round_half_up(sample.ev_disruption * static_cast<double>(n_events));
  if (k > n_events) k = n_events;
  if (k > 0) {
    std::vector<int> order(n_events);
    for (long i = 0; i < n_events; ++i) order[i] = static_cast<int>(i);
    Rng rng(sample.removal_seed);
    shuffle(order, rng);
    std::vector<bool> removed(n_events, false);
    for (long i = 0; i < k; ++i) removed[order[i]] = true;
    out.ev_events.clear();
    for (long i = 0; i < n_events; ++i)
      if (!removed[i]) out.ev_events.push_back(fleet.ev_events[i]);
  }
  return out;
}

/// Variables emitted for one device in one state; used for ramp linking,
/// solution extraction, and the exclusivity checks.
struct DeviceBlock {
  enum class Kind : std::uint8_t { generator, heat_pump, battery, ev } kind;
  int bus = 0;
  int horizon = 0;
  int arrive = 0;  // active hour window [arrive, depart); full horizon unless EV
  int depart = 0;
  std::vector<std::int32_t> p;          // generator output / heat pump draw
  std::vector<std::int32_t> q;          // reactive (generators, batteries)
  std::vector<std::int32_t> p_ch, p_dis;
  std::vector<std::int32_t> soc;        // horizon+1 nodes (battery) or window nodes (ev)
  std::vector<std::int32_t> onoff;      // charge/discharge exclusivity binaries
  std::vector<std::int32_t> temp;       // horizon+1 nodes (heat pump)
  double ramp_bound_kw = kInf;          // deliverable change within the ramp window

  /// Net injection (kW, generation positive) at hour t.
  LinExpr net_injection(int t) const {
    LinExpr e;
    switch (kind) {
      case Kind::generator: e.add(p[t], 1.0); break;
      case Kind::heat_pump: e.add(p[t], -1.0); break;
      case Kind::battery:
        e.add(p_dis[t], 1.0);
        e.add(p_ch[t], -1.0);
        break;
      case Kind::ev:
        if (t >= arrive && t < depart) {
          int k = t - arrive;
          if (!p_dis.empty()) e.add(p_dis[k], 1.0);
          e.add(p_ch[k], -1.0);
        }
        break;
    }
    return e;
  }
};

/// Deliverable setpoint change within the product ramp window. The default
/// ramp rate is the device's directional rating per 5 minutes, so one-sided
/// devices can always traverse their whole range (the bound degenerates to
/// +inf), while storage crossing from charge to discharge is capped at its
/// rating.
inline double ramp_bound(const std::optional<double>& ramp_kw_per_min, double r_p_minutes,
                         double rating_kw, double full_width_kw) {
  double per_min = ramp_kw_per_min.value_or(rating_kw / 5.0);
  double bound = per_min * r_p_minutes;
  return bound >= full_width_kw ? kInf : bound;
}

inline DeviceBlock build_generator_block(ModelSpec& model, InjectionTable& inj,
                                         const Generator& gen, int horizon,
                                         double r_p_minutes = 5.0) {
  if (static_cast<int>(gen.cf.size()) != horizon)
    throw InputError("generator " + gen.id + ": capacity-factor profile length mismatch");
  DeviceBlock blk;
  blk.kind = DeviceBlock::Kind::generator;
  blk.bus = gen.bus;
  blk.horizon = horizon;
  blk.arrive = 0;
  blk.depart = horizon;
  blk.ramp_bound_kw = ramp_bound(gen.ramp_kw_per_min, r_p_minutes, gen.p_nom_kw, gen.p_nom_kw);
  auto facets = octagon_facets(gen.s_rating_kva);
  for (int t = 0; t < horizon; ++t) {
    double pmax = std::min(gen.cf[t] * gen.p_nom_kw, gen.s_rating_kva);
    std::int32_t pv = model.add_continuous(0.0, pmax);
    std::int32_t qv = model.add_continuous(-gen.s_rating_kva, gen.s_rating_kva);
    blk.p.push_back(pv);
    blk.q.push_back(qv);
    for (const auto& f : facets) {
      LinExpr e;
      e.add(pv, f.cp);
      e.add(qv, f.cq);
      model.add_row(e, Sense::le, f.rhs, /*lazy=*/true);
    }
    inj.p_at(gen.bus, t).add(pv, 1.0);
    inj.q_at(gen.bus, t).add(qv, 1.0);
  }
  return blk;
}

inline DeviceBlock build_heatpump_block(ModelSpec& model, InjectionTable& inj, const HeatPump& hp,
                                        int horizon, double r_p_minutes = 5.0) {
  if (static_cast<int>(hp.ambient_c.size()) != horizon)
    throw InputError("heat pump " + hp.id + ": ambient profile length mismatch");
  DeviceBlock blk;
  blk.kind = DeviceBlock::Kind::heat_pump;
  blk.bus = hp.bus;
  blk.horizon = horizon;
  blk.arrive = 0;
  blk.depart = horizon;
  blk.ramp_bound_kw = ramp_bound(hp.ramp_kw_per_min, r_p_minutes, hp.p_max_kw, hp.p_max_kw);
  const double dt_h = 1.0;
  const double k_loss = dt_h / (hp.c_th_kwh_per_k * hp.r_th_k_per_kw);
  const double k_heat = dt_h * hp.cop / hp.c_th_kwh_per_k;
  for (int t = 0; t <= horizon; ++t) {
    bool pinned = t == 0 || t == horizon;  // T_end = T_start = t_init
    blk.temp.push_back(model.add_continuous(pinned ? hp.t_init_c : hp.t_min_c,
                                            pinned ? hp.t_init_c : hp.t_max_c));
  }
  for (int t = 0; t < horizon; ++t) {
    blk.p.push_back(model.add_continuous(0.0, hp.p_max_kw));
    // T[t+1] = T[t] + k_loss*(ambient - T[t]) + k_heat*p[t]
    LinExpr e;
    e.add(blk.temp[t + 1], 1.0);
    e.add(blk.temp[t], -(1.0 - k_loss));
    e.add(blk.p[t], -k_heat);
    model.add_row(e, Sense::eq, k_loss * hp.ambient_c[t]);
    inj.p_at(hp.bus, t).add(blk.p[t], -1.0);
  }
  return blk;
}

inline DeviceBlock build_battery_block(ModelSpec& model, InjectionTable& inj, const Battery& b,
                                       int horizon, double r_p_minutes = 5.0) {
  DeviceBlock blk;
  blk.kind = DeviceBlock::Kind::battery;
  blk.bus = b.bus;
  blk.horizon = horizon;
  blk.arrive = 0;
  blk.depart = horizon;
  blk.ramp_bound_kw = ramp_bound(b.ramp_kw_per_min, r_p_minutes,
                                 std::max(b.p_ch_max_kw, b.p_dis_max_kw),
                                 b.p_ch_max_kw + b.p_dis_max_kw);
  const bool need_binary = b.p_ch_max_kw > 0 && b.p_dis_max_kw > 0;
  auto facets = octagon_facets(b.s_rating_kva);
  for (int t = 0; t <= horizon; ++t) {
    bool pinned = t == 0 || t == horizon;  // soc_end = soc_start = soc_init
    blk.soc.push_back(model.add_continuous(pinned ? b.soc_init : b.soc_min,
                                           pinned ? b.soc_init : b.soc_max));
  }
  for (int t = 0; t < horizon; ++t) {
    std::int32_t ch = model.add_continuous(0.0, b.p_ch_max_kw);
    std::int32_t dis = model.add_continuous(0.0, b.p_dis_max_kw);
    blk.p_ch.push_back(ch);
    blk.p_dis.push_back(dis);
    // soc[t+1] = soc[t] + (eta_ch*ch - dis/eta_dis) / e_cap
    LinExpr e;
    e.add(blk.soc[t + 1], 1.0);
    e.add(blk.soc[t], -1.0);
    e.add(ch, -b.eta_ch / b.e_cap_kwh);
    e.add(dis, 1.0 / (b.eta_dis * b.e_cap_kwh));
    model.add_row(e, Sense::eq, 0.0);
    if (need_binary) {
      std::int32_t on = model.add_binary();
      blk.onoff.push_back(on);
      LinExpr c1;
      c1.add(ch, 1.0);
      c1.add(on, -b.p_ch_max_kw);
      model.add_row(c1, Sense::le, 0.0);
      LinExpr c2;
      c2.add(dis, 1.0);
      c2.add(on, b.p_dis_max_kw);
      model.add_row(c2, Sense::le, b.p_dis_max_kw);
    }
    if (b.s_rating_kva > 0) {
      std::int32_t qv = model.add_continuous(-b.s_rating_kva, b.s_rating_kva);
      blk.q.push_back(qv);
      for (const auto& f : facets) {
        LinExpr e2;
        e2.add(dis, f.cp);
        e2.add(ch, -f.cp);
        e2.add(qv, f.cq);
        model.add_row(e2, Sense::le, f.rhs, /*lazy=*/true);
      }
      inj.q_at(b.bus, t).add(qv, 1.0);
    }
    inj.p_at(b.bus, t).add(dis, 1.0);
    inj.p_at(b.bus, t).add(ch, -1.0);
  }
  return blk;
}

inline DeviceBlock build_ev_block(ModelSpec& model, InjectionTable& inj, const EvEvent& ev,
                                  int horizon, double r_p_minutes = 5.0) {
  if (ev.t_arrive < 0 || ev.t_depart > horizon || ev.t_arrive >= ev.t_depart)
    throw InputError("ev event " + ev.vehicle + ": invalid window");
  DeviceBlock blk;
  blk.kind = DeviceBlock::Kind::ev;
  blk.bus = ev.bus;
  blk.horizon = horizon;
  blk.arrive = ev.t_arrive;
  blk.depart = ev.t_depart;
  blk.ramp_bound_kw = ramp_bound(std::nullopt, r_p_minutes, ev.p_max_kw,
                                 ev.v2g ? 2.0 * ev.p_max_kw : ev.p_max_kw);
  const int window = ev.t_depart - ev.t_arrive;
  const double soc_target = ev.soc_arrive + ev.e_req_kwh / ev.e_cap_kwh;
  for (int k = 0; k <= window; ++k) {
    double lb = 0.0, ub = 1.0;
    if (k == 0) lb = ub = ev.soc_arrive;
    if (k == window) lb = std::min(soc_target, 1.0);  // departure energy requirement
    blk.soc.push_back(model.add_continuous(lb, ub));
  }
  for (int k = 0; k < window; ++k) {
    std::int32_t ch = model.add_continuous(0.0, ev.p_max_kw);
    blk.p_ch.push_back(ch);
    std::int32_t dis = -1;
    if (ev.v2g) {
      dis = model.add_continuous(0.0, ev.p_max_kw);
      blk.p_dis.push_back(dis);
      std::int32_t on = model.add_binary();
      blk.onoff.push_back(on);
      LinExpr c1;
      c1.add(ch, 1.0);
      c1.add(on, -ev.p_max_kw);
      model.add_row(c1, Sense::le, 0.0);
      LinExpr c2;
      c2.add(dis, 1.0);
      c2.add(on, ev.p_max_kw);
      model.add_row(c2, Sense::le, ev.p_max_kw);
    }
    LinExpr e;
    e.add(blk.soc[k + 1], 1.0);
    e.add(blk.soc[k], -1.0);
    e.add(ch, -ev.eta_ch / ev.e_cap_kwh);
    if (dis >= 0) e.add(dis, 1.0 / (ev.eta_dis * ev.e_cap_kwh));
    model.add_row(e, Sense::eq, 0.0);
    int t = ev.t_arrive + k;
    inj.p_at(ev.bus, t).add(ch, -1.0);
    if (dis >= 0) inj.p_at(ev.bus, t).add(dis, 1.0);
  }
  if (ev.r_min_kw > 0) {
    // cumulative net charged energy after n hours >= r_min * n
    for (int n = 1; n <= window; ++n) {
      LinExpr e;
      for (int k = 0; k < n; ++k) {
        e.add(blk.p_ch[k], 1.0);
        if (!blk.p_dis.empty()) e.add(blk.p_dis[k], -1.0);
      }
      model.add_row(e, Sense::ge, ev.r_min_kw * n, /*lazy=*/true);
    }
  }
  return blk;
}

inline void add_fixed_load(InjectionTable& inj, const FixedLoad& load) {
  for (int t = 0; t < inj.horizon; ++t) {
    inj.p_at(load.bus, t).constant -= load.p_kw[t];
    inj.q_at(load.bus, t).constant -= load.q_kvar[t];
  }
}

// ---- serialization ----

namespace detail {

inline DayProfile profile_from_json(const nlohmann::json& j, const std::string& day,
                                    const std::string& what) {
  if (!j.contains(day))
    throw InputError(what + ": missing profile for representative day '" + day + "'");
  DayProfile p;
  for (const auto& v : j.at(day)) p.push_back(v.get<double>());
  return p;
}

}  // namespace detail

/// Fleet file: device arrays with per-representative-day profile maps.
struct FleetFile {
  std::vector<std::string> rep_days;
  std::map<std::string, Fleet> fleets;  // keyed by representative day
};

inline FleetFile fleet_from_json(const nlohmann::json& j, const Network& net) {
  FleetFile out;
  try {
    for (const auto& d : j.at("rep_days")) out.rep_days.push_back(d.get<std::string>());
    if (out.rep_days.empty()) throw InputError("fleet JSON: rep_days is empty");
    for (const auto& day : out.rep_days) {
      Fleet f;
      for (const auto& jg : j.value("generators", nlohmann::json::array())) {
        Generator g;
        g.id = jg.at("id").get<std::string>();
        g.bus = net.bus_index(jg.at("bus").get<std::string>());
        g.p_nom_kw = jg.at("p_nom_kw").get<double>();
        g.s_rating_kva = jg.at("s_rating_kva").get<double>();
        g.cf = detail::profile_from_json(jg.at("cf"), day, "generator " + g.id);
        if (jg.contains("ramp_kw_per_min") && !jg.at("ramp_kw_per_min").is_null())
          g.ramp_kw_per_min = jg.at("ramp_kw_per_min").get<double>();
        f.generators.push_back(std::move(g));
      }
      for (const auto& jh : j.value("heat_pumps", nlohmann::json::array())) {
        HeatPump h;
        h.id = jh.at("id").get<std::string>();
        h.bus = net.bus_index(jh.at("bus").get<std::string>());
        h.p_max_kw = jh.at("p_max_kw").get<double>();
        h.cop = jh.at("cop").get<double>();
        h.r_th_k_per_kw = jh.at("r_th_k_per_kw").get<double>();
        h.c_th_kwh_per_k = jh.at("c_th_kwh_per_k").get<double>();
        h.t_min_c = jh.at("t_min_c").get<double>();
        h.t_max_c = jh.at("t_max_c").get<double>();
        h.t_init_c = jh.at("t_init_c").get<double>();
        h.ambient_c = detail::profile_from_json(jh.at("ambient_c"), day, "heat pump " + h.id);
        if (jh.contains("ramp_kw_per_min") && !jh.at("ramp_kw_per_min").is_null())
          h.ramp_kw_per_min = jh.at("ramp_kw_per_min").get<double>();
        f.heat_pumps.push_back(std::move(h));
      }
      for (const auto& jb : j.value("batteries", nlohmann::json::array())) {
        Battery b;
        b.id = jb.at("id").get<std::string>();
        b.bus = net.bus_index(jb.at("bus").get<std::string>());
        b.e_cap_kwh = jb.at("e_cap_kwh").get<double>();
        b.p_ch_max_kw = jb.at("p_ch_max_kw").get<double>();
        b.p_dis_max_kw = jb.at("p_dis_max_kw").get<double>();
        b.eta_ch = jb.value("eta_ch", 0.95);
        b.eta_dis = jb.value("eta_dis", 0.95);
        b.soc_min = jb.value("soc_min", 0.0);
        b.soc_max = jb.value("soc_max", 1.0);
        b.soc_init = jb.value("soc_init", 0.5);
        b.s_rating_kva = jb.at("s_rating_kva").get<double>();
        if (jb.contains("ramp_kw_per_min") && !jb.at("ramp_kw_per_min").is_null())
          b.ramp_kw_per_min = jb.at("ramp_kw_per_min").get<double>();
        f.batteries.push_back(std::move(b));
      }
      for (const auto& je : j.value("ev_events", nlohmann::json::array())) {
        EvEvent e;
        e.vehicle = je.at("vehicle").get<std::string>();
        e.bus = net.bus_index(je.at("bus").get<std::string>());
        e.t_arrive = je.at("arrive").get<int>();
        e.t_depart = je.at("depart").get<int>();
        e.e_req_kwh = je.at("e_req_kwh").get<double>();
        e.e_cap_kwh = je.value("e_cap_kwh", 70.0);
        e.p_max_kw = je.value("p_max_kw", 7.0);
        e.eta_ch = je.value("eta_ch", 1.0);
        e.eta_dis = je.value("eta_dis", 1.0);
        e.v2g = je.value("v2g", false);
        e.r_min_kw = je.value("r_min_kw", 0.0);
        e.soc_arrive = je.value("soc_arrive", 0.2);
        f.ev_events.push_back(std::move(e));
      }
      for (const auto& jl : j.value("loads", nlohmann::json::array())) {
        FixedLoad l;
        l.id = jl.at("id").get<std::string>();
        l.bus = net.bus_index(jl.at("bus").get<std::string>());
        l.p_kw = detail::profile_from_json(jl.at("p_kw"), day, "load " + l.id);
        l.q_kvar = detail::profile_from_json(jl.at("q_kvar"), day, "load " + l.id);
        f.loads.push_back(std::move(l));
      }
      f.validate();
      out.fleets[day] = std::move(f);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("fleet JSON: ") + e.what());
  }
  return out;
}

/// EV events from CSV: vehicle,bus,arrive,depart,e_req,soc_arrive.
inline std::vector<EvEvent> ev_events_from_csv(std::istream& in, const Network& net) {
  CsvReader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields)) throw InputError("ev CSV: empty stream");
  const std::vector<std::string> expect = {"vehicle", "bus", "arrive",
                                           "depart",  "e_req", "soc_arrive"};
  for (std::size_t i = 0; i < expect.size(); ++i)
    if (i >= fields.size() || fields[i] != expect[i])
      throw InputError("ev CSV: missing mapped column '" + expect[i] + "'");
  std::vector<EvEvent> events;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() < expect.size())
      throw InputError("ev CSV line " + std::to_string(reader.line_number()) + ": short row");
    EvEvent e;
    e.vehicle = fields[0];
    e.bus = net.bus_index(fields[1]);
    e.t_arrive = static_cast<int>(parse_double(fields[2]).value_or(-1));
    e.t_depart = static_cast<int>(parse_double(fields[3]).value_or(-1));
    auto ereq = parse_double(fields[4]);
    auto soc_arr = parse_double(fields[5]);
    if (!ereq || !soc_arr)
      throw InputError("ev CSV line " + std::to_string(reader.line_number()) +
                       ": unparseable numeric field");
    e.e_req_kwh = *ereq;
    e.soc_arrive = *soc_arr;
    events.push_back(std::move(e));
  }
  return events;
}

}  // namespace dercap
