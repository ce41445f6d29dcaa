#pragma once

// Reserve-maximization engine: assembles the per-window three-state problem,
// solves it per scenario, and reduces Monte Carlo results into the
// duration-parameterized supply profile family.
//
// Network limits are enforced exactly in two interchangeable ways: the
// explicit DistFlow block (all flow/voltage variables in the model), or the
// reduced form where flows and voltages are affine in the injections and
// violated limit rows are generated from the radial sensitivities after each
// solve. The reduced form is the default; both give the same optimum.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dercap/common.hpp"
#include "dercap/devices.hpp"
#include "dercap/lhs.hpp"
#include "dercap/milp.hpp"
#include "dercap/network.hpp"
#include "dercap/stats.hpp"

namespace dercap {

/// Reserve capacity product under design.
struct ProductSpec {
  Direction direction = Direction::upward;
  int duration_h = 1;          // t^p, integer divisor of 24
  double ramp_window_min = 5;  // r^p
  double reliability = 0.999;  // R^p
  double lead_time_h = 24;     // metadata only
  double alpha() const { return 1.0 - reliability; }

  void validate() const {
    if (duration_h <= 0 || kHoursPerDay % duration_h != 0)
      throw InputError("product duration must be an integer divisor of 24, got " +
                       std::to_string(duration_h));
    if (!(reliability > 0.0 && reliability < 1.0))
      throw InputError("product reliability must be in (0,1)");
    if (ramp_window_min <= 0) throw InputError("ramp window must be positive");
  }
};

/// Delivery window [start, start+duration) on the 24-hour grid.
struct Window {
  int start_hour = 0;
  int duration_h = 0;
  bool contains(int t) const { return t >= start_hour && t < start_hour + duration_h; }
};

inline std::vector<Window> enumerate_windows(int duration_h) {
  if (duration_h <= 0 || kHoursPerDay % duration_h != 0)
    throw InputError("window duration must be an integer divisor of 24, got " +
                     std::to_string(duration_h));
  std::vector<Window> out;
  for (int s = 0; s < kHoursPerDay; s += duration_h) out.push_back({s, duration_h});
  return out;
}

struct AssemblyOptions {
  bool parity = true;            // P_act = P_disp outside the delivery window
  bool explicit_network = false; // emit the full DistFlow block instead of the reduced form
  bool enforce_network = true;   // enforce voltage/flow limits (reduced form: via separation)
  bool symmetric_product = false;// one product backed by both activation states
};

enum class VppState : std::uint8_t { dispatch, activated_up, activated_down };

inline std::string_view to_string(VppState s) {
  switch (s) {
    case VppState::dispatch: return "disp";
    case VppState::activated_up: return "up";
    case VppState::activated_down: return "down";
  }
  return "?";
}

/// Variables of one full-day VPP state.
struct StateModel {
  VppState state = VppState::dispatch;
  std::vector<DeviceBlock> blocks;
  std::vector<std::int32_t> p_pcc;  // per hour, kW export-positive
  InjectionTable inj{0, 0};
  std::optional<DistflowVars> dist;  // explicit mode
};

struct ReserveModel {
  ModelSpec model;
  std::int32_t q_var = -1;
  StateModel dispatch;
  std::vector<StateModel> activated;  // one state, or two in symmetric mode
  Window window;
  ProductSpec product;
  AssemblyOptions options;
};

namespace detail {

inline StateModel build_state(ModelSpec& model, const NetworkIndex& idx, const Fleet& fleet,
                              VppState state, int horizon, double r_p_minutes,
                              const AssemblyOptions& opt) {
  StateModel sm;
  sm.state = state;
  const int nb = static_cast<int>(idx.net().buses.size());
  sm.inj = InjectionTable(nb, horizon);
  for (const auto& g : fleet.generators)
    sm.blocks.push_back(build_generator_block(model, sm.inj, g, horizon, r_p_minutes));
  for (const auto& h : fleet.heat_pumps)
    sm.blocks.push_back(build_heatpump_block(model, sm.inj, h, horizon, r_p_minutes));
  for (const auto& b : fleet.batteries)
    sm.blocks.push_back(build_battery_block(model, sm.inj, b, horizon, r_p_minutes));
  for (const auto& e : fleet.ev_events)
    sm.blocks.push_back(build_ev_block(model, sm.inj, e, horizon, r_p_minutes));
  for (const auto& l : fleet.loads) add_fixed_load(sm.inj, l);

  if (opt.explicit_network) {
    sm.dist = build_distflow_block(model, idx, sm.inj, horizon);
    sm.p_pcc = sm.dist->p_pcc;
  } else {
    // P_pcc = sum of all net injections (kW, export positive)
    for (int t = 0; t < horizon; ++t) {
      std::int32_t v = model.add_continuous(-kInf, kInf);
      sm.p_pcc.push_back(v);
      LinExpr e;
      e.add(v, 1.0);
      for (int b = 0; b < nb; ++b) e.add(sm.inj.p_at(b, t), -1.0);
      model.add_row(e, Sense::eq, 0.0);
    }
  }
  return sm;
}

}  // namespace detail

/// Assemble the reserve maximization problem for one window and scenario
/// realization: full-day dispatch state plus the activated state(s) of the
/// product direction, objective max q, the product-defining q <= delta-PCC
/// rows over the window, PCC parity outside the window, and per-device ramp
/// deliverability links within it.
inline ReserveModel assemble_reserve_model(const NetworkIndex& idx, const Fleet& fleet,
                                           const ProductSpec& product, const Window& window,
                                           const AssemblyOptions& options = {}) {
  product.validate();
  fleet.validate();
  if (window.duration_h != product.duration_h)
    throw InputError("window duration does not match product duration");
  const int horizon = kHoursPerDay;

  ReserveModel rm;
  rm.window = window;
  rm.product = product;
  rm.options = options;
  rm.dispatch =
      detail::build_state(rm.model, idx, fleet, VppState::dispatch, horizon,
                          product.ramp_window_min, options);
  std::vector<std::pair<VppState, int>> act_states;  // (state, direction sign)
  if (options.symmetric_product) {
    act_states = {{VppState::activated_up, +1}, {VppState::activated_down, -1}};
  } else if (product.direction == Direction::upward) {
    act_states = {{VppState::activated_up, +1}};
  } else {
    act_states = {{VppState::activated_down, -1}};
  }
  for (auto [st, sign] : act_states)
    rm.activated.push_back(detail::build_state(rm.model, idx, fleet, st, horizon,
                                               product.ramp_window_min, options));

  rm.q_var = rm.model.add_continuous(0.0, kInf, "q");
  rm.model.objective.add(rm.q_var, 1.0);

  for (std::size_t a = 0; a < rm.activated.size(); ++a) {
    const int sign = act_states[a].second;
    const StateModel& act = rm.activated[a];
    for (int t = 0; t < horizon; ++t) {
      if (window.contains(t)) {
        // q <= sign * (P_act - P_disp)
        LinExpr e;
        e.add(rm.q_var, 1.0);
        e.add(act.p_pcc[t], -static_cast<double>(sign));
        e.add(rm.dispatch.p_pcc[t], static_cast<double>(sign));
        rm.model.add_row(e, Sense::le, 0.0);
      } else if (options.parity) {
        LinExpr e;
        e.add(act.p_pcc[t], 1.0);
        e.add(rm.dispatch.p_pcc[t], -1.0);
        rm.model.add_row(e, Sense::eq, 0.0);
      }
    }
    // ramp deliverability: the activated setpoint must be reachable from the
    // dispatch setpoint within r^p for every window hour
    for (std::size_t d = 0; d < act.blocks.size(); ++d) {
      const DeviceBlock& ab = act.blocks[d];
      const DeviceBlock& db = rm.dispatch.blocks[d];
      if (ab.ramp_bound_kw == kInf) continue;
      for (int t = window.start_hour; t < window.start_hour + window.duration_h; ++t) {
        LinExpr diff = ab.net_injection(t);
        diff.add(db.net_injection(t), -1.0);
        if (diff.terms.empty()) continue;
        rm.model.add_row(diff, Sense::le, ab.ramp_bound_kw);
        rm.model.add_row(diff, Sense::ge, -ab.ramp_bound_kw);
      }
    }
  }
  return rm;
}

namespace detail {

/// Evaluate the reduced network state at a solution and append one row per
/// violated voltage bound or flow facet. Returns the number of rows added.
inline int separate_network_rows(ModelSpec& model, const NetworkIndex& idx,
                                 const StateModel& sm, const std::vector<double>& x,
                                 double tol) {
  const Network& net = idx.net();
  const int nb = static_cast<int>(net.buses.size());
  const int nl = static_cast<int>(net.lines.size());
  const double base = net.base_kva;
  const int horizon = sm.inj.horizon;
  int added = 0;
  std::vector<double> pinj(nb), qinj(nb), pf, qf, vsq;
  for (int t = 0; t < horizon; ++t) {
    for (int b = 0; b < nb; ++b) {
      pinj[b] = sm.inj.p_at(b, t).value(x) / base;
      qinj[b] = sm.inj.q_at(b, t).value(x) / base;
    }
    idx.accumulate_flows(pinj, pf);
    idx.accumulate_flows(qinj, qf);
    idx.accumulate_voltages(pf, qf, vsq);

    for (int b = 0; b < nb; ++b) {
      if (b == net.root) continue;
      const Bus& bus = net.buses[b];
      if (vsq[b] > bus.v_max_sq + tol || vsq[b] < bus.v_min_sq - tol) {
        // v_b = 1 + (2/base) * sum_k (R_bk p_k + X_bk q_k)
        LinExpr e;
        e.constant = 1.0;
        for (int k = 0; k < nb; ++k) {
          const LinExpr& pk = sm.inj.p_at(k, t);
          const LinExpr& qk = sm.inj.q_at(k, t);
          if (pk.terms.empty() && pk.constant == 0.0 && qk.terms.empty() && qk.constant == 0.0)
            continue;
          auto [r, xx] = idx.common_path_rx(b, k);
          if (r != 0.0) e.add(pk, 2.0 * r / base);
          if (xx != 0.0) e.add(qk, 2.0 * xx / base);
        }
        if (vsq[b] > bus.v_max_sq + tol) model.add_row(e, Sense::le, bus.v_max_sq);
        else model.add_row(e, Sense::ge, bus.v_min_sq);
        ++added;
      }
    }
    for (int l = 0; l < nl; ++l) {
      for (const auto& f : octagon_facets(net.lines[l].s_max)) {
        double lhs = f.cp * pf[l] + f.cq * qf[l];
        if (lhs <= f.rhs + tol) continue;
        // flow_l = -(1/base) * sum over subtree injections
        LinExpr e;
        for (int k : idx.subtree_buses(l)) {
          e.add(sm.inj.p_at(k, t), -f.cp / base);
          e.add(sm.inj.q_at(k, t), -f.cq / base);
        }
        model.add_row(e, Sense::le, f.rhs);
        ++added;
      }
    }
  }
  return added;
}

}  // namespace detail

struct WindowSolve {
  SolveStatus status = SolveStatus::infeasible;
  double q_kw = 0.0;
  std::int64_t iterations = 0;
  std::int64_t nodes = 0;
  int separation_rounds = 0;
  Solution solution;  // full variable vector of the final solve
};

/// Solve one assembled window problem, enforcing network limits via row
/// generation in the reduced form.
inline WindowSolve solve_reserve_window(ReserveModel& rm, const NetworkIndex& idx,
                                        const SolverConfig& cfg = {}) {
  WindowSolve out;
  const int max_rounds = 40;
  for (int round = 0; round < max_rounds; ++round) {
    Solution sol = solve_milp(rm.model, cfg);
    out.iterations += sol.iterations;
    out.nodes += sol.nodes;
    out.status = sol.status;
    if (sol.status != SolveStatus::optimal) return out;
    int added = 0;
    if (!rm.options.explicit_network && rm.options.enforce_network) {
      added += detail::separate_network_rows(rm.model, idx, rm.dispatch, sol.values,
                                             cfg.feas_tol);
      for (const auto& act : rm.activated)
        added += detail::separate_network_rows(rm.model, idx, act, sol.values, cfg.feas_tol);
    }
    if (added == 0) {
      out.q_kw = sol.values[rm.q_var];
      out.solution = std::move(sol);
      return out;
    }
    out.separation_rounds = round + 1;
  }
  out.status = SolveStatus::iteration_limit;  // separation failed to settle
  return out;
}

/// Extracted per-state PCC trajectory of a solved window problem.
struct StateSolution {
  VppState state;
  std::vector<double> pcc_kw;
};

inline std::vector<StateSolution> extract_state_solutions(const ReserveModel& rm,
                                                          const Solution& sol) {
  std::vector<StateSolution> out;
  auto grab = [&](const StateModel& sm) {
    StateSolution ss;
    ss.state = sm.state;
    for (auto v : sm.p_pcc) ss.pcc_kw.push_back(sol.values[v]);
    out.push_back(std::move(ss));
  };
  grab(rm.dispatch);
  for (const auto& a : rm.activated) grab(a);
  return out;
}

// ---- Monte Carlo supply characterization ----

struct UncertaintyConfig {
  double irradiance_sigma = 0.0815;   // relative
  double temperature_sigma_k = 1.50;  // K
  double load_sigma = 0.1075;         // relative
  double ev_disruption_max = 0.20;    // uniform upper bound

  void validate() const {
    if (irradiance_sigma < 0 || temperature_sigma_k < 0 || load_sigma < 0)
      throw InputError("uncertainty sigmas must be nonnegative");
    if (ev_disruption_max < 0 || ev_disruption_max > 1)
      throw InputError("ev disruption bound must be in [0,1]");
  }
};

/// LHS scenario set over the four uncertain dimensions, in sample order.
inline std::vector<ScenarioSample> draw_scenarios(const UncertaintyConfig& u, int n,
                                                  std::uint64_t seed) {
  u.validate();
  std::vector<Distribution> dims = {
      Distribution::normal(0.0, u.irradiance_sigma),
      Distribution::normal(0.0, u.temperature_sigma_k),
      Distribution::normal(0.0, u.load_sigma),
      Distribution::uniform(0.0, u.ev_disruption_max),
  };
  auto pts = lhs_sample(dims, n, seed);
  std::vector<ScenarioSample> out(n);
  for (int i = 0; i < n; ++i) {
    out[i].irr_error = pts[i][0];
    out[i].temp_error_k = pts[i][1];
    out[i].load_error = pts[i][2];
    out[i].ev_disruption = pts[i][3];
    out[i].removal_seed = substream_seed(seed, 0xE5000000ULL + static_cast<std::uint64_t>(i));
  }
  return out;
}

/// Duration- and season-parameterized available reserve (kW).
class SupplyProfileFamily {
 public:
  SupplyProfileFamily() = default;
  SupplyProfileFamily(std::vector<int> durations, std::vector<std::string> days)
      : durations_(std::move(durations)), days_(std::move(days)) {
    values_.assign(durations_.size() * days_.size() * kHoursPerDay * 2, 0.0);
  }

  const std::vector<int>& durations() const { return durations_; }
  const std::vector<std::string>& days() const { return days_; }

  double value(int duration, const std::string& day, int hour, Direction d) const {
    return values_[index(duration, day, hour, d)];
  }
  void set_value(int duration, const std::string& day, int hour, Direction d, double v) {
    values_[index(duration, day, hour, d)] = v;
  }
  bool has_duration(int duration) const {
    return std::find(durations_.begin(), durations_.end(), duration) != durations_.end();
  }
  /// Normalizer of Eq-6 type: max over all durations, days, and hours.
  double max_value(Direction d) const {
    double m = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (i % 2 == static_cast<std::size_t>(d)) m = std::max(m, values_[i]);
    return m;
  }

  int samples = 1;
  std::uint64_t seed = 0;
  std::string config_hash;

 private:
  std::size_t index(int duration, const std::string& day, int hour, Direction d) const {
    auto it = std::find(durations_.begin(), durations_.end(), duration);
    if (it == durations_.end())
      throw InputError("supply family does not contain duration " + std::to_string(duration));
    auto dit = std::find(days_.begin(), days_.end(), day);
    if (dit == days_.end()) throw InputError("supply family does not contain day '" + day + "'");
    if (hour < 0 || hour >= kHoursPerDay) throw InputError("hour out of range");
    std::size_t di = it - durations_.begin();
    std::size_t yi = dit - days_.begin();
    return ((di * days_.size() + yi) * kHoursPerDay + hour) * 2 + static_cast<std::size_t>(d);
  }

  std::vector<int> durations_;
  std::vector<std::string> days_;
  std::vector<double> values_;
};

struct SolveEvent {
  std::string day;
  int duration = 0;
  int window_start = 0;
  Direction direction = Direction::upward;
  int sample = 0;
  SolveStatus status = SolveStatus::optimal;
  double q_kw = 0.0;
  std::int64_t iterations = 0;
  std::int64_t nodes = 0;
  int separation_rounds = 0;
  double wall_ms = 0.0;
};

struct SupplyBuildConfig {
  std::vector<int> durations = {1, 2, 3, 4, 6, 8, 12, 24};  // Omega
  std::vector<Direction> directions = {Direction::upward, Direction::downward};
  int samples = 1000;
  std::uint64_t seed = 42;
  int jobs = 1;  // 0 = hardware concurrency
  ProductSpec product_base;  // direction/duration overridden per solve
  UncertaintyConfig uncertainty;
  AssemblyOptions assembly;
  SolverConfig solver;
  std::function<void(const SolveEvent&)> logger;  // called in deterministic order
};

/// Full Monte Carlo sweep: for every (representative day, duration, window,
/// direction) solve all scenarios and keep the alpha-quantile; the quantile
/// value is assigned to every hour of its window. Infeasible solves enter the
/// quantile as zero reserve and are reported through the logger.
inline SupplyProfileFamily build_supply_family(const Network& net, const FleetFile& fleet,
                                               const SupplyBuildConfig& cfg) {
  if (cfg.samples < 1) throw InputError("build_supply_family: samples must be >= 1");
  for (int d : cfg.durations)
    if (d <= 0 || kHoursPerDay % d != 0)
      throw InputError("duration " + std::to_string(d) + " does not divide 24");
  NetworkIndex idx(net);

  auto scenarios = draw_scenarios(cfg.uncertainty, cfg.samples, cfg.seed);

  // concrete fleets per (day, sample)
  std::vector<std::vector<Fleet>> concrete(fleet.rep_days.size());
  for (std::size_t yi = 0; yi < fleet.rep_days.size(); ++yi) {
    const Fleet& base = fleet.fleets.at(fleet.rep_days[yi]);
    concrete[yi].reserve(scenarios.size());
    for (const auto& s : scenarios) concrete[yi].push_back(apply_scenario(base, s));
  }

  struct Task {
    std::size_t day_idx;
    int duration;
    Window window;
    Direction dir;
    int sample;
  };
  std::vector<Task> tasks;
  for (std::size_t yi = 0; yi < fleet.rep_days.size(); ++yi)
    for (int dur : cfg.durations)
      for (const Window& w : enumerate_windows(dur))
        for (Direction dir : cfg.directions)
          for (int s = 0; s < cfg.samples; ++s) tasks.push_back({yi, dur, w, dir, s});

  struct TaskResult {
    double q = 0.0;
    SolveEvent event;
  };
  std::vector<TaskResult> results(tasks.size());

  auto run_task = [&](std::size_t ti) {
    const Task& task = tasks[ti];
    ProductSpec product = cfg.product_base;
    product.direction = task.dir;
    product.duration_h = task.duration;
    auto t0 = std::chrono::steady_clock::now();
    ReserveModel rm = assemble_reserve_model(idx, concrete[task.day_idx][task.sample], product,
                                             task.window, cfg.assembly);
    WindowSolve ws = solve_reserve_window(rm, idx, cfg.solver);
    auto t1 = std::chrono::steady_clock::now();
    TaskResult& r = results[ti];
    r.q = ws.status == SolveStatus::optimal ? std::max(0.0, ws.q_kw) : 0.0;
    r.event = {fleet.rep_days[task.day_idx], task.duration, task.window.start_hour,
               task.dir,  task.sample,       ws.status,     r.q,
               ws.iterations, ws.nodes, ws.separation_rounds,
               std::chrono::duration<double, std::milli>(t1 - t0).count()};
  };

  int jobs = cfg.jobs > 0 ? cfg.jobs
                          : std::max(1u, std::thread::hardware_concurrency());
  if (jobs <= 1) {
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) run_task(ti);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (std::size_t ti = next.fetch_add(1); ti < tasks.size(); ti = next.fetch_add(1))
          run_task(ti);
      });
    for (auto& th : pool) th.join();
  }
  if (cfg.logger)
    for (const auto& r : results) cfg.logger(r.event);

  // quantile reduction in task order
  SupplyProfileFamily family(cfg.durations, fleet.rep_days);
  family.samples = cfg.samples;
  family.seed = cfg.seed;
  const double alpha = cfg.product_base.alpha();
  std::size_t ti = 0;
  for (std::size_t yi = 0; yi < fleet.rep_days.size(); ++yi)
    for (int dur : cfg.durations)
      for (const Window& w : enumerate_windows(dur))
        for (Direction dir : cfg.directions) {
          std::vector<double> qs(cfg.samples);
          for (int s = 0; s < cfg.samples; ++s) qs[s] = results[ti++].q;
          double q = reliability_quantile(qs, alpha);
          for (int t = w.start_hour; t < w.start_hour + w.duration_h; ++t)
            family.set_value(dur, fleet.rep_days[yi], t, dir, q);
        }
  return family;
}

// ---- serialization ----

inline void write_family_csv(std::ostream& os, const SupplyProfileFamily& fam,
                             const std::string& config_hash = {}) {
  if (!config_hash.empty()) os << "# config_hash=" << config_hash << "\n";
  os << "duration,season,hour,direction,value_kw\n";
  for (int dur : fam.durations())
    for (const auto& day : fam.days())
      for (int h = 0; h < kHoursPerDay; ++h)
        for (Direction d : kDirections)
          os << dur << "," << day << "," << h + 1 << "," << to_string(d) << ","
             << format_double(fam.value(dur, day, h, d)) << "\n";
}

inline nlohmann::ordered_json family_to_json(const SupplyProfileFamily& fam,
                                             const SolverConfig& solver = {}) {
  nlohmann::ordered_json j;
  if (!fam.config_hash.empty()) j["config_hash"] = fam.config_hash;
  j["seed"] = fam.seed;
  j["samples"] = fam.samples;
  j["tolerances"] = {{"feas_tol", solver.feas_tol},
                     {"opt_tol", solver.opt_tol},
                     {"int_tol", solver.int_tol},
                     {"gap_tol", solver.gap_tol}};
  j["durations"] = fam.durations();
  j["days"] = fam.days();
  nlohmann::ordered_json vals;
  for (int dur : fam.durations()) {
    nlohmann::ordered_json per_day;
    for (const auto& day : fam.days()) {
      nlohmann::ordered_json per_dir;
      for (Direction d : kDirections) {
        std::vector<double> hours(kHoursPerDay);
        for (int h = 0; h < kHoursPerDay; ++h) hours[h] = fam.value(dur, day, h, d);
        per_dir[std::string(to_string(d))] = hours;
      }
      per_day[day] = per_dir;
    }
    vals[std::to_string(dur)] = per_day;
  }
  j["values_kw"] = vals;
  return j;
}

inline SupplyProfileFamily family_from_json(const nlohmann::json& j) {
  std::vector<int> durations;
  for (const auto& d : j.at("durations")) durations.push_back(d.get<int>());
  std::vector<std::string> days;
  for (const auto& d : j.at("days")) days.push_back(d.get<std::string>());
  SupplyProfileFamily fam(durations, days);
  fam.seed = j.value("seed", 0);
  fam.samples = j.value("samples", 1);
  fam.config_hash = j.value("config_hash", std::string{});
  const auto& vals = j.at("values_kw");
  for (int dur : durations) {
    const auto& per_day = vals.at(std::to_string(dur));
    for (const auto& day : days) {
      for (Direction d : kDirections) {
        const auto& arr = per_day.at(day).at(std::string(to_string(d)));
        if (arr.size() != kHoursPerDay)
          throw InputError("supply family JSON: expected 24 hourly values");
        for (int h = 0; h < kHoursPerDay; ++h)
          fam.set_value(dur, day, h, d, arr[h].get<double>());
      }
    }
  }
  return fam;
}

}  // namespace dercap
