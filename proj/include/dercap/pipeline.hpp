#pragma once

// Batch pipeline stages behind the CLI. Each stage reads its inputs from disk
// (including outputs of earlier stages), so chaining the commands and running
// them in one process produce identical bytes.

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "dercap/config.hpp"
#include "dercap/design.hpp"
#include "dercap/devices.hpp"
#include "dercap/network.hpp"
#include "dercap/profiles.hpp"
#include "dercap/reserve.hpp"

namespace dercap {

namespace detail {

inline void ensure_dir(const std::filesystem::path& p) {
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw RuntimeFailure("cannot create output directory: " + p.string());
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw RuntimeFailure("cannot open output file: " + p.string());
  f << text;
}

inline nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw InputError("cannot open file: " + p.string());
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(p.string() + ": " + e.what());
  }
}

}  // namespace detail

/// Representative profiles + cleaning report from the activation CSV.
inline RepresentativeProfile cmd_profiles(const RunConfig& cfg) {
  if (cfg.activation_csv.empty()) throw InputError("config: paths.activation_csv not set");
  auto in = open_input_file(cfg.activation_csv);
  auto records = ingest_activation_csv(in, cfg.schema);
  CleaningPolicy policy;
  policy.z_threshold = cfg.z_threshold;
  policy.max_gap = cfg.max_gap;
  auto [cleaned, report] = clean_series(records, policy);
  auto hourly = aggregate_hourly(cleaned);
  std::set<int> years;
  for (const auto& e : hourly) years.insert(e.hour_start.date().year);
  auto profile = build_representative_profiles(
      hourly, [](const CivilDate& d) { return season_of_month(d.month); }, years);

  const std::string hash = cfg.hash();
  std::filesystem::path dir = std::filesystem::path(cfg.out_dir) / "profiles";
  detail::ensure_dir(dir);
  {
    std::ostringstream os;
    write_profile_csv(os, profile, hash);
    detail::write_text(dir / "representative_profile.csv", os.str());
  }
  detail::write_text(dir / "representative_profile.json",
                     profile_to_json(profile, hash).dump(2) + "\n");
  detail::write_text(dir / "cleaning_report.json",
                     cleaning_report_to_json(report).dump(2) + "\n");
  return profile;
}

/// Supply-family sweep over the configured durations and directions.
inline SupplyProfileFamily cmd_supply(const RunConfig& cfg) {
  if (cfg.network_file.empty()) throw InputError("config: paths.network not set");
  if (cfg.fleet_file.empty()) throw InputError("config: paths.fleet not set");
  Network net = network_from_json(detail::read_json(cfg.network_file));
  FleetFile fleet = fleet_from_json(detail::read_json(cfg.fleet_file), net);

  std::filesystem::path out_dir(cfg.out_dir);
  detail::ensure_dir(out_dir / "supply");
  detail::ensure_dir(out_dir / "logs");
  std::ofstream log(out_dir / "logs" / "supply_solves.jsonl", std::ios::binary);

  SupplyBuildConfig sc;
  sc.durations = cfg.durations;
  sc.directions = cfg.directions();
  sc.samples = cfg.samples;
  sc.seed = cfg.seed;
  sc.jobs = cfg.jobs;
  sc.product_base.ramp_window_min = cfg.ramp_minutes;
  sc.product_base.reliability = cfg.reliability;
  sc.product_base.lead_time_h = cfg.lead_hours;
  sc.uncertainty = cfg.uncertainty;
  sc.assembly.parity = cfg.parity;
  sc.assembly.explicit_network = cfg.explicit_network;
  sc.solver = cfg.solver;
  sc.logger = [&log](const SolveEvent& e) {
    nlohmann::ordered_json j;
    j["day"] = e.day;
    j["duration"] = e.duration;
    j["window_start"] = e.window_start;
    j["direction"] = std::string(to_string(e.direction));
    j["sample"] = e.sample;
    j["status"] = std::string(to_string(e.status));
    j["q_kw"] = e.q_kw;
    j["iterations"] = e.iterations;
    j["nodes"] = e.nodes;
    j["separation_rounds"] = e.separation_rounds;
    j["wall_ms"] = e.wall_ms;
    log << j.dump() << "\n";
  };

  SupplyProfileFamily fam = build_supply_family(net, fleet, sc);
  fam.config_hash = cfg.hash();
  {
    std::ostringstream os;
    write_family_csv(os, fam, fam.config_hash);
    detail::write_text(out_dir / "supply" / "supply_family.csv", os.str());
  }
  detail::write_text(out_dir / "supply" / "supply_family.json",
                     family_to_json(fam, cfg.solver).dump(2) + "\n");
  return fam;
}

/// Objective table, Pareto flags, recommendation, and plot data from the
/// profile and supply files written by the earlier stages.
inline DesignResult cmd_design(const RunConfig& cfg) {
  std::filesystem::path out_dir(cfg.out_dir);
  auto profile =
      profile_from_json(detail::read_json(out_dir / "profiles" / "representative_profile.json"));
  auto fam = family_from_json(detail::read_json(out_dir / "supply" / "supply_family.json"));

  SelectionPolicy policy{cfg.weight_availability, cfg.weight_alignment};
  DesignResult res = evaluate_design(fam, profile, policy, false, cfg.directions());

  const std::string hash = cfg.hash();
  detail::ensure_dir(out_dir / "design");
  {
    std::ostringstream os;
    write_design_csv(os, res, hash);
    detail::write_text(out_dir / "design" / "design_results.csv", os.str());
  }
  detail::write_text(out_dir / "design" / "design_results.json",
                     design_to_json(res, hash).dump(2) + "\n");
  {
    std::ostringstream os;
    write_scatter_csv(os, res, hash);
    detail::write_text(out_dir / "design" / "objective_scatter.csv", os.str());
  }
  {
    std::ostringstream os;
    write_fit_overlay_csv(os, fam, profile, res, hash);
    detail::write_text(out_dir / "design" / "fit_overlay.csv", os.str());
  }
  {
    // per-duration supply curves, the plot-data counterpart of the family
    std::ostringstream os;
    write_family_csv(os, fam, hash);
    detail::write_text(out_dir / "design" / "supply_curves.csv", os.str());
  }
  return res;
}

inline DesignResult cmd_run_all(const RunConfig& cfg) {
  cmd_profiles(cfg);
  cmd_supply(cfg);
  return cmd_design(cfg);
}

}  // namespace dercap
