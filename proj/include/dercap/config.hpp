#pragma once

// Run configuration: a single TOML file (flat sections, scalar/array values)
// with CLI-flag overrides. The effective config is canonicalized and hashed so
// every output can record what produced it.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dercap/common.hpp"
#include "dercap/model.hpp"
#include "dercap/reserve.hpp"
#include "dercap/timeseries.hpp"

namespace dercap {

/// Minimal TOML reader: [section] headers, key = value with strings, numbers,
/// booleans, and flat arrays; # comments. Enough for the shipped configs.
class TomlTable {
 public:
  static TomlTable parse(std::istream& in) {
    TomlTable t;
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string s = strip_comment(line);
      s = trim(s);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') throw InputError(where(line_no) + "unterminated section header");
        section = trim(s.substr(1, s.size() - 2));
        if (section.empty()) throw InputError(where(line_no) + "empty section name");
        continue;
      }
      auto eq = s.find('=');
      if (eq == std::string::npos) throw InputError(where(line_no) + "expected key = value");
      std::string key = trim(s.substr(0, eq));
      std::string val = trim(s.substr(eq + 1));
      if (key.empty() || val.empty()) throw InputError(where(line_no) + "malformed assignment");
      std::string full = section.empty() ? key : section + "." + key;
      t.raw_[full] = val;
    }
    return t;
  }

  static TomlTable parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open config file: " + path);
    return parse(f);
  }

  bool has(const std::string& key) const { return raw_.contains(key); }

  std::string get_string(const std::string& key, const std::string& dflt) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return dflt;
    return unquote(it->second, key);
  }
  double get_double(const std::string& key, double dflt) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return dflt;
    auto v = parse_double(it->second);
    if (!v) throw InputError("config key '" + key + "': expected a number");
    return *v;
  }
  long get_int(const std::string& key, long dflt) const {
    double v = get_double(key, static_cast<double>(dflt));
    long r = static_cast<long>(v);
    if (static_cast<double>(r) != v)
      throw InputError("config key '" + key + "': expected an integer");
    return r;
  }
  bool get_bool(const std::string& key, bool dflt) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return dflt;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw InputError("config key '" + key + "': expected true or false");
  }
  std::vector<long> get_int_array(const std::string& key, std::vector<long> dflt) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return dflt;
    const std::string& s = it->second;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
      throw InputError("config key '" + key + "': expected an array");
    std::vector<long> out;
    std::string body = s.substr(1, s.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      auto v = parse_double(item);
      if (!v) throw InputError("config key '" + key + "': non-numeric array element");
      out.push_back(static_cast<long>(*v));
    }
    return out;
  }

 private:
  static std::string where(std::size_t line) {
    return "config line " + std::to_string(line) + ": ";
  }
  static std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  }
  static std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '"') quoted = !quoted;
      if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
  }
  static std::string unquote(const std::string& s, const std::string& key) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
      return s.substr(1, s.size() - 2);
    if (s.front() == '[')
      throw InputError("config key '" + key + "': expected a scalar, found an array");
    return s;  // bare value
  }

  std::map<std::string, std::string> raw_;
};

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct RunConfig {
  // [paths]
  std::string activation_csv;
  std::string network_file;
  std::string fleet_file;
  std::string out_dir = "out";

  // [activation]
  ActivationCsvSchema schema;

  // [profiles]
  double z_threshold = 6.0;
  int max_gap = 8;

  // [product]
  double ramp_minutes = 5.0;
  double reliability = 0.999;
  double lead_hours = 24.0;
  std::vector<int> durations = {1, 2, 3, 4, 6, 8, 12, 24};

  // [uncertainty]
  UncertaintyConfig uncertainty;

  // [monte_carlo]
  int samples = 1000;
  std::uint64_t seed = 42;
  int jobs = 0;  // 0 = hardware concurrency

  // [engine]
  bool parity = true;
  bool explicit_network = false;
  std::string direction = "both";  // both|upward|downward

  // [design]
  double weight_availability = 0.5;
  double weight_alignment = 0.5;

  SolverConfig solver;

  static RunConfig from_toml(const TomlTable& t) {
    RunConfig c;
    c.activation_csv = t.get_string("paths.activation_csv", c.activation_csv);
    c.network_file = t.get_string("paths.network", c.network_file);
    c.fleet_file = t.get_string("paths.fleet", c.fleet_file);
    c.out_dir = t.get_string("paths.out_dir", c.out_dir);

    c.schema.timestamp_column = t.get_string("activation.timestamp_column", "timestamp");
    c.schema.direction_column = t.get_string("activation.direction_column", "direction");
    c.schema.value_column = t.get_string("activation.value_column", "value");
    c.schema.upward_label = t.get_string("activation.upward_label", "upward");
    c.schema.downward_label = t.get_string("activation.downward_label", "downward");
    std::string delim = t.get_string("activation.delimiter", ",");
    if (delim.size() != 1) throw InputError("activation.delimiter must be one character");
    c.schema.delimiter = delim[0];
    std::string units = t.get_string("activation.units", "mwh");
    if (units != "mwh" && units != "mw")
      throw InputError("activation.units must be 'mwh' or 'mw'");
    c.schema.power_units = units == "mw";

    c.z_threshold = t.get_double("profiles.z_threshold", c.z_threshold);
    c.max_gap = static_cast<int>(t.get_int("profiles.max_gap", c.max_gap));

    c.ramp_minutes = t.get_double("product.ramp_minutes", c.ramp_minutes);
    c.reliability = t.get_double("product.reliability", c.reliability);
    c.lead_hours = t.get_double("product.lead_hours", c.lead_hours);
    std::vector<long> dur_def(c.durations.begin(), c.durations.end());
    auto durs = t.get_int_array("product.durations", dur_def);
    c.durations.assign(durs.begin(), durs.end());

    c.uncertainty.irradiance_sigma =
        t.get_double("uncertainty.irradiance_sigma", c.uncertainty.irradiance_sigma);
    c.uncertainty.temperature_sigma_k =
        t.get_double("uncertainty.temperature_sigma_k", c.uncertainty.temperature_sigma_k);
    c.uncertainty.load_sigma = t.get_double("uncertainty.load_sigma", c.uncertainty.load_sigma);
    c.uncertainty.ev_disruption_max =
        t.get_double("uncertainty.ev_disruption_max", c.uncertainty.ev_disruption_max);

    c.samples = static_cast<int>(t.get_int("monte_carlo.samples", c.samples));
    c.seed = static_cast<std::uint64_t>(t.get_int("monte_carlo.seed", static_cast<long>(c.seed)));
    c.jobs = static_cast<int>(t.get_int("monte_carlo.jobs", c.jobs));

    c.parity = t.get_bool("engine.parity", c.parity);
    c.explicit_network = t.get_bool("engine.explicit_network", c.explicit_network);
    c.direction = t.get_string("engine.direction", c.direction);

    c.weight_availability = t.get_double("design.weight_availability", c.weight_availability);
    c.weight_alignment = t.get_double("design.weight_alignment", c.weight_alignment);
    c.validate();
    return c;
  }

  static RunConfig from_file(const std::string& path) {
    return from_toml(TomlTable::parse_file(path));
  }

  void validate() const {
    for (int d : durations)
      if (d <= 0 || kHoursPerDay % d != 0)
        throw InputError("config: duration " + std::to_string(d) + " does not divide 24");
    if (durations.empty()) throw InputError("config: empty duration set");
    if (samples < 1) throw InputError("config: samples must be >= 1");
    if (!(reliability > 0 && reliability < 1))
      throw InputError("config: reliability must be in (0,1)");
    if (ramp_minutes <= 0) throw InputError("config: ramp_minutes must be positive");
    uncertainty.validate();
    if (direction != "both" && direction != "upward" && direction != "downward")
      throw InputError("config: direction must be both|upward|downward");
    if (weight_availability < 0 || weight_alignment < 0)
      throw InputError("config: selection weights must be nonnegative");
  }

  std::vector<Direction> directions() const {
    if (direction == "upward") return {Direction::upward};
    if (direction == "downward") return {Direction::downward};
    return {Direction::upward, Direction::downward};
  }

  /// Canonical dump of every semantically relevant field, used for the hash.
  std::string canonical() const {
    std::ostringstream os;
    os << "activation_csv=" << activation_csv << "\n"
       << "network=" << network_file << "\n"
       << "fleet=" << fleet_file << "\n"
       << "schema=" << schema.timestamp_column << "|" << schema.direction_column << "|"
       << schema.value_column << "|" << schema.upward_label << "|" << schema.downward_label
       << "|" << schema.delimiter << "|" << (schema.power_units ? "mw" : "mwh") << "\n"
       << "z_threshold=" << format_double(z_threshold) << "\n"
       << "max_gap=" << max_gap << "\n"
       << "ramp_minutes=" << format_double(ramp_minutes) << "\n"
       << "reliability=" << format_double(reliability) << "\n"
       << "lead_hours=" << format_double(lead_hours) << "\n";
    os << "durations=";
    for (int d : durations) os << d << ",";
    os << "\n"
       << "irr_sigma=" << format_double(uncertainty.irradiance_sigma) << "\n"
       << "temp_sigma=" << format_double(uncertainty.temperature_sigma_k) << "\n"
       << "load_sigma=" << format_double(uncertainty.load_sigma) << "\n"
       << "ev_disruption_max=" << format_double(uncertainty.ev_disruption_max) << "\n"
       << "samples=" << samples << "\n"
       << "seed=" << seed << "\n"
       << "parity=" << parity << "\n"
       << "explicit_network=" << explicit_network << "\n"
       << "direction=" << direction << "\n"
       << "weights=" << format_double(weight_availability) << ","
       << format_double(weight_alignment) << "\n";
    return os.str();
  }

  /// Hash of the effective config; jobs and output paths do not affect it.
  std::string hash() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical())));
    return buf;
  }
};

}  // namespace dercap
