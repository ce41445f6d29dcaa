// Regenerates the committed fixtures: the 97-bus synthetic network, the
// case-study fleet, and one year of synthetic activation data.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "dercap/synthetic.hpp"

int main(int argc, char** argv) {
  std::string out = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(out);
  using namespace dercap;

  Network net = make_synthetic_network(97, 6, 400.0);
  {
    std::ofstream f(out + "/network97.json", std::ios::binary);
    f << network_to_json(net).dump(2) << "\n";
  }
  {
    FleetFile fleet = make_case_study_fleet(net);
    nlohmann::ordered_json j;
    j["rep_days"] = fleet.rep_days;
    auto dump_profiles = [&](auto getter, const auto& devices) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < devices.size(); ++i) arr.push_back(getter(i));
      return arr;
    };
    const Fleet& first = fleet.fleets.at(fleet.rep_days.front());
    j["generators"] = dump_profiles(
        [&](std::size_t i) {
          const auto& g = first.generators[i];
          nlohmann::ordered_json jg;
          jg["id"] = g.id;
          jg["bus"] = net.buses[g.bus].id;
          jg["p_nom_kw"] = g.p_nom_kw;
          jg["s_rating_kva"] = g.s_rating_kva;
          nlohmann::ordered_json cf;
          for (const auto& day : fleet.rep_days)
            cf[day] = fleet.fleets.at(day).generators[i].cf;
          jg["cf"] = cf;
          return jg;
        },
        first.generators);
    j["heat_pumps"] = dump_profiles(
        [&](std::size_t i) {
          const auto& h = first.heat_pumps[i];
          nlohmann::ordered_json jh;
          jh["id"] = h.id;
          jh["bus"] = net.buses[h.bus].id;
          jh["p_max_kw"] = h.p_max_kw;
          jh["cop"] = h.cop;
          jh["r_th_k_per_kw"] = h.r_th_k_per_kw;
          jh["c_th_kwh_per_k"] = h.c_th_kwh_per_k;
          jh["t_min_c"] = h.t_min_c;
          jh["t_max_c"] = h.t_max_c;
          jh["t_init_c"] = h.t_init_c;
          nlohmann::ordered_json amb;
          for (const auto& day : fleet.rep_days)
            amb[day] = fleet.fleets.at(day).heat_pumps[i].ambient_c;
          jh["ambient_c"] = amb;
          return jh;
        },
        first.heat_pumps);
    j["batteries"] = dump_profiles(
        [&](std::size_t i) {
          const auto& b = first.batteries[i];
          nlohmann::ordered_json jb;
          jb["id"] = b.id;
          jb["bus"] = net.buses[b.bus].id;
          jb["e_cap_kwh"] = b.e_cap_kwh;
          jb["p_ch_max_kw"] = b.p_ch_max_kw;
          jb["p_dis_max_kw"] = b.p_dis_max_kw;
          jb["eta_ch"] = b.eta_ch;
          jb["eta_dis"] = b.eta_dis;
          jb["soc_min"] = b.soc_min;
          jb["soc_max"] = b.soc_max;
          jb["soc_init"] = b.soc_init;
          jb["s_rating_kva"] = b.s_rating_kva;
          return jb;
        },
        first.batteries);
    j["ev_events"] = dump_profiles(
        [&](std::size_t i) {
          const auto& e = first.ev_events[i];
          nlohmann::ordered_json je;
          je["vehicle"] = e.vehicle;
          je["bus"] = net.buses[e.bus].id;
          je["arrive"] = e.t_arrive;
          je["depart"] = e.t_depart;
          je["e_req_kwh"] = e.e_req_kwh;
          je["e_cap_kwh"] = e.e_cap_kwh;
          je["p_max_kw"] = e.p_max_kw;
          je["eta_ch"] = e.eta_ch;
          je["eta_dis"] = e.eta_dis;
          je["v2g"] = e.v2g;
          je["r_min_kw"] = e.r_min_kw;
          je["soc_arrive"] = e.soc_arrive;
          return je;
        },
        first.ev_events);
    j["loads"] = dump_profiles(
        [&](std::size_t i) {
          const auto& l = first.loads[i];
          nlohmann::ordered_json jl;
          jl["id"] = l.id;
          jl["bus"] = net.buses[l.bus].id;
          nlohmann::ordered_json p, q;
          for (const auto& day : fleet.rep_days) {
            p[day] = fleet.fleets.at(day).loads[i].p_kw;
            q[day] = fleet.fleets.at(day).loads[i].q_kvar;
          }
          jl["p_kw"] = p;
          jl["q_kvar"] = q;
          return jl;
        },
        first.loads);
    std::ofstream f(out + "/fleet97.json", std::ios::binary);
    f << j.dump(2) << "\n";
  }
  {
    auto records = make_activation_records({});
    std::ofstream f(out + "/activation_2024.csv", std::ios::binary);
    write_activation_csv(f, records);
  }
  std::printf("fixtures written to %s\n", out.c_str());
  return 0;
}
