#pragma once

// Radial distribution network and its linear DistFlow representation.
//
// Orientation: line flow is positive from parent toward child. Net bus
// injections are generation-positive, so the flow on the line above bus j is
// minus the sum of injections in j's subtree, and the PCC power (export
// positive, kW) equals the sum of all net injections.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dercap/common.hpp"
#include "dercap/model.hpp"

namespace dercap {

struct Bus {
  std::string id;
  double v_min_sq = 0.9025;  // 0.95^2 pu^2
  double v_max_sq = 1.1025;  // 1.05^2 pu^2
};

struct Line {
  int from_bus = -1;  // indices into Network::buses
  int to_bus = -1;
  double r = 0.0;  // pu
  double x = 0.0;  // pu
  double s_max = 1.0;  // pu apparent-flow limit
};

struct Network {
  std::vector<Bus> buses;
  std::vector<Line> lines;
  int root = 0;
  double base_kva = 400.0;

  int bus_index(const std::string& id) const {
    for (std::size_t i = 0; i < buses.size(); ++i)
      if (buses[i].id == id) return static_cast<int>(i);
    throw InputError("unknown bus id: '" + id + "'");
  }
};

struct RadialCheck {
  bool ok = false;
  std::string diagnostic;
};

/// Connected + acyclic with |lines| = |buses|-1, rooted at Network::root.
inline RadialCheck validate_radial(const Network& net) {
  const int n = static_cast<int>(net.buses.size());
  if (n == 0) return {false, "network has no buses"};
  if (net.root < 0 || net.root >= n) return {false, "root bus does not exist"};
  for (std::size_t l = 0; l < net.lines.size(); ++l) {
    const Line& ln = net.lines[l];
    if (ln.from_bus < 0 || ln.from_bus >= n || ln.to_bus < 0 || ln.to_bus >= n)
      return {false, "line " + std::to_string(l) + " references an unknown bus"};
    if (ln.from_bus == ln.to_bus)
      return {false, "line " + std::to_string(l) + " is a self-loop at bus '" +
                         net.buses[ln.from_bus].id + "'"};
    if (ln.r < 0 || ln.x < 0 || ln.s_max <= 0)
      return {false, "line " + std::to_string(l) + " has invalid parameters"};
  }
  // union-find catches the first cycle-closing line
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t l = 0; l < net.lines.size(); ++l) {
    int a = find(net.lines[l].from_bus), b = find(net.lines[l].to_bus);
    if (a == b)
      return {false, "cycle closed by line " + std::to_string(l) + " ('" +
                         net.buses[net.lines[l].from_bus].id + "'-'" +
                         net.buses[net.lines[l].to_bus].id + "')"};
    parent[a] = b;
  }
  if (net.lines.size() != static_cast<std::size_t>(n - 1)) {
    for (int i = 0; i < n; ++i)
      if (find(i) != find(net.root))
        return {false, "bus '" + net.buses[i].id + "' is not connected to the root"};
    return {false, "line count does not match |buses|-1"};
  }
  for (int i = 0; i < n; ++i)
    if (find(i) != find(net.root))
      return {false, "bus '" + net.buses[i].id + "' is not connected to the root"};
  return {true, ""};
}

/// Rooted-tree indexing derived from a validated network.
class NetworkIndex {
 public:
  explicit NetworkIndex(const Network& net) : net_(&net) {
    auto check = validate_radial(net);
    if (!check.ok) throw InputError("invalid network: " + check.diagnostic);
    const int n = static_cast<int>(net.buses.size());
    parent_bus_.assign(n, -1);
    parent_line_.assign(n, -1);
    children_.assign(n, {});
    child_lines_.assign(n, {});
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (other bus, line)
    for (std::size_t l = 0; l < net.lines.size(); ++l) {
      adj[net.lines[l].from_bus].push_back({net.lines[l].to_bus, static_cast<int>(l)});
      adj[net.lines[l].to_bus].push_back({net.lines[l].from_bus, static_cast<int>(l)});
    }
    order_.clear();
    order_.push_back(net.root);
    std::vector<bool> seen(n, false);
    seen[net.root] = true;
    for (std::size_t q = 0; q < order_.size(); ++q) {
      int b = order_[q];
      for (auto [nb, l] : adj[b]) {
        if (seen[nb]) continue;
        seen[nb] = true;
        parent_bus_[nb] = b;
        parent_line_[nb] = l;
        children_[b].push_back(nb);
        child_lines_[b].push_back(l);
        order_.push_back(nb);
      }
    }
    // line orientation: downstream bus of line l
    down_bus_.assign(net.lines.size(), -1);
    for (int b = 0; b < n; ++b)
      if (parent_line_[b] >= 0) down_bus_[parent_line_[b]] = b;
    // path to root (line ids) per bus
    path_lines_.assign(n, {});
    for (int b : order_) {
      if (parent_bus_[b] < 0) continue;
      path_lines_[b] = path_lines_[parent_bus_[b]];
      path_lines_[b].push_back(parent_line_[b]);
    }
    // subtree bus list per line
    subtree_.assign(net.lines.size(), {});
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      int b = *it;
      int pl = parent_line_[b];
      if (pl < 0) continue;
      subtree_[pl].push_back(b);
      for (int cl : child_lines_[b])
        subtree_[pl].insert(subtree_[pl].end(), subtree_[cl].begin(), subtree_[cl].end());
    }
    for (auto& s : subtree_) std::sort(s.begin(), s.end());
  }

  const Network& net() const { return *net_; }
  const std::vector<int>& order() const { return order_; }  // root first, parents before children
  int parent_bus(int b) const { return parent_bus_[b]; }
  int parent_line(int b) const { return parent_line_[b]; }
  const std::vector<int>& children(int b) const { return children_[b]; }
  const std::vector<int>& child_lines(int b) const { return child_lines_[b]; }
  int downstream_bus(int line) const { return down_bus_[line]; }
  const std::vector<int>& subtree_buses(int line) const { return subtree_[line]; }
  const std::vector<int>& path_lines(int b) const { return path_lines_[b]; }

  /// Flows from injections (pu): flow[l] = -sum of subtree injections.
  void accumulate_flows(const std::vector<double>& inj, std::vector<double>& flow) const {
    flow.assign(net_->lines.size(), 0.0);
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      int b = *it;
      int pl = parent_line_[b];
      if (pl < 0) continue;
      double s = -inj[b];
      for (int cl : child_lines_[b]) s += flow[cl];
      flow[pl] = s;
    }
  }

  /// Squared voltages from flows: v root = 1, v_child = v_parent - 2(rP + xQ).
  void accumulate_voltages(const std::vector<double>& p_flow, const std::vector<double>& q_flow,
                           std::vector<double>& v_sq) const {
    v_sq.assign(net_->buses.size(), 1.0);
    for (int b : order_) {
      int pl = parent_line_[b];
      if (pl < 0) continue;
      const Line& l = net_->lines[pl];
      v_sq[b] = v_sq[parent_bus_[b]] - 2.0 * (l.r * p_flow[pl] + l.x * q_flow[pl]);
    }
  }

  /// Common-path resistance/reactance sums between buses a and b
  /// (the voltage sensitivity of bus a to an injection at bus b).
  std::pair<double, double> common_path_rx(int a, int b) const {
    double r = 0, x = 0;
    const auto& pa = path_lines_[a];
    std::vector<char> mark(net_->lines.size(), 0);
    for (int l : pa) mark[l] = 1;
    for (int l : path_lines_[b]) {
      if (mark[l]) {
        r += net_->lines[l].r;
        x += net_->lines[l].x;
      }
    }
    return {r, x};
  }

 private:
  const Network* net_;
  std::vector<int> order_;
  std::vector<int> parent_bus_, parent_line_;
  std::vector<std::vector<int>> children_, child_lines_;
  std::vector<int> down_bus_;
  std::vector<std::vector<int>> subtree_;
  std::vector<std::vector<int>> path_lines_;
};

/// 8-facet inner polygon of the disc of radius `radius`:
/// cos(t_k) P + sin(t_k) Q <= radius*cos(pi/8), t_k = 22.5 + 45k degrees.
struct OctagonFacet {
  double cp, cq, rhs;
};

inline std::vector<OctagonFacet> octagon_facets(double radius) {
  std::vector<OctagonFacet> out;
  const double d = radius * std::cos(M_PI / 8);
  for (int k = 0; k < 8; ++k) {
    double th = M_PI / 8 + k * M_PI / 4;
    out.push_back({std::cos(th), std::sin(th), d});
  }
  return out;
}

/// Variable ids of one explicit DistFlow block (one state, full horizon).
struct DistflowVars {
  int horizon = 0;
  std::vector<std::int32_t> p_line, q_line;  // line*horizon + t, pu
  std::vector<std::int32_t> v_sq;            // bus*horizon + t, pu^2
  std::vector<std::int32_t> p_pcc;           // t, kW export-positive
  std::int32_t pl(int line, int t) const { return p_line[line * horizon + t]; }
  std::int32_t ql(int line, int t) const { return q_line[line * horizon + t]; }
  std::int32_t v(int bus, int t) const { return v_sq[bus * horizon + t]; }
};

/// Per-(bus,hour) net injection expressions in kW/kvar, constants included.
struct InjectionTable {
  int n_bus = 0;
  int horizon = 0;
  std::vector<LinExpr> p, q;
  InjectionTable(int nb, int T) : n_bus(nb), horizon(T), p(nb * T), q(nb * T) {}
  LinExpr& p_at(int bus, int t) { return p[bus * horizon + t]; }
  LinExpr& q_at(int bus, int t) { return q[bus * horizon + t]; }
  const LinExpr& p_at(int bus, int t) const { return p[bus * horizon + t]; }
  const LinExpr& q_at(int bus, int t) const { return q[bus * horizon + t]; }
};

/// Emit the linear DistFlow constraint block for one state over the horizon:
/// flow balance per line, voltage drop per line, root voltage fixed at 1,
/// voltage bounds, octagonal apparent-flow limits, and the PCC definition.
inline DistflowVars build_distflow_block(ModelSpec& model, const NetworkIndex& idx,
                                         const InjectionTable& inj, int horizon,
                                         const std::string& state_tag = {}) {
  const Network& net = idx.net();
  const int nb = static_cast<int>(net.buses.size());
  const int nl = static_cast<int>(net.lines.size());
  const double base = net.base_kva;
  DistflowVars vars;
  vars.horizon = horizon;
  vars.p_line.resize(nl * horizon);
  vars.q_line.resize(nl * horizon);
  vars.v_sq.resize(nb * horizon);
  vars.p_pcc.resize(horizon);

  for (int l = 0; l < nl; ++l)
    for (int t = 0; t < horizon; ++t) {
      vars.p_line[l * horizon + t] = model.add_continuous(-kInf, kInf);
      vars.q_line[l * horizon + t] = model.add_continuous(-kInf, kInf);
    }
  for (int b = 0; b < nb; ++b)
    for (int t = 0; t < horizon; ++t) {
      bool is_root = b == net.root;
      vars.v_sq[b * horizon + t] = model.add_continuous(
          is_root ? 1.0 : net.buses[b].v_min_sq, is_root ? 1.0 : net.buses[b].v_max_sq);
    }
  for (int t = 0; t < horizon; ++t) vars.p_pcc[t] = model.add_continuous(-kInf, kInf);

  for (int t = 0; t < horizon; ++t) {
    for (int l = 0; l < nl; ++l) {
      int j = idx.downstream_bus(l);
      // P_l + p_j/base - sum child flows = 0  (flow toward children positive)
      LinExpr pe, qe;
      pe.add(vars.pl(l, t), 1.0);
      qe.add(vars.ql(l, t), 1.0);
      pe.add(inj.p_at(j, t), 1.0 / base);
      qe.add(inj.q_at(j, t), 1.0 / base);
      for (int cl : idx.child_lines(j)) {
        pe.add(vars.pl(cl, t), -1.0);
        qe.add(vars.ql(cl, t), -1.0);
      }
      model.add_row(pe, Sense::eq, 0.0, false, state_tag);
      model.add_row(qe, Sense::eq, 0.0, false, state_tag);
      // v_down = v_up - 2(r P + x Q)
      LinExpr ve;
      ve.add(vars.v(j, t), 1.0);
      ve.add(vars.v(idx.parent_bus(j) >= 0 ? idx.parent_bus(j) : net.root, t), -1.0);
      ve.add(vars.pl(l, t), 2.0 * net.lines[l].r);
      ve.add(vars.ql(l, t), 2.0 * net.lines[l].x);
      model.add_row(ve, Sense::eq, 0.0, false, state_tag);
      for (const auto& f : octagon_facets(net.lines[l].s_max)) {
        LinExpr oe;
        oe.add(vars.pl(l, t), f.cp);
        oe.add(vars.ql(l, t), f.cq);
        model.add_row(oe, Sense::le, f.rhs, false, state_tag);
      }
    }
    // P_pcc (kW, export positive) = base * (root injection/base - sum of root line flows)
    LinExpr pcc;
    pcc.add(vars.p_pcc[t], 1.0);
    for (int cl : idx.child_lines(net.root)) pcc.add(vars.pl(cl, t), base);
    pcc.add(inj.p_at(net.root, t), -1.0);
    model.add_row(pcc, Sense::eq, 0.0, false, state_tag);
  }
  return vars;
}

// ---- JSON serialization ----

inline nlohmann::ordered_json network_to_json(const Network& net) {
  nlohmann::ordered_json j;
  j["base_kva"] = net.base_kva;
  j["root"] = net.buses[net.root].id;
  auto buses = nlohmann::ordered_json::array();
  for (const auto& b : net.buses) {
    nlohmann::ordered_json jb;
    jb["id"] = b.id;
    jb["v_min_sq"] = b.v_min_sq;
    jb["v_max_sq"] = b.v_max_sq;
    buses.push_back(jb);
  }
  j["buses"] = buses;
  auto lines = nlohmann::ordered_json::array();
  for (const auto& l : net.lines) {
    nlohmann::ordered_json jl;
    jl["from"] = net.buses[l.from_bus].id;
    jl["to"] = net.buses[l.to_bus].id;
    jl["r_pu"] = l.r;
    jl["x_pu"] = l.x;
    jl["s_max_pu"] = l.s_max;
    lines.push_back(jl);
  }
  j["lines"] = lines;
  return j;
}

inline Network network_from_json(const nlohmann::json& j) {
  Network net;
  try {
    net.base_kva = j.value("base_kva", 400.0);
    for (const auto& jb : j.at("buses")) {
      Bus b;
      b.id = jb.at("id").get<std::string>();
      b.v_min_sq = jb.value("v_min_sq", 0.9025);
      b.v_max_sq = jb.value("v_max_sq", 1.1025);
      if (!(b.v_min_sq > 0) || !(b.v_min_sq < b.v_max_sq))
        throw InputError("bus '" + b.id + "': invalid voltage bounds");
      net.buses.push_back(std::move(b));
    }
    net.root = net.bus_index(j.at("root").get<std::string>());
    for (const auto& jl : j.at("lines")) {
      Line l;
      l.from_bus = net.bus_index(jl.at("from").get<std::string>());
      l.to_bus = net.bus_index(jl.at("to").get<std::string>());
      l.r = jl.at("r_pu").get<double>();
      l.x = jl.at("x_pu").get<double>();
      l.s_max = jl.at("s_max_pu").get<double>();
      net.lines.push_back(l);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("network JSON: ") + e.what());
  }
  auto check = validate_radial(net);
  if (!check.ok) throw InputError("network JSON: " + check.diagnostic);
  return net;
}

}  // namespace dercap
