#pragma once

// LP / MILP front end over the simplex engine.
//
// Branch and bound: best-bound node selection, most-fractional branching,
// absolute gap tolerance. Rows flagged lazy join the active row set when a
// node solution violates them; since lazy rows are valid model rows, node
// bounds stay valid relaxations and the search remains exact.
//
// A node-budget exhaustion returns the best incumbent with
// SolveStatus::iteration_limit (the contract has no separate node status).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "dercap/model.hpp"
#include "dercap/simplex.hpp"

namespace dercap {

namespace detail {

struct ActiveLp {
  std::vector<std::int32_t> active_rows;
  std::vector<std::int32_t> lazy_rows;
  LpData data;
  std::vector<double> min_cost;

  void build(const ModelSpec& model) {
    active_rows.clear();
    lazy_rows.clear();
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(model.rows.size()); ++i) {
      (model.rows[i].lazy ? lazy_rows : active_rows).push_back(i);
    }
    data = build_lp_data(model, active_rows);
    min_cost.assign(model.vars.size(), 0.0);
    for (const auto& t : model.objective.terms) min_cost[t.var] -= t.coef;
  }

  void activate(const ModelSpec& model, const std::vector<std::int32_t>& rows) {
    for (auto r : rows) {
      active_rows.push_back(r);
      lazy_rows.erase(std::find(lazy_rows.begin(), lazy_rows.end(), r));
    }
    data = build_lp_data(model, active_rows);
  }

  /// Indices of lazy rows violated at x beyond feas_tol, in model order.
  std::vector<std::int32_t> violated_lazy(const ModelSpec& model, const std::vector<double>& x,
                                          double tol) const {
    std::vector<std::int32_t> out;
    for (auto r : lazy_rows) {
      const RowSpec& row = model.rows[r];
      double lhs = row.expr.value(x);
      bool bad = false;
      switch (row.sense) {
        case Sense::le: bad = lhs > row.rhs + tol; break;
        case Sense::ge: bad = lhs < row.rhs - tol; break;
        case Sense::eq: bad = std::abs(lhs - row.rhs) > tol; break;
      }
      if (bad) out.push_back(r);
    }
    return out;
  }
};

/// Solve the LP over the current active set, activating violated lazy rows
/// until the solution satisfies the whole model.
inline Solution lp_with_lazy(const ModelSpec& model, ActiveLp& lp,
                             const std::vector<double>& lb, const std::vector<double>& ub,
                             const SolverConfig& cfg, std::int64_t& iters) {
  Solution sol;
  while (true) {
    SimplexSolver simplex(lp.data, cfg);
    auto res = simplex.solve(lb, ub, lp.min_cost);
    iters += res.iterations;
    sol.status = res.status;
    sol.iterations = iters;
    if (res.status != SolveStatus::optimal) return sol;
    auto viol = lp.violated_lazy(model, res.x, cfg.feas_tol);
    if (viol.empty()) {
      sol.values = std::move(res.x);
      sol.objective = model.objective.value(sol.values);
      return sol;
    }
    lp.activate(model, viol);
  }
}

}  // namespace detail

/// Solve with binaries relaxed to their [0,1] boxes.
inline Solution solve_lp(const ModelSpec& model, const SolverConfig& cfg = {}) {
  model.validate();
  detail::ActiveLp lp;
  lp.build(model);
  std::vector<double> lb(model.vars.size()), ub(model.vars.size());
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    lb[j] = model.vars[j].lb;
    ub[j] = model.vars[j].ub;
  }
  std::int64_t iters = 0;
  return detail::lp_with_lazy(model, lp, lb, ub, cfg, iters);
}

/// Global branch-and-bound solve. Maximization, absolute gap cfg.gap_tol.
inline Solution solve_milp(const ModelSpec& model, const SolverConfig& cfg = {}) {
  model.validate();
  std::vector<std::int32_t> bins;
  for (std::int32_t j = 0; j < static_cast<std::int32_t>(model.vars.size()); ++j)
    if (model.vars[j].type == VarType::binary) bins.push_back(j);

  detail::ActiveLp lp;
  lp.build(model);

  struct Node {
    double bound;
    std::int64_t id;
    std::vector<double> lb, ub;
  };
  struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound < b.bound;  // max-heap on bound
      return a.id > b.id;                                // then FIFO
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  Node root;
  root.bound = kInf;
  root.id = 0;
  root.lb.resize(model.vars.size());
  root.ub.resize(model.vars.size());
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    root.lb[j] = model.vars[j].lb;
    root.ub[j] = model.vars[j].ub;
  }
  open.push(std::move(root));

  Solution incumbent;
  incumbent.status = SolveStatus::infeasible;
  bool have_incumbent = false;
  bool any_node_solved = false;
  std::int64_t iters = 0;
  std::int64_t next_id = 1;
  std::int64_t nodes = 0;

  auto finish = [&](SolveStatus fallback) {
    Solution out = incumbent;
    out.status = have_incumbent ? SolveStatus::optimal : fallback;
    out.iterations = iters;
    out.nodes = nodes;
    return out;
  };

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (have_incumbent && node.bound <= incumbent.objective + cfg.gap_tol) continue;
    if (nodes >= cfg.max_nodes || iters >= cfg.max_iterations) {
      Solution out = incumbent;
      out.status = SolveStatus::iteration_limit;
      out.iterations = iters;
      out.nodes = nodes;
      return out;
    }
    ++nodes;

    Solution sol = detail::lp_with_lazy(model, lp, node.lb, node.ub, cfg, iters);
    if (sol.status == SolveStatus::infeasible) continue;
    if (sol.status == SolveStatus::unbounded) {
      // relaxation unbounded at the root means the MILP is unbounded
      if (!any_node_solved) {
        sol.iterations = iters;
        sol.nodes = nodes;
        return sol;
      }
      continue;
    }
    if (sol.status == SolveStatus::iteration_limit) {
      Solution out = incumbent;
      out.status = SolveStatus::iteration_limit;
      out.iterations = iters;
      out.nodes = nodes;
      return out;
    }
    any_node_solved = true;
    if (have_incumbent && sol.objective <= incumbent.objective + cfg.gap_tol) continue;

    // most fractional binary: largest distance to the nearest of {0,1}
    std::int32_t branch = -1;
    double best_dist = cfg.int_tol;
    for (auto j : bins) {
      double v = sol.values[j];
      double dist = std::min(std::abs(v), std::abs(v - 1.0));
      if (dist > best_dist * (1 + 1e-12)) {
        best_dist = dist;
        branch = j;
      }
    }
    if (branch < 0) {
      incumbent = sol;
      have_incumbent = true;
      continue;
    }
    Node down{sol.objective, next_id++, node.lb, node.ub};
    down.ub[branch] = 0.0;
    Node up{sol.objective, next_id++, std::move(node.lb), std::move(node.ub)};
    up.lb[branch] = 1.0;
    open.push(std::move(down));
    open.push(std::move(up));
  }
  return finish(SolveStatus::infeasible);
}

}  // namespace dercap
