#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "dercap/common.hpp"

namespace dercap {

enum class VarType : std::uint8_t { continuous, binary };

struct Variable {
  double lb = 0.0;
  double ub = kInf;
  VarType type = VarType::continuous;
  std::string name;  // optional, used by the LP dump
};

struct LinTerm {
  std::int32_t var;
  double coef;
};

/// Sparse linear expression: sum of coef*var plus a constant offset.
struct LinExpr {
  std::vector<LinTerm> terms;
  double constant = 0.0;

  LinExpr& add(std::int32_t var, double coef) {
    if (coef != 0.0) terms.push_back({var, coef});
    return *this;
  }
  LinExpr& add(const LinExpr& other, double scale = 1.0) {
    for (const auto& t : other.terms) add(t.var, scale * t.coef);
    constant += scale * other.constant;
    return *this;
  }
  /// Merge duplicate variables, drop exact zeros. Row emission calls this once.
  void compact() {
    std::sort(terms.begin(), terms.end(),
              [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms.size();) {
      std::int32_t v = terms[r].var;
      double c = 0;
      while (r < terms.size() && terms[r].var == v) c += terms[r++].coef;
      if (c != 0.0) terms[w++] = {v, c};
    }
    terms.resize(w);
  }
  double value(const std::vector<double>& x) const {
    double s = constant;
    for (const auto& t : terms) s += t.coef * x[t.var];
    return s;
  }
};

inline LinExpr operator*(double k, const LinExpr& e) {
  LinExpr out;
  out.add(e, k);
  return out;
}

enum class Sense : std::uint8_t { le, eq, ge };

struct RowSpec {
  LinExpr expr;  // constant folded into rhs on ingestion by the solver
  Sense sense = Sense::le;
  double rhs = 0.0;
  /// Lazy rows are part of the model but activated by the solver only when
  /// violated; any reported solution satisfies them like eager rows.
  bool lazy = false;
  std::string name;
};

enum class SolveStatus : std::uint8_t { optimal, infeasible, unbounded, iteration_limit };

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

/// Linear program / MILP in maximization form.
struct ModelSpec {
  std::vector<Variable> vars;
  std::vector<RowSpec> rows;
  LinExpr objective;  // maximized

  std::int32_t add_var(double lb, double ub, VarType type = VarType::continuous,
                       std::string name = {}) {
    vars.push_back({lb, ub, type, std::move(name)});
    return static_cast<std::int32_t>(vars.size() - 1);
  }
  std::int32_t add_continuous(double lb, double ub, std::string name = {}) {
    return add_var(lb, ub, VarType::continuous, std::move(name));
  }
  std::int32_t add_binary(std::string name = {}) {
    return add_var(0.0, 1.0, VarType::binary, std::move(name));
  }
  void add_row(LinExpr expr, Sense sense, double rhs, bool lazy = false, std::string name = {}) {
    expr.compact();
    rows.push_back({std::move(expr), sense, rhs, lazy, std::move(name)});
  }
  /// Convenience: lhs_lo <= expr <= lhs_hi as two rows (skipping infinite sides).
  void add_range(const LinExpr& expr, double lo, double hi, bool lazy = false,
                 const std::string& name = {}) {
    if (hi < kInf) add_row(expr, Sense::le, hi, lazy, name.empty() ? name : name + ".ub");
    if (lo > -kInf) add_row(expr, Sense::ge, lo, lazy, name.empty() ? name : name + ".lb");
  }

  std::size_t num_binaries() const {
    std::size_t n = 0;
    for (const auto& v : vars)
      if (v.type == VarType::binary) ++n;
    return n;
  }

  /// Enforces the structural invariants; throws on malformed input.
  void validate() const {
    const auto n = static_cast<std::int32_t>(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) {
      const auto& v = vars[j];
      if (!(v.lb <= v.ub))
        throw InputError("variable " + std::to_string(j) + ": lb > ub");
      if (v.type == VarType::binary && (v.lb < -1e-12 || v.ub > 1 + 1e-12))
        throw InputError("binary variable " + std::to_string(j) + " with non-unit bounds");
    }
    auto check_expr = [&](const LinExpr& e, const std::string& where) {
      for (const auto& t : e.terms)
        if (t.var < 0 || t.var >= n)
          throw InputError(where + " references undeclared variable " + std::to_string(t.var));
    };
    for (std::size_t i = 0; i < rows.size(); ++i)
      check_expr(rows[i].expr, "row " + std::to_string(i));
    check_expr(objective, "objective");
  }
};

struct Solution {
  SolveStatus status = SolveStatus::infeasible;
  std::vector<double> values;  // per variable; empty unless a point is available
  double objective = 0.0;
  std::int64_t iterations = 0;  // simplex pivots
  std::int64_t nodes = 0;       // branch-and-bound nodes processed
  bool has_point() const { return !values.empty(); }
};

/// All numeric tolerances and limits in one place.
struct SolverConfig {
  double feas_tol = 1e-6;   // constraint/bound satisfaction
  double opt_tol = 1e-7;    // reduced-cost optimality threshold
  double int_tol = 1e-6;    // binary integrality threshold
  double gap_tol = 1e-6;    // absolute branch-and-bound gap
  double pivot_tol = 1e-9;  // minimum acceptable pivot magnitude
  std::int64_t max_iterations = 200000;  // simplex pivots per LP
  std::int64_t max_nodes = 200000;       // branch-and-bound node budget
  int refactor_interval = 64;
  int stall_pivots_before_bland = 60;
};

}  // namespace dercap
