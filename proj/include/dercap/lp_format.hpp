#pragma once

#include <ostream>
#include <string>

#include "dercap/model.hpp"

namespace dercap {

/// Dump a ModelSpec as CPLEX-style LP-format text for cross-checking against
/// external tools. Not used at runtime.
inline void write_lp_format(std::ostream& os, const ModelSpec& model) {
  auto vname = [&](std::int32_t j) {
    const auto& n = model.vars[j].name;
    return n.empty() ? "x" + std::to_string(j) : n;
  };
  auto expr = [&](const LinExpr& e) {
    std::string s;
    bool first = true;
    for (const auto& t : e.terms) {
      double c = t.coef;
      if (first) {
        if (c < 0) s += "- ";
        first = false;
      } else {
        s += c < 0 ? " - " : " + ";
      }
      s += format_double(std::abs(c)) + " " + vname(t.var);
    }
    if (first) s += "0 x0";
    return s;
  };
  os << "Maximize\n obj: " << expr(model.objective) << "\n";
  os << "Subject To\n";
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    const auto& r = model.rows[i];
    const char* op = r.sense == Sense::le ? "<=" : (r.sense == Sense::ge ? ">=" : "=");
    std::string name = r.name.empty() ? "c" + std::to_string(i) : r.name;
    os << " " << name << ": " << expr(r.expr) << " " << op << " "
       << format_double(r.rhs - r.expr.constant) << "\n";
  }
  os << "Bounds\n";
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    const auto& v = model.vars[j];
    if (v.lb == -kInf && v.ub == kInf) {
      os << " " << vname(j) << " free\n";
    } else {
      os << " " << (v.lb == -kInf ? "-inf" : format_double(v.lb)) << " <= " << vname(j)
         << " <= " << (v.ub == kInf ? "+inf" : format_double(v.ub)) << "\n";
    }
  }
  bool any_bin = false;
  for (const auto& v : model.vars) any_bin |= v.type == VarType::binary;
  if (any_bin) {
    os << "Binaries\n";
    for (std::size_t j = 0; j < model.vars.size(); ++j)
      if (model.vars[j].type == VarType::binary) os << " " << vname(j) << "\n";
  }
  os << "End\n";
}

}  // namespace dercap
