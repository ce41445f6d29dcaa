#pragma once

// Bounded-variable revised primal simplex over a sparse column matrix.
//
// Basis inverse is held as a sparse LU factorization (Markowitz-style pivoting
// with singleton fast paths) plus a product-form eta chain between
// refactorizations. Phase 1 is the composite scheme: costs +/-1 on basic
// variables outside their bounds, rebuilt every iteration, with the ratio test
// stopping at the first bound crossing. Dantzig pricing with Bland's rule as
// the anti-cycling fallback after a degenerate stall.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dercap/model.hpp"

namespace dercap::detail {

struct CscMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<std::int32_t> ptr;  // size n_cols+1
  std::vector<std::int32_t> idx;  // row indices
  std::vector<double> val;
};

/// Column matrix of the structural variables over the listed rows, plus the
/// per-row sense and constant-folded rhs.
struct LpData {
  CscMatrix a;
  std::vector<Sense> sense;
  std::vector<double> rhs;
};

inline LpData build_lp_data(const ModelSpec& model, const std::vector<std::int32_t>& row_ids) {
  LpData out;
  const int m = static_cast<int>(row_ids.size());
  const int n = static_cast<int>(model.vars.size());
  out.a.n_rows = m;
  out.a.n_cols = n;
  out.sense.resize(m);
  out.rhs.resize(m);
  std::vector<std::int32_t> count(n, 0);
  for (int i = 0; i < m; ++i) {
    const RowSpec& r = model.rows[row_ids[i]];
    out.sense[i] = r.sense;
    out.rhs[i] = r.rhs - r.expr.constant;
    for (const auto& t : r.expr.terms) ++count[t.var];
  }
  out.a.ptr.assign(n + 1, 0);
  for (int j = 0; j < n; ++j) out.a.ptr[j + 1] = out.a.ptr[j] + count[j];
  out.a.idx.resize(out.a.ptr[n]);
  out.a.val.resize(out.a.ptr[n]);
  std::vector<std::int32_t> fill(out.a.ptr.begin(), out.a.ptr.end() - 1);
  for (int i = 0; i < m; ++i) {
    const RowSpec& r = model.rows[row_ids[i]];
    for (const auto& t : r.expr.terms) {
      out.a.idx[fill[t.var]] = i;
      out.a.val[fill[t.var]] = t.coef;
      ++fill[t.var];
    }
  }
  return out;
}

/// Sparse LU of a basis matrix whose columns are given by basis position.
class LuFactor {
 public:
  // cols[p]: sparse column (row, value) of the basis matrix at position p.
  // Returns false if the matrix is numerically singular.
  bool factor(int m, const std::vector<std::vector<std::pair<std::int32_t, double>>>& cols) {
    m_ = m;
    prow_.assign(m, -1);
    pcol_.assign(m, -1);
    pdiag_.assign(m, 0.0);
    lptr_.assign(1, 0);
    lrow_.clear();
    lval_.clear();
    uptr_.assign(1, 0);
    ucolp_.clear();
    uval_.clear();
    rowk_.assign(m, -1);
    colk_.assign(m, -1);

    // working row-wise structure: rows_[r] = list of (basis position, value)
    rows_.assign(m, {});
    colrows_.assign(m, {});
    rowcnt_.assign(m, 0);
    colcnt_.assign(m, 0);
    for (int p = 0; p < m; ++p) {
      for (auto [r, v] : cols[p]) {
        if (v == 0.0) continue;
        rows_[r].push_back({p, v});
        colrows_[p].push_back(r);
        ++rowcnt_[r];
        ++colcnt_[p];
      }
    }
    rowlive_.assign(m, 1);
    collive_.assign(m, 1);

    for (int k = 0; k < m; ++k) {
      int pr = -1, pc = -1;
      if (!select_pivot(pr, pc)) return false;
      double pv = row_value(pr, pc);
      if (pv == 0.0 || !std::isfinite(pv)) return false;
      prow_[k] = pr;
      pcol_[k] = pc;
      pdiag_[k] = pv;
      rowk_[pr] = k;
      colk_[pc] = k;

      // U row k: remaining entries of pivot row (excluding pivot column)
      for (auto& [c, v] : rows_[pr]) {
        if (c == pc || !collive_[c]) continue;
        ucolp_.push_back(c);
        uval_.push_back(v);
      }
      uptr_.push_back(static_cast<std::int32_t>(ucolp_.size()));

      // eliminate pivot column from the other live rows
      for (int r2 : colrows_[pc]) {
        if (r2 == pr || !rowlive_[r2]) continue;
        double v2 = 0.0;
        std::size_t pos2 = remove_entry(r2, pc, v2);
        if (pos2 == npos) continue;  // stale colrows entry
        --rowcnt_[r2];
        double f = v2 / pv;
        lrow_.push_back(r2);
        lval_.push_back(f);
        if (f != 0.0) {
          for (auto& [cj, vj] : rows_[pr]) {
            if (cj == pc || !collive_[cj]) continue;
            add_to_row(r2, cj, -f * vj);
          }
        }
      }
      lptr_.push_back(static_cast<std::int32_t>(lrow_.size()));

      // retire pivot row and column
      for (auto& [cj, vj] : rows_[pr]) {
        if (cj != pc && collive_[cj]) --colcnt_[cj];
      }
      rowlive_[pr] = 0;
      collive_[pc] = 0;
      rows_[pr].clear();
      colrows_[pc].clear();
    }

    // column view of U for BTRAN
    ucptr_.assign(m + 1, 0);
    {
      std::vector<std::int32_t> cnt(m, 0);
      for (std::int32_t e = 0; e < static_cast<std::int32_t>(ucolp_.size()); ++e)
        ++cnt[ucolp_[e]];
      for (int p = 0; p < m; ++p) ucptr_[p + 1] = ucptr_[p] + cnt[p];
      uck_.resize(ucolp_.size());
      ucv_.resize(ucolp_.size());
      std::vector<std::int32_t> fill(ucptr_.begin(), ucptr_.end() - 1);
      for (int k = 0; k < m; ++k) {
        for (std::int32_t e = uptr_[k]; e < uptr_[k + 1]; ++e) {
          int p = ucolp_[e];
          uck_[fill[p]] = k;
          ucv_[fill[p]] = uval_[e];
          ++fill[p];
        }
      }
    }
    return true;
  }

  /// x := B^{-1} b. Input indexed by row, output indexed by basis position.
  void ftran(std::vector<double>& work, std::vector<double>& out) const {
    for (int k = 0; k < m_; ++k) {
      double piv = work[prow_[k]];
      if (piv == 0.0) continue;
      for (std::int32_t e = lptr_[k]; e < lptr_[k + 1]; ++e) work[lrow_[e]] -= lval_[e] * piv;
    }
    for (int k = m_ - 1; k >= 0; --k) {
      double s = work[prow_[k]];
      for (std::int32_t e = uptr_[k]; e < uptr_[k + 1]; ++e) s -= uval_[e] * out[ucolp_[e]];
      out[pcol_[k]] = s / pdiag_[k];
    }
  }

  /// y := B^{-T} c. Input indexed by basis position, output indexed by row.
  void btran(const std::vector<double>& c_pos, std::vector<double>& z_scratch,
             std::vector<double>& out) const {
    for (int k = 0; k < m_; ++k) {
      double s = c_pos[pcol_[k]];
      // entries of U column pcol_[k] all have pivot step < k
      for (std::int32_t e = ucptr_[pcol_[k]]; e < ucptr_[pcol_[k] + 1]; ++e)
        s -= ucv_[e] * z_scratch[uck_[e]];
      z_scratch[k] = s / pdiag_[k];
    }
    for (int k = m_ - 1; k >= 0; --k) {
      double zk = z_scratch[k];
      for (std::int32_t e = lptr_[k]; e < lptr_[k + 1]; ++e) zk -= lval_[e] * out[lrow_[e]];
      out[prow_[k]] = zk;
    }
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  double row_value(int r, int c) const {
    for (auto& [cj, vj] : rows_[r])
      if (cj == c) return vj;
    return 0.0;
  }

  std::size_t remove_entry(int r, int c, double& value_out) {
    auto& row = rows_[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].first == c) {
        value_out = row[i].second;
        row[i] = row.back();
        row.pop_back();
        return i;
      }
    }
    return npos;
  }

  void add_to_row(int r, int c, double delta) {
    if (delta == 0.0) return;
    auto& row = rows_[r];
    for (auto& [cj, vj] : row) {
      if (cj == c) {
        vj += delta;
        return;
      }
    }
    row.push_back({c, delta});
    colrows_[c].push_back(r);
    ++rowcnt_[r];
    ++colcnt_[c];
  }

  bool select_pivot(int& pr, int& pc) {
    // singleton rows are forced pivots (only entry left in the row)
    for (int r = 0; r < m_; ++r) {
      if (!rowlive_[r] || rowcnt_[r] != 1) continue;
      for (auto& [c, v] : rows_[r]) {
        if (collive_[c]) {
          pr = r;
          pc = c;
          return true;
        }
      }
    }
    // singleton columns
    for (int c = 0; c < m_; ++c) {
      if (!collive_[c] || colcnt_[c] != 1) continue;
      for (int r : colrows_[c]) {
        if (rowlive_[r] && row_value(r, c) != 0.0) {
          pr = r;
          pc = c;
          return true;
        }
      }
    }
    // Markowitz with a relative stability threshold on the small kernel
    double best_cost = kInf;
    double best_mag = 0.0;
    pr = pc = -1;
    std::vector<double> colmax(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      if (!rowlive_[r]) continue;
      for (auto& [c, v] : rows_[r])
        if (collive_[c]) colmax[c] = std::max(colmax[c], std::abs(v));
    }
    for (int r = 0; r < m_; ++r) {
      if (!rowlive_[r]) continue;
      for (auto& [c, v] : rows_[r]) {
        if (!collive_[c]) continue;
        double mag = std::abs(v);
        if (mag < 0.01 * colmax[c] || mag == 0.0) continue;
        double cost =
            static_cast<double>(rowcnt_[r] - 1) * static_cast<double>(colcnt_[c] - 1);
        if (cost < best_cost - 0.5 ||
            (std::abs(cost - best_cost) <= 0.5 && mag > best_mag * (1 + 1e-12))) {
          best_cost = cost;
          best_mag = mag;
          pr = r;
          pc = c;
        }
      }
    }
    return pr >= 0;
  }

  int m_ = 0;
  std::vector<int> prow_, pcol_;
  std::vector<double> pdiag_;
  std::vector<std::int32_t> lptr_, lrow_;
  std::vector<double> lval_;
  std::vector<std::int32_t> uptr_, ucolp_;
  std::vector<double> uval_;
  std::vector<std::int32_t> ucptr_, uck_;
  std::vector<double> ucv_;
  std::vector<int> rowk_, colk_;

  // factorization workspace
  std::vector<std::vector<std::pair<std::int32_t, double>>> rows_;
  std::vector<std::vector<int>> colrows_;
  std::vector<std::int32_t> rowcnt_, colcnt_;
  std::vector<std::uint8_t> rowlive_, collive_;
};

/// One LP solve over fixed structure; bounds and costs vary per call so the
/// branch-and-bound loop can reuse the instance.
class SimplexSolver {
 public:
  SimplexSolver(const LpData& lp, const SolverConfig& cfg) : lp_(lp), cfg_(cfg) {
    m_ = lp_.a.n_rows;
    n_ = lp_.a.n_cols;
    ncol_ = n_ + m_;
  }

  struct Result {
    SolveStatus status = SolveStatus::iteration_limit;
    std::vector<double> x;  // structural values, size n
    std::int64_t iterations = 0;
  };

  /// min_cost: minimization costs for structural variables.
  Result solve(const std::vector<double>& lb_struct, const std::vector<double>& ub_struct,
               const std::vector<double>& min_cost) {
    init_bounds(lb_struct, ub_struct);
    cost_ = &min_cost;
    init_basis();
    Result res;
    std::int64_t iter = 0;
    bool bland = false;
    int stall = 0;
    int cleanup_rounds = 0;

    while (true) {
      if (iter >= cfg_.max_iterations) {
        res.status = SolveStatus::iteration_limit;
        res.iterations = iter;
        return res;
      }
      const bool phase1 = infeasibility() > cfg_.feas_tol;
      build_duals(phase1);

      int enter = pick_entering(phase1, bland);
      if (enter < 0) {
        if (phase1) {
          res.status = SolveStatus::infeasible;
          res.iterations = iter;
          return res;
        }
        // claimed optimal: refresh the factorization and verify primal feasibility
        refactor();
        if (infeasibility() > cfg_.feas_tol) {
          if (++cleanup_rounds > 3) {
            res.status = SolveStatus::iteration_limit;
            res.iterations = iter;
            return res;
          }
          continue;
        }
        res.status = SolveStatus::optimal;
        res.iterations = iter;
        extract(res.x);
        return res;
      }

      const int sigma = entering_direction(enter);
      ftran_column(enter);

      int leave_pos = -1;
      bool leave_upper = false;
      bool own_flip = false;
      double t = ratio_test(enter, sigma, leave_pos, leave_upper, own_flip);
      if (t == kInf) {
        if (phase1) {  // numerically impossible; treat as breakdown
          res.status = SolveStatus::iteration_limit;
          res.iterations = iter;
          return res;
        }
        res.status = SolveStatus::unbounded;
        res.iterations = iter;
        return res;
      }
      if (!own_flip && std::abs(w_[leave_pos]) < cfg_.pivot_tol) {
        refactor();
        ftran_column(enter);
        t = ratio_test(enter, sigma, leave_pos, leave_upper, own_flip);
        if (t == kInf) {
          res.status = phase1 ? SolveStatus::iteration_limit : SolveStatus::unbounded;
          res.iterations = iter;
          return res;
        }
      }

      apply_step(enter, sigma, t, leave_pos, leave_upper, own_flip);
      ++iter;
      if (t <= 1e-11) {
        if (++stall > cfg_.stall_pivots_before_bland) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
      if (!own_flip && ++etas_since_refactor_ >= cfg_.refactor_interval) refactor();
    }
  }

 private:
  enum : std::int8_t { kAtLower = -1, kAtUpper = -2, kFreeZero = -3 };

  double col_lb(int j) const { return lb_[j]; }
  double col_ub(int j) const { return ub_[j]; }

  void init_bounds(const std::vector<double>& lb_struct, const std::vector<double>& ub_struct) {
    lb_.resize(ncol_);
    ub_.resize(ncol_);
    for (int j = 0; j < n_; ++j) {
      lb_[j] = lb_struct[j];
      ub_[j] = ub_struct[j];
    }
    for (int i = 0; i < m_; ++i) {
      switch (lp_.sense[i]) {
        case Sense::le: lb_[n_ + i] = 0.0; ub_[n_ + i] = kInf; break;
        case Sense::ge: lb_[n_ + i] = -kInf; ub_[n_ + i] = 0.0; break;
        case Sense::eq: lb_[n_ + i] = 0.0; ub_[n_ + i] = 0.0; break;
      }
    }
  }

  void init_basis() {
    where_.assign(ncol_, kAtLower);
    basic_.resize(m_);
    for (int j = 0; j < n_; ++j) {
      if (lb_[j] > -kInf)
        where_[j] = kAtLower;
      else if (ub_[j] < kInf)
        where_[j] = kAtUpper;
      else
        where_[j] = kFreeZero;
    }
    for (int i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      where_[n_ + i] = static_cast<std::int8_t>(0);  // positions stored separately
    }
    pos_of_.assign(ncol_, -1);
    for (int i = 0; i < m_; ++i) pos_of_[basic_[i]] = i;
    xb_.assign(m_, 0.0);
    etas_.clear();
    etas_since_refactor_ = 0;
    refactor();
  }

  double nonbasic_value(int j) const {
    if (pos_of_[j] >= 0) return xb_[pos_of_[j]];
    switch (where_[j]) {
      case kAtLower: return lb_[j];
      case kAtUpper: return ub_[j];
      default: return 0.0;
    }
  }

  void column_of(int j, std::vector<std::pair<std::int32_t, double>>& out) const {
    out.clear();
    if (j < n_) {
      for (std::int32_t e = lp_.a.ptr[j]; e < lp_.a.ptr[j + 1]; ++e)
        out.push_back({lp_.a.idx[e], lp_.a.val[e]});
    } else {
      out.push_back({j - n_, 1.0});
    }
  }

  void refactor() {
    static thread_local std::vector<std::vector<std::pair<std::int32_t, double>>> cols;
    cols.assign(m_, {});
    for (int p = 0; p < m_; ++p) column_of(basic_[p], cols[p]);
    if (!lu_.factor(m_, cols)) {
      // singular basis: fall back to the all-logical start
      for (int j = 0; j < ncol_; ++j)
        if (pos_of_[j] >= 0) {
          pos_of_[j] = -1;
          where_[j] = lb_[j] > -kInf ? kAtLower : (ub_[j] < kInf ? kAtUpper : kFreeZero);
        }
      for (int i = 0; i < m_; ++i) {
        basic_[i] = n_ + i;
        pos_of_[n_ + i] = i;
      }
      cols.assign(m_, {});
      for (int p = 0; p < m_; ++p) column_of(basic_[p], cols[p]);
      lu_.factor(m_, cols);
    }
    etas_.clear();
    etas_since_refactor_ = 0;
    recompute_xb();
  }

  void recompute_xb() {
    std::vector<double>& r = scratch_row_;
    r.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) r[i] = lp_.rhs[i];
    for (int j = 0; j < n_; ++j) {
      if (pos_of_[j] >= 0) continue;
      double v = nonbasic_value(j);
      if (v == 0.0) continue;
      for (std::int32_t e = lp_.a.ptr[j]; e < lp_.a.ptr[j + 1]; ++e)
        r[lp_.a.idx[e]] -= lp_.a.val[e] * v;
    }
    xb_.assign(m_, 0.0);
    lu_.ftran(r, xb_);
  }

  double infeasibility() const {
    double s = 0.0;
    for (int p = 0; p < m_; ++p) {
      int j = basic_[p];
      if (xb_[p] < lb_[j]) s += lb_[j] - xb_[p];
      if (xb_[p] > ub_[j]) s += xb_[p] - ub_[j];
    }
    return s;
  }

  void build_duals(bool phase1) {
    std::vector<double>& cb = scratch_pos_;
    cb.assign(m_, 0.0);
    for (int p = 0; p < m_; ++p) {
      int j = basic_[p];
      if (phase1) {
        if (xb_[p] > ub_[j] + cfg_.feas_tol)
          cb[p] = 1.0;
        else if (xb_[p] < lb_[j] - cfg_.feas_tol)
          cb[p] = -1.0;
      } else {
        cb[p] = j < n_ ? (*cost_)[j] : 0.0;
      }
    }
    // apply eta transposes in reverse creation order, then the base BTRAN
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double dot = 0.0;
      for (auto& [p, wv] : it->w) dot += wv * cb[p];
      cb[it->pos] -= (dot - cb[it->pos]) / it->wp;
    }
    std::vector<double>& z = scratch_pos2_;
    z.assign(m_, 0.0);
    y_.assign(m_, 0.0);
    lu_.btran(cb, z, y_);
  }

  double reduced_cost(int j, bool phase1) const {
    double d = phase1 ? 0.0 : (j < n_ ? (*cost_)[j] : 0.0);
    if (j < n_) {
      for (std::int32_t e = lp_.a.ptr[j]; e < lp_.a.ptr[j + 1]; ++e)
        d -= lp_.a.val[e] * y_[lp_.a.idx[e]];
    } else {
      d -= y_[j - n_];
    }
    return d;
  }

  int pick_entering(bool phase1, bool bland) {
    int best = -1;
    double best_score = cfg_.opt_tol;
    for (int j = 0; j < ncol_; ++j) {
      if (pos_of_[j] >= 0) continue;
      if (ub_[j] - lb_[j] <= 1e-30) continue;  // fixed
      double d = reduced_cost(j, phase1);
      double score = 0.0;
      switch (where_[j]) {
        case kAtLower: score = -d; break;          // improving if d < 0
        case kAtUpper: score = d; break;           // improving if d > 0
        default: score = std::abs(d); break;       // free
      }
      if (score <= cfg_.opt_tol) continue;
      if (bland) return j;
      if (score > best_score * (1 + 1e-12)) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  int entering_direction(int j) const {
    if (where_[j] == kAtUpper) return -1;
    if (where_[j] == kAtLower) return +1;
    double d = reduced_cost(j, infeasibility() > cfg_.feas_tol);
    return d < 0 ? +1 : -1;
  }

  void ftran_column(int j) {
    std::vector<double>& r = scratch_row_;
    r.assign(m_, 0.0);
    if (j < n_) {
      for (std::int32_t e = lp_.a.ptr[j]; e < lp_.a.ptr[j + 1]; ++e)
        r[lp_.a.idx[e]] = lp_.a.val[e];
    } else {
      r[j - n_] = 1.0;
    }
    w_.assign(m_, 0.0);
    lu_.ftran(r, w_);
    for (const auto& eta : etas_) {
      double t = w_[eta.pos] / eta.wp;
      if (t != 0.0) {
        for (auto& [p, wv] : eta.w) w_[p] -= wv * t;
      }
      w_[eta.pos] = t;
    }
  }

  /// First-breakpoint ratio test shared by both phases.
  double ratio_test(int enter, int sigma, int& leave_pos, bool& leave_upper, bool& own_flip) {
    double best_t = kInf;
    leave_pos = -1;
    own_flip = false;
    double own_range = ub_[enter] - lb_[enter];
    if (own_range < kInf) best_t = own_range, own_flip = true;

    double best_mag = 0.0;
    for (int p = 0; p < m_; ++p) {
      double wp = w_[p];
      if (std::abs(wp) < cfg_.pivot_tol) continue;
      double delta = -sigma * wp;  // basic value change per unit step
      int j = basic_[p];
      double target;
      bool hits_upper;
      if (delta > 0) {
        if (xb_[p] < lb_[j]) {
          target = lb_[j];
          hits_upper = false;
        } else if (ub_[j] < kInf) {
          target = ub_[j];
          hits_upper = true;
        } else {
          continue;
        }
      } else {
        if (xb_[p] > ub_[j]) {
          target = ub_[j];
          hits_upper = true;
        } else if (lb_[j] > -kInf) {
          target = lb_[j];
          hits_upper = false;
        } else {
          continue;
        }
      }
      double t = (target - xb_[p]) / delta;
      if (t < 0) t = 0;
      double mag = std::abs(wp);
      if (t < best_t - 1e-12 || (t <= best_t + 1e-12 && !own_flip_at(best_t, leave_pos) &&
                                 mag > best_mag * (1 + 1e-12))) {
        // strictly smaller t, or tie broken toward the larger pivot magnitude
        if (t < best_t) best_t = t;
        leave_pos = p;
        leave_upper = hits_upper;
        best_mag = mag;
        own_flip = false;
      }
    }
    return best_t;
  }

  static bool own_flip_at(double, int leave_pos) { return leave_pos < 0; }

  void apply_step(int enter, int sigma, double t, int leave_pos, bool leave_upper,
                  bool own_flip) {
    if (t != 0.0) {
      for (int p = 0; p < m_; ++p) {
        if (w_[p] != 0.0) xb_[p] -= sigma * t * w_[p];
      }
    }
    double enter_val = nonbasic_value(enter) + sigma * t;
    if (own_flip) {
      where_[enter] = where_[enter] == kAtLower ? kAtUpper : kAtLower;
      return;
    }
    int out = basic_[leave_pos];
    pos_of_[out] = -1;
    where_[out] = leave_upper ? kAtUpper : kAtLower;
    basic_[leave_pos] = enter;
    pos_of_[enter] = leave_pos;
    xb_[leave_pos] = enter_val;

    Eta eta;
    eta.pos = leave_pos;
    eta.wp = w_[leave_pos];
    for (int p = 0; p < m_; ++p)
      if (w_[p] != 0.0) eta.w.push_back({p, w_[p]});
    etas_.push_back(std::move(eta));
  }

  void extract(std::vector<double>& x) const {
    x.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) x[j] = nonbasic_value(j);
  }

  struct Eta {
    int pos;
    double wp;
    std::vector<std::pair<std::int32_t, double>> w;
  };

  const LpData& lp_;
  const SolverConfig& cfg_;
  int m_ = 0, n_ = 0, ncol_ = 0;
  const std::vector<double>* cost_ = nullptr;

  std::vector<double> lb_, ub_;
  std::vector<std::int8_t> where_;
  std::vector<int> basic_;
  std::vector<int> pos_of_;
  std::vector<double> xb_;
  std::vector<double> y_, w_;
  std::vector<double> scratch_row_, scratch_pos_, scratch_pos2_;
  LuFactor lu_;
  std::vector<Eta> etas_;
  int etas_since_refactor_ = 0;
};

}  // namespace dercap::detail
