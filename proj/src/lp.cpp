#include "hetsched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hetsched::lp {

int LinearProgram::add_variable(double lb, double ub, double c) {
  if (lb > ub) throw std::invalid_argument("variable lower bound exceeds upper bound");
  lower.push_back(lb);
  upper.push_back(ub);
  cost.push_back(c);
  return num_vars() - 1;
}

void LinearProgram::add_row(const std::vector<std::pair<int, double>>& terms, Relation rel,
                            double rhs, std::string name) {
  Row row;
  row.a.assign(cost.size(), 0.0);
  for (const auto& [var, coeff] : terms) {
    if (var < 0 || var >= num_vars()) throw std::out_of_range("row references unknown variable");
    row.a[var] += coeff;
  }
  row.rel = rel;
  row.rhs = rhs;
  row.name = std::move(name);
  rows.push_back(std::move(row));
}

double max_violation(const LinearProgram& lp, const std::vector<double>& point) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.lower[j] > -kInf) worst = std::max(worst, lp.lower[j] - point[j]);
    if (lp.upper[j] < kInf) worst = std::max(worst, point[j] - lp.upper[j]);
  }
  for (const auto& row : lp.rows) {
    double ax = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) ax += row.a[j] * point[j];
    switch (row.rel) {
      case Relation::LessEq: worst = std::max(worst, ax - row.rhs); break;
      case Relation::GreaterEq: worst = std::max(worst, row.rhs - ax); break;
      case Relation::Equal: worst = std::max(worst, std::abs(ax - row.rhs)); break;
    }
  }
  return worst;
}

namespace {

enum : unsigned char { kAtLower, kAtUpper, kFree, kIsBasic };

// Dense two-phase tableau simplex over columns = structurals, then one logical
// per row (a'x + y = b with y's bounds encoding the relation), then artificials
// for rows whose logical cannot absorb the initial residual.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const Settings& s) : lp_(lp), set_(s) {}

  Solution run() {
    build();
    Solution out;
    out.iterations = 0;
    if (!artificials_.empty()) {
      Outcome ph1 = iterate(phase1_cost_, /*phase1=*/true);
      out.phase1_iterations = iterations_;
      if (ph1 == Outcome::Breakdown) return finish(out, Status::Singular);
      recompute_values();
      double infeas = 0.0;
      for (int col : artificials_) infeas += std::abs(val_[col]);
      if (infeas > feas_tol_) return finish(out, Status::Infeasible);
      expel_artificials();
    }
    Outcome ph2 = iterate(cost_, /*phase1=*/false);
    out.iterations = iterations_;
    if (ph2 == Outcome::Breakdown) return finish(out, Status::Singular);
    if (ph2 == Outcome::Unbounded) return finish(out, Status::Unbounded);
    polish();
    if (!polished_ok_) return finish(out, Status::Singular);
    out.x.assign(val_.begin(), val_.begin() + ns_);
    out.state.resize(ns_);
    for (int j = 0; j < ns_; ++j) {
      switch (state_[j]) {
        case kIsBasic: out.state[j] = VarState::Basic; break;
        case kAtLower: out.state[j] = VarState::AtLower; break;
        case kAtUpper: out.state[j] = VarState::AtUpper; break;
        default: out.state[j] = VarState::FreeZero; break;
      }
    }
    out.objective = 0.0;
    for (int j = 0; j < ns_; ++j) out.objective += lp_.cost[j] * val_[j];
    return finish(out, Status::Optimal);
  }

 private:
  enum class Outcome { OptimalPhase, Unbounded, Breakdown };

  const LinearProgram& lp_;
  Settings set_;
  int ns_ = 0, m_ = 0, ncols_ = 0;
  std::vector<double> tab_;   // m x ncols
  std::vector<double> beta_;  // B^{-1} b
  std::vector<double> lb_, ub_, cost_, phase1_cost_, val_;
  std::vector<unsigned char> state_;
  std::vector<int> basis_;
  std::vector<int> artificials_;
  double feas_tol_ = 0, dual_tol_ = 0, pivot_tol_ = 0;
  int iterations_ = 0, max_iter_ = 0, degen_streak_ = 0;
  bool bland_ = false, polished_ok_ = true;

  double* row(int i) { return tab_.data() + static_cast<size_t>(i) * ncols_; }

  Solution finish(Solution out, Status st) {
    out.status = st;
    out.iterations = iterations_;
    return out;
  }

  void build() {
    ns_ = lp_.num_vars();
    m_ = lp_.num_rows();
    for (int j = 0; j < ns_; ++j)
      if (lp_.lower[j] > lp_.upper[j]) throw std::invalid_argument("inconsistent variable bounds");

    double bscale = 1.0, cscale = 1.0;
    for (const auto& r : lp_.rows) bscale = std::max(bscale, std::abs(r.rhs));
    for (double c : lp_.cost) cscale = std::max(cscale, std::abs(c));
    feas_tol_ = set_.feasibility_tol * bscale;
    dual_tol_ = set_.reduced_cost_tol * cscale;
    pivot_tol_ = set_.pivot_tol;

    // Structural states and values.
    lb_ = lp_.lower;
    ub_ = lp_.upper;
    cost_ = lp_.cost;
    state_.assign(ns_, kAtLower);
    val_.assign(ns_, 0.0);
    for (int j = 0; j < ns_; ++j) {
      if (lb_[j] > -kInf) {
        state_[j] = kAtLower;
        val_[j] = lb_[j];
      } else if (ub_[j] < kInf) {
        state_[j] = kAtUpper;
        val_[j] = ub_[j];
      } else {
        state_[j] = kFree;
        val_[j] = 0.0;
      }
    }

    // Logical bounds per relation, and the residual each row must absorb.
    std::vector<double> resid(m_);
    std::vector<int> art_row;
    for (int i = 0; i < m_; ++i) {
      const auto& r = lp_.rows[i];
      double ax = 0.0;
      for (int j = 0; j < ns_; ++j) ax += r.a[j] * val_[j];
      double y = r.rhs - ax;
      resid[i] = y;
      bool fits = false;
      switch (r.rel) {
        case Relation::LessEq: fits = y >= 0.0; break;
        case Relation::GreaterEq: fits = y <= 0.0; break;
        case Relation::Equal: fits = y == 0.0; break;
      }
      if (!fits) art_row.push_back(i);
    }

    ncols_ = ns_ + m_ + static_cast<int>(art_row.size());
    tab_.assign(static_cast<size_t>(m_) * ncols_, 0.0);
    beta_.resize(m_);
    lb_.resize(ncols_);
    ub_.resize(ncols_);
    cost_.resize(ncols_, 0.0);
    val_.resize(ncols_, 0.0);
    state_.resize(ncols_, kAtLower);
    basis_.assign(m_, -1);

    for (int i = 0; i < m_; ++i) {
      const auto& r = lp_.rows[i];
      double* t = row(i);
      for (int j = 0; j < ns_; ++j) t[j] = r.a[j];
      t[ns_ + i] = 1.0;
      beta_[i] = r.rhs;
      int logical = ns_ + i;
      switch (r.rel) {
        case Relation::LessEq: lb_[logical] = 0.0; ub_[logical] = kInf; break;
        case Relation::GreaterEq: lb_[logical] = -kInf; ub_[logical] = 0.0; break;
        case Relation::Equal: lb_[logical] = 0.0; ub_[logical] = 0.0; break;
      }
    }

    phase1_cost_.assign(ncols_, 0.0);
    int art_col = ns_ + m_;
    for (int i : art_row) {
      // Pricing and value recovery assume every basic column is a +1 unit
      // column, so negate the row instead of giving the artificial a -1.
      if (resid[i] < 0.0) {
        double* t = row(i);
        for (int j = 0; j < ns_ + m_; ++j) t[j] = -t[j];
        beta_[i] = -beta_[i];
      }
      row(i)[art_col] = 1.0;
      lb_[art_col] = 0.0;
      ub_[art_col] = kInf;
      phase1_cost_[art_col] = 1.0;
      val_[art_col] = std::abs(resid[i]);
      state_[art_col] = kIsBasic;
      basis_[i] = art_col;
      // The logical sits at the bound nearest the residual it cannot absorb.
      int logical = ns_ + i;
      state_[logical] = (lp_.rows[i].rel == Relation::GreaterEq) ? kAtUpper : kAtLower;
      val_[logical] = 0.0;
      artificials_.push_back(art_col);
      ++art_col;
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= 0) continue;
      int logical = ns_ + i;
      basis_[i] = logical;
      state_[logical] = kIsBasic;
      val_[logical] = resid[i];
    }

    max_iter_ = set_.max_iterations > 0 ? set_.max_iterations : 50 * (m_ + ncols_) + 10000;
    iterations_ = 0;
  }

  // Recompute basic values from beta and the nonbasic bounds, killing drift.
  void recompute_values() {
    std::vector<double> v(beta_);
    for (int j = 0; j < ncols_; ++j) {
      if (state_[j] == kIsBasic || val_[j] == 0.0) continue;
      double x = val_[j];
      for (int i = 0; i < m_; ++i) {
        double a = row(i)[j];
        if (a != 0.0) v[i] -= a * x;
      }
    }
    for (int i = 0; i < m_; ++i) val_[basis_[i]] = v[i];
  }

  // Reduced costs for the given cost vector: d = c - y'T with y_i = c[basis_i].
  void reduced_costs(const std::vector<double>& c, std::vector<double>& d) {
    d = c;
    for (int i = 0; i < m_; ++i) {
      double y = c[basis_[i]];
      if (y == 0.0) continue;
      const double* t = row(i);
      for (int j = 0; j < ncols_; ++j) d[j] -= y * t[j];
    }
  }

  Outcome iterate(const std::vector<double>& c, bool phase1) {
    std::vector<double> d;
    while (true) {
      if (iterations_ >= max_iter_) return Outcome::Breakdown;
      if ((iterations_ & 63) == 0) recompute_values();
      reduced_costs(c, d);

      int enter = -1;
      double best_score = dual_tol_;
      int dir = +1;
      for (int j = 0; j < ncols_; ++j) {
        if (state_[j] == kIsBasic || lb_[j] == ub_[j]) continue;
        double score = 0.0;
        int jdir = 0;
        if (state_[j] == kAtLower && d[j] < -dual_tol_) {
          score = -d[j];
          jdir = +1;
        } else if (state_[j] == kAtUpper && d[j] > dual_tol_) {
          score = d[j];
          jdir = -1;
        } else if (state_[j] == kFree && std::abs(d[j]) > dual_tol_) {
          score = std::abs(d[j]);
          jdir = d[j] < 0 ? +1 : -1;
        } else {
          continue;
        }
        if (bland_) {
          enter = j;
          dir = jdir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          enter = j;
          dir = jdir;
        }
      }
      if (enter < 0) return Outcome::OptimalPhase;

      // Ratio test: the entering variable moves by t >= 0 in direction dir.
      double span = (lb_[enter] > -kInf && ub_[enter] < kInf) ? ub_[enter] - lb_[enter] : kInf;
      double best_t = kInf;
      int leave = -1, hit = kAtLower;
      double best_apiv = 0.0;
      const double tie = 1e-9;
      for (int i = 0; i < m_; ++i) {
        double a = row(i)[enter];
        if (std::abs(a) <= pivot_tol_) continue;
        double rate = -static_cast<double>(dir) * a;  // d val[basis_i] / dt
        int bc = basis_[i];
        double v = val_[bc];
        double lim;
        int h;
        if (rate > 0.0) {
          if (ub_[bc] == kInf) continue;
          lim = (ub_[bc] - v) / rate;
          h = kAtUpper;
        } else {
          if (lb_[bc] == -kInf) continue;
          lim = (v - lb_[bc]) / (-rate);
          h = kAtLower;
        }
        if (lim < 0.0) lim = 0.0;
        bool better;
        if (leave < 0) {
          better = lim < best_t;
        } else if (bland_) {
          better = lim < best_t - tie || (lim <= best_t + tie && bc < basis_[leave]);
        } else {
          better = lim < best_t - tie ||
                   (lim <= best_t + tie &&
                    (std::abs(a) > best_apiv + 1e-12 ||
                     (std::abs(std::abs(a) - best_apiv) <= 1e-12 && bc < basis_[leave])));
        }
        if (better) {
          best_t = std::min(best_t, std::max(lim, 0.0));
          leave = i;
          hit = h;
          best_apiv = std::abs(a);
        }
      }

      if (span <= best_t) {
        if (span == kInf) {
          if (phase1) return Outcome::Breakdown;  // phase 1 is bounded below; cannot happen
          return Outcome::Unbounded;
        }
        // Bound flip, no basis change.
        apply_move(enter, dir, span);
        val_[enter] = (dir > 0) ? ub_[enter] : lb_[enter];
        state_[enter] = (dir > 0) ? kAtUpper : kAtLower;
        note_step(span);
        ++iterations_;
        continue;
      }
      if (best_t == kInf) {
        if (phase1) return Outcome::Breakdown;
        return Outcome::Unbounded;
      }

      apply_move(enter, dir, best_t);
      int out_col = basis_[leave];
      val_[out_col] = (hit == kAtUpper) ? ub_[out_col] : lb_[out_col];
      state_[out_col] = static_cast<unsigned char>(hit);
      state_[enter] = kIsBasic;
      basis_[leave] = enter;
      pivot(leave, enter);
      note_step(best_t);
      ++iterations_;
    }
  }

  void apply_move(int enter, int dir, double t) {
    if (t == 0.0) return;
    val_[enter] += dir * t;
    for (int i = 0; i < m_; ++i) {
      double a = row(i)[enter];
      if (a != 0.0) val_[basis_[i]] -= dir * a * t;
    }
  }

  void note_step(double t) {
    if (t <= 1e-12) {
      if (++degen_streak_ >= 25) bland_ = true;
    } else {
      degen_streak_ = 0;
      if (t > 1e-9) bland_ = false;
    }
  }

  void pivot(int r, int q) {
    double* pr = row(r);
    double piv = pr[q];
    double inv = 1.0 / piv;
    for (int j = 0; j < ncols_; ++j) pr[j] *= inv;
    pr[q] = 1.0;
    beta_[r] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double f = row(i)[q];
      if (f == 0.0) continue;
      double* pi = row(i);
      for (int j = 0; j < ncols_; ++j) pi[j] -= f * pr[j];
      pi[q] = 0.0;
      beta_[i] -= f * beta_[r];
    }
  }

  // Swap any basic artificial for a real column when possible; fix all
  // artificials at zero so phase 2 cannot revive them.
  void expel_artificials() {
    for (int i = 0; i < m_; ++i) {
      int bc = basis_[i];
      if (bc < ns_ + m_) continue;  // not artificial
      int pick = -1;
      double best = pivot_tol_;
      const double* t = row(i);
      for (int j = 0; j < ns_ + m_; ++j) {
        if (state_[j] == kIsBasic) continue;
        double a = std::abs(t[j]);
        if (a > best) {
          best = a;
          pick = j;
        }
      }
      if (pick < 0) continue;  // redundant row; the artificial stays pinned at 0
      val_[bc] = 0.0;
      state_[bc] = kAtLower;
      state_[pick] = kIsBasic;
      basis_[i] = pick;
      pivot(i, pick);
    }
    for (int col : artificials_) {
      lb_[col] = 0.0;
      ub_[col] = 0.0;
      if (state_[col] != kIsBasic) val_[col] = 0.0;
    }
  }

  // Re-solve B x_B = b - N x_N against the original data to clear the drift a
  // long pivot sequence leaves in the tableau.
  void polish() {
    recompute_values();
    int n = m_;
    std::vector<double> B(static_cast<size_t>(n) * n, 0.0);
    std::vector<double> rhs(n);
    for (int i = 0; i < m_; ++i) rhs[i] = lp_.rows[i].rhs;
    // Artificial columns never reach this lambda: basic ones get an identity
    // column below and nonbasic ones are pinned at zero.
    auto original_column = [&](int col, std::vector<double>& out) {
      out.assign(m_, 0.0);
      if (col < ns_) {
        for (int i = 0; i < m_; ++i) out[i] = lp_.rows[i].a[col];
      } else {
        out[col - ns_] = 1.0;
      }
    };
    std::vector<double> colbuf;
    for (int k = 0; k < n; ++k) {
      int col = basis_[k];
      if (col >= ns_ + m_) {
        // A basic artificial marks a redundant row; its value is ~0. Leave an
        // identity column so the factorization stays square.
        B[static_cast<size_t>(k) * n + k] = 1.0;
        continue;
      }
      original_column(col, colbuf);
      for (int i = 0; i < m_; ++i) B[static_cast<size_t>(i) * n + k] = colbuf[i];
    }
    for (int j = 0; j < ncols_; ++j) {
      if (state_[j] == kIsBasic || val_[j] == 0.0) continue;
      if (j >= ns_ + m_) continue;  // nonbasic artificials are pinned at 0
      original_column(j, colbuf);
      for (int i = 0; i < m_; ++i) rhs[i] -= colbuf[i] * val_[j];
    }
    // LU with partial pivoting.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      int p = k;
      double best = std::abs(B[static_cast<size_t>(perm[k]) * n + k]);
      for (int i = k + 1; i < n; ++i) {
        double a = std::abs(B[static_cast<size_t>(perm[i]) * n + k]);
        if (a > best) {
          best = a;
          p = i;
        }
      }
      if (best < 1e-13) {
        ok = false;
        break;
      }
      std::swap(perm[k], perm[p]);
      double pivv = B[static_cast<size_t>(perm[k]) * n + k];
      for (int i = k + 1; i < n; ++i) {
        double f = B[static_cast<size_t>(perm[i]) * n + k] / pivv;
        B[static_cast<size_t>(perm[i]) * n + k] = f;
        if (f == 0.0) continue;
        for (int j = k + 1; j < n; ++j)
          B[static_cast<size_t>(perm[i]) * n + j] -= f * B[static_cast<size_t>(perm[k]) * n + j];
      }
    }
    if (ok) {
      std::vector<double> z(n);
      for (int i = 0; i < n; ++i) {
        double s = rhs[perm[i]];
        for (int j = 0; j < i; ++j) s -= B[static_cast<size_t>(perm[i]) * n + j] * z[j];
        z[i] = s;
      }
      for (int i = n - 1; i >= 0; --i) {
        double s = z[i];
        for (int j = i + 1; j < n; ++j) s -= B[static_cast<size_t>(perm[i]) * n + j] * z[j];
        z[i] = s / B[static_cast<size_t>(perm[i]) * n + i];
      }
      for (int k = 0; k < n; ++k) {
        if (basis_[k] >= ns_ + m_) continue;
        val_[basis_[k]] = z[k];
      }
    }
    // Accept the polished point only if it actually satisfies the rows.
    std::vector<double> x(val_.begin(), val_.begin() + ns_);
    double viol = max_violation(lp_, x);
    polished_ok_ = viol <= std::max(1e-6, 1000.0 * feas_tol_);
  }
};

}  // namespace

Solution solve(const LinearProgram& lp, const Settings& settings) {
  Simplex s(lp, settings);
  return s.run();
}

Solution to_basic(const LinearProgram& lp, const std::vector<double>& point,
                  const Settings& settings) {
  int ns = lp.num_vars();
  int m = lp.num_rows();
  if (static_cast<int>(point.size()) != ns)
    throw std::invalid_argument("point dimension does not match the LP");
  double bscale = 1.0;
  for (const auto& r : lp.rows) bscale = std::max(bscale, std::abs(r.rhs));
  if (max_violation(lp, point) > 1e-7 * bscale)
    throw std::invalid_argument("to_basic: input point is not feasible");

  std::vector<double> x = point;
  for (int j = 0; j < ns; ++j) x[j] = std::min(std::max(x[j], lp.lower[j]), lp.upper[j]);

  const double act_tol = settings.feasibility_tol * bscale;
  const double in_tol = 1e-9;
  double cscale = 1.0;
  for (double c : lp.cost) cscale = std::max(cscale, std::abs(c));
  const double g_tol = 1e-12 * cscale;

  auto slack = [&](int i) {
    double ax = 0.0;
    for (int j = 0; j < ns; ++j) ax += lp.rows[i].a[j] * x[j];
    switch (lp.rows[i].rel) {
      case Relation::LessEq: return lp.rows[i].rhs - ax;
      case Relation::GreaterEq: return ax - lp.rows[i].rhs;
      case Relation::Equal: return -std::abs(ax - lp.rows[i].rhs);
    }
    return 0.0;
  };

  int guard = 4 * (ns + m) + 8;
  while (guard-- > 0) {
    std::vector<int> active, inactive, interior;
    for (int i = 0; i < m; ++i) {
      if (lp.rows[i].rel == Relation::Equal || slack(i) <= act_tol)
        active.push_back(i);
      else
        inactive.push_back(i);
    }
    for (int j = 0; j < ns; ++j)
      if (x[j] > lp.lower[j] + in_tol && x[j] < lp.upper[j] - in_tol) interior.push_back(j);
    if (interior.empty()) break;

    // Null direction of the active rows restricted to interior variables.
    int rows_n = static_cast<int>(active.size());
    int cols_n = static_cast<int>(interior.size());
    std::vector<double> M(static_cast<size_t>(rows_n) * cols_n);
    for (int r = 0; r < rows_n; ++r)
      for (int c = 0; c < cols_n; ++c)
        M[static_cast<size_t>(r) * cols_n + c] = lp.rows[active[r]].a[interior[c]];
    std::vector<int> pivot_col_of_row;
    std::vector<char> is_pivot_col(cols_n, 0);
    int rr = 0;
    for (int c = 0; c < cols_n && rr < rows_n; ++c) {
      int p = -1;
      double best = 1e-11;
      for (int r = rr; r < rows_n; ++r) {
        double a = std::abs(M[static_cast<size_t>(r) * cols_n + c]);
        if (a > best) {
          best = a;
          p = r;
        }
      }
      if (p < 0) continue;
      for (int j = 0; j < cols_n; ++j)
        std::swap(M[static_cast<size_t>(p) * cols_n + j], M[static_cast<size_t>(rr) * cols_n + j]);
      double pv = M[static_cast<size_t>(rr) * cols_n + c];
      for (int r = 0; r < rows_n; ++r) {
        if (r == rr) continue;
        double f = M[static_cast<size_t>(r) * cols_n + c] / pv;
        if (f == 0.0) continue;
        for (int j = 0; j < cols_n; ++j)
          M[static_cast<size_t>(r) * cols_n + j] -= f * M[static_cast<size_t>(rr) * cols_n + j];
        M[static_cast<size_t>(r) * cols_n + c] = 0.0;
      }
      pivot_col_of_row.push_back(c);
      is_pivot_col[c] = 1;
      ++rr;
    }
    int free_col = -1;
    for (int c = 0; c < cols_n; ++c)
      if (!is_pivot_col[c]) {
        free_col = c;
        break;
      }
    if (free_col < 0) break;  // columns independent: the point is a vertex

    std::vector<double> z(ns, 0.0);
    z[interior[free_col]] = 1.0;
    for (int r = rr - 1; r >= 0; --r) {
      int pc = pivot_col_of_row[r];
      double s = M[static_cast<size_t>(r) * cols_n + free_col] * 1.0;
      z[interior[pc]] = -s / M[static_cast<size_t>(r) * cols_n + pc];
    }

    double g = 0.0;
    for (int j = 0; j < ns; ++j) g += lp.cost[j] * z[j];
    if (g > g_tol)
      for (double& v : z) v = -v;

    auto max_step = [&]() {
      double t = kInf;
      for (int j : interior) {
        if (z[j] > in_tol && lp.upper[j] < kInf) t = std::min(t, (lp.upper[j] - x[j]) / z[j]);
        if (z[j] < -in_tol && lp.lower[j] > -kInf) t = std::min(t, (x[j] - lp.lower[j]) / (-z[j]));
      }
      for (int i : inactive) {
        double rate = 0.0;
        for (int j = 0; j < ns; ++j) rate += lp.rows[i].a[j] * z[j];
        double s = slack(i);
        if (lp.rows[i].rel == Relation::LessEq && rate > in_tol) t = std::min(t, s / rate);
        if (lp.rows[i].rel == Relation::GreaterEq && rate < -in_tol) t = std::min(t, s / (-rate));
      }
      return t;
    };

    double t = max_step();
    if (t == kInf) {
      double g2 = 0.0;
      for (int j = 0; j < ns; ++j) g2 += lp.cost[j] * z[j];
      if (g2 < -g_tol) throw std::runtime_error("to_basic: objective unbounded along crossover ray");
      for (double& v : z) v = -v;
      t = max_step();
      if (t == kInf)
        throw std::runtime_error("to_basic: feasible set contains a line, no vertex exists");
    }
    for (int j = 0; j < ns; ++j) x[j] += t * z[j];
    for (int j = 0; j < ns; ++j) x[j] = std::min(std::max(x[j], lp.lower[j]), lp.upper[j]);
  }
  if (guard <= 0) throw std::runtime_error("to_basic: crossover failed to converge");

  Solution out;
  out.status = Status::Optimal;
  out.x = x;
  out.state.resize(ns);
  for (int j = 0; j < ns; ++j) {
    if (lp.lower[j] > -kInf && std::abs(x[j] - lp.lower[j]) <= in_tol)
      out.state[j] = VarState::AtLower;
    else if (lp.upper[j] < kInf && std::abs(x[j] - lp.upper[j]) <= in_tol)
      out.state[j] = VarState::AtUpper;
    else if (lp.lower[j] == -kInf && lp.upper[j] == kInf && std::abs(x[j]) <= in_tol)
      out.state[j] = VarState::FreeZero;
    else
      out.state[j] = VarState::Basic;
  }
  out.objective = 0.0;
  for (int j = 0; j < ns; ++j) out.objective += lp.cost[j] * x[j];
  return out;
}

std::string write_lp_text(const LinearProgram& lp) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string s = "Minimize\n obj:";
  bool any = false;
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.cost[j] == 0.0) continue;
    double c = lp.cost[j];
    s += (c < 0 ? " - " : (any ? " + " : " ")) + num(std::abs(c)) + " x" + std::to_string(j);
    any = true;
  }
  if (!any) s += " 0 x0";
  s += "\nSubject To\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    const auto& r = lp.rows[i];
    s += " " + (r.name.empty() ? "r" + std::to_string(i) : r.name) + ":";
    bool first = true;
    for (int j = 0; j < lp.num_vars(); ++j) {
      if (r.a[j] == 0.0) continue;
      double c = r.a[j];
      s += (c < 0 ? " - " : (first ? " " : " + ")) + num(std::abs(c)) + " x" + std::to_string(j);
      first = false;
    }
    if (first) s += " 0 x0";
    switch (r.rel) {
      case Relation::LessEq: s += " <= "; break;
      case Relation::GreaterEq: s += " >= "; break;
      case Relation::Equal: s += " = "; break;
    }
    s += num(r.rhs) + "\n";
  }
  s += "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    std::string name = "x" + std::to_string(j);
    double lo = lp.lower[j], hi = lp.upper[j];
    if (lo == -kInf && hi == kInf)
      s += " " + name + " free\n";
    else if (lo == -kInf)
      s += " " + name + " <= " + num(hi) + "\n";
    else if (hi == kInf)
      s += " " + name + " >= " + num(lo) + "\n";
    else
      s += " " + num(lo) + " <= " + name + " <= " + num(hi) + "\n";
  }
  s += "End\n";
  return s;
}

}  // namespace hetsched::lp
