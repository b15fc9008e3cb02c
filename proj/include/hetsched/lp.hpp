#pragma once

#include <limits>
#include <string>
#include <vector>

namespace hetsched::lp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEq, Equal, GreaterEq };

// Dense LP in the form  min c'x  s.t.  a_i'x (<=|=|>=) b_i,  l <= x <= u.
// Bounds may be +-infinity.
struct LinearProgram {
  struct Row {
    std::vector<double> a;  // one coefficient per variable
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
    std::string name;
  };

  std::vector<double> lower, upper, cost;
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(double lb, double ub, double c);
  // Sparse row: (variable, coefficient) pairs.
  void add_row(const std::vector<std::pair<int, double>>& terms, Relation rel, double rhs,
               std::string name = {});
};

enum class Status { Optimal, Infeasible, Unbounded, Singular };

enum class VarState { Basic, AtLower, AtUpper, FreeZero };

struct Solution {
  Status status = Status::Singular;
  std::vector<double> x;          // structural values (empty unless Optimal)
  std::vector<VarState> state;    // per structural variable
  double objective = 0.0;
  int iterations = 0;             // total pivots + bound flips
  int phase1_iterations = 0;
};

struct Settings {
  double feasibility_tol = 1e-9;  // row residual and phase-1 target, scaled by |b|
  double pivot_tol = 1e-10;       // entries below this never pivot
  double reduced_cost_tol = 1e-9; // optimality margin, scaled by |c|
  int max_iterations = 0;         // 0: automatic (50 * (rows + vars) + 10000)
};

// Two-phase bounded-variable primal simplex. Dantzig pricing, falling back to
// Bland's rule after a run of degenerate steps so it cannot cycle. The returned
// point is always a basic solution of the row system.
Solution solve(const LinearProgram& lp, const Settings& settings = {});

// Crossover: turns a feasible point into a basic feasible point whose objective
// is no worse, by walking null-space directions of the active constraints until
// no degree of freedom remains. Throws std::invalid_argument when `point` is not
// feasible within tolerance.
Solution to_basic(const LinearProgram& lp, const std::vector<double>& point,
                  const Settings& settings = {});

// Largest row/bound violation of a candidate point.
double max_violation(const LinearProgram& lp, const std::vector<double>& point);

// Deterministic LP-format text dump (minimize form), for debugging and for
// cross-checking against external solvers.
std::string write_lp_text(const LinearProgram& lp);

}  // namespace hetsched::lp
