#include "hetsched/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetsched {

WorkloadPartition::WorkloadPartition(MajorGrid grid, const Platform& platform,
                                     const std::vector<JobInstance>& jobs)
    : grid_(std::move(grid)), jobs_(static_cast<int>(jobs.size())) {
  for (const auto& pt : platform.types) {
    offset_.push_back(stride_);
    levels_.push_back(static_cast<int>(pt.speeds.size()));
    speeds_.push_back(pt.speeds);
    stride_ += static_cast<int>(pt.speeds.size());
  }
  omega_.assign(static_cast<size_t>(grid_.intervals()) * jobs_ * stride_, 0.0);
  x_.assign(static_cast<size_t>(grid_.intervals() + 1) * jobs_, 0.0);
  for (const auto& j : jobs) {
    win_begin_.push_back(grid_.index_of(j.release));
    win_end_.push_back(grid_.index_of(j.deadline));
    work_.push_back(j.work);
  }
}

double WorkloadPartition::type_share(int interval, int job, int type) const {
  double s = 0.0;
  for (int q = 0; q < levels_[type]; ++q) s += omega(interval, job, type, q);
  return s;
}

double WorkloadPartition::busy_share(int interval, int job) const {
  double s = 0.0;
  for (int r = 0; r < num_types(); ++r) s += type_share(interval, job, r);
  return s;
}

double WorkloadPartition::executed(int interval, int job) const {
  double h = grid_.length_seconds(interval);
  double w = 0.0;
  for (int r = 0; r < num_types(); ++r)
    for (int q = 0; q < levels_[r]; ++q) w += omega(interval, job, r, q) * speeds_[r][q];
  return w * h;
}

std::vector<JobShare> WorkloadPartition::shares(int interval, double tol) const {
  std::vector<JobShare> out;
  for (int i = 0; i < jobs_; ++i) {
    JobShare s;
    s.job = i;
    for (int r = 0; r < num_types() && r < 2; ++r) s.share[r] = type_share(interval, i, r);
    if (s.share[0] > tol || s.share[1] > tol) out.push_back(s);
  }
  return out;
}

PartitionEnergy partition_energy(const WorkloadPartition& p, const Platform& platform) {
  PartitionEnergy e;
  double horizon = p.grid().time_seconds(p.grid().intervals());
  for (int mu = 0; mu < p.grid().intervals(); ++mu) {
    double h = p.grid().length_seconds(mu);
    for (int i = 0; i < p.num_jobs(); ++i) {
      for (int r = 0; r < p.num_types(); ++r) {
        const auto& pt = platform.types[r];
        for (int q = 0; q < p.levels(r); ++q) {
          double w = p.omega(mu, i, r, q);
          if (w == 0.0) continue;
          double busy = h * w;
          double power = eval_power(platform, r, p.speed(r, q));
          e.active_mj += busy * power;
          e.objective_mj += busy * (power - pt.p_idle);
          if (r < 2) e.busy_seconds[r] += busy;
        }
      }
    }
  }
  for (int r = 0; r < p.num_types(); ++r) {
    const auto& pt = platform.types[r];
    double busy = r < 2 ? e.busy_seconds[r] : 0.0;
    e.idle_mj += pt.p_idle * (pt.cores * horizon - busy);
  }
  e.total_mj = e.active_mj + e.idle_mj;
  return e;
}

LpDvfsProgram build_lp_dvfs(const std::vector<JobInstance>& jobs, const MajorGrid& grid,
                            const Platform& platform, bool feasibility_only) {
  LpDvfsProgram prog;
  prog.intervals = grid.intervals();
  prog.jobs = static_cast<int>(jobs.size());
  for (const auto& pt : platform.types) {
    if (pt.speeds.empty())
      throw std::invalid_argument("type " + pt.name + " has no speed levels");
    prog.offset.push_back(prog.stride);
    prog.stride += static_cast<int>(pt.speeds.size());
  }
  const int types = platform.type_count();
  prog.omega_var.assign(static_cast<size_t>(prog.intervals) * prog.jobs * prog.stride, -1);
  prog.x_var.assign(static_cast<size_t>(prog.intervals + 1) * prog.jobs, -1);

  std::vector<int> wb(jobs.size()), we(jobs.size());
  for (size_t i = 0; i < jobs.size(); ++i) {
    wb[i] = grid.index_of(jobs[i].release);
    we[i] = grid.index_of(jobs[i].deadline);
  }

  auto& lp = prog.lp;
  // Remaining-work samples at interior window boundaries; the endpoints are the
  // constants x-bar and 0.
  for (int i = 0; i < prog.jobs; ++i)
    for (int mu = wb[i] + 1; mu < we[i]; ++mu)
      prog.x_var[static_cast<size_t>(mu) * prog.jobs + i] =
          lp.add_variable(0.0, jobs[i].work, 0.0);
  // Time fractions.
  for (int mu = 0; mu < prog.intervals; ++mu) {
    double h = grid.length_seconds(mu);
    for (int i = 0; i < prog.jobs; ++i) {
      if (mu < wb[i] || mu >= we[i]) continue;
      for (int r = 0; r < types; ++r) {
        const auto& pt = platform.types[r];
        if (pt.cores <= 0) continue;
        for (int q = 0; q < static_cast<int>(pt.speeds.size()); ++q) {
          double cost = 0.0;
          if (!feasibility_only)
            cost = h * (eval_power(platform, r, pt.speeds[q]) - pt.p_idle);
          prog.omega_var[(static_cast<size_t>(mu) * prog.jobs + i) * prog.stride +
                         prog.offset[r] + q] = lp.add_variable(0.0, 1.0, cost);
        }
      }
    }
  }

  auto ov = [&](int mu, int i, int r, int q) {
    return prog.omega_var[(static_cast<size_t>(mu) * prog.jobs + i) * prog.stride +
                          prog.offset[r] + q];
  };
  auto xv = [&](int mu, int i) { return prog.x_var[static_cast<size_t>(mu) * prog.jobs + i]; };

  // Work balance along each window: x[mu+1] >= x[mu] - h * sum s*omega.
  for (int i = 0; i < prog.jobs; ++i) {
    for (int mu = wb[i]; mu < we[i]; ++mu) {
      double h = grid.length_seconds(mu);
      std::vector<std::pair<int, double>> terms;
      double rhs = 0.0;
      if (mu == wb[i])
        rhs += jobs[i].work;  // x[wb] is the constant x-bar
      else
        terms.push_back({xv(mu, i), -1.0});
      if (mu + 1 < we[i]) terms.push_back({xv(mu + 1, i), 1.0});
      for (int r = 0; r < types; ++r) {
        const auto& pt = platform.types[r];
        if (pt.cores <= 0) continue;
        for (int q = 0; q < static_cast<int>(pt.speeds.size()); ++q)
          terms.push_back({ov(mu, i, r, q), h * pt.speeds[q]});
      }
      lp.add_row(terms, lp::Relation::GreaterEq, rhs,
                 "bal_j" + std::to_string(i) + "_m" + std::to_string(mu));
    }
  }
  // A job cannot use more than the whole interval.
  for (int mu = 0; mu < prog.intervals; ++mu) {
    for (int i = 0; i < prog.jobs; ++i) {
      if (mu < wb[i] || mu >= we[i]) continue;
      std::vector<std::pair<int, double>> terms;
      for (int r = 0; r < types; ++r) {
        if (platform.types[r].cores <= 0) continue;
        for (int q = 0; q < static_cast<int>(platform.types[r].speeds.size()); ++q)
          terms.push_back({ov(mu, i, r, q), 1.0});
      }
      if (!terms.empty())
        lp.add_row(terms, lp::Relation::LessEq, 1.0,
                   "busy_j" + std::to_string(i) + "_m" + std::to_string(mu));
    }
  }
  // Per-type core budget.
  for (int mu = 0; mu < prog.intervals; ++mu) {
    for (int r = 0; r < types; ++r) {
      const auto& pt = platform.types[r];
      if (pt.cores <= 0) continue;
      std::vector<std::pair<int, double>> terms;
      for (int i = 0; i < prog.jobs; ++i) {
        if (mu < wb[i] || mu >= we[i]) continue;
        for (int q = 0; q < static_cast<int>(pt.speeds.size()); ++q)
          terms.push_back({ov(mu, i, r, q), 1.0});
      }
      if (!terms.empty())
        lp.add_row(terms, lp::Relation::LessEq, static_cast<double>(pt.cores),
                   "cores_t" + std::to_string(r) + "_m" + std::to_string(mu));
    }
  }
  return prog;
}

void LpDvfsProgram::extract(const lp::Solution& sol, WorkloadPartition& out) const {
  for (int mu = 0; mu < intervals; ++mu)
    for (int i = 0; i < jobs; ++i)
      for (size_t k = 0; k < offset.size(); ++k) {
        int r = static_cast<int>(k);
        for (int q = 0; q < out.levels(r); ++q) {
          int v = omega_var[(static_cast<size_t>(mu) * jobs + i) * stride + offset[k] + q];
          if (v < 0) continue;
          out.set_omega(mu, i, r, q, std::clamp(sol.x[v], 0.0, 1.0));
        }
      }
  for (int i = 0; i < jobs; ++i) {
    out.set_x(out.window_begin(i), i, out.work(i));
    for (int mu = out.window_begin(i) + 1; mu < out.window_end(i); ++mu) {
      int v = x_var[static_cast<size_t>(mu) * jobs + i];
      out.set_x(mu, i, v >= 0 ? std::max(sol.x[v], 0.0) : 0.0);
    }
  }
}

void tighten_to_exact_work(WorkloadPartition& p) {
  for (int i = 0; i < p.num_jobs(); ++i) {
    double left = p.work(i);
    for (int mu = p.window_begin(i); mu < p.window_end(i); ++mu) {
      double done = p.executed(mu, i);
      if (done > left) {
        double f = done > 0.0 ? left / done : 0.0;
        for (int r = 0; r < p.num_types(); ++r)
          for (int q = 0; q < p.levels(r); ++q)
            p.set_omega(mu, i, r, q, p.omega(mu, i, r, q) * f);
        done = left;
      }
      left -= done;
      if (left < 0.0) left = 0.0;
    }
    // Rebuild the trajectory from the trimmed fractions.
    double x = p.work(i);
    p.set_x(p.window_begin(i), i, x);
    for (int mu = p.window_begin(i); mu < p.window_end(i); ++mu) {
      x = std::max(0.0, x - p.executed(mu, i));
      if (mu + 1 <= p.window_end(i)) p.set_x(mu + 1, i, x);
    }
  }
}

PartitionResult solve_lp_dvfs(const std::vector<JobInstance>& jobs, const MajorGrid& grid,
                              const Platform& platform) {
  PartitionResult res;
  LpDvfsProgram prog = build_lp_dvfs(jobs, grid, platform);
  lp::Solution sol = lp::solve(prog.lp);
  res.status = sol.status;
  res.iterations = sol.iterations;
  if (sol.status != lp::Status::Optimal) return res;
  WorkloadPartition part(grid, platform, jobs);
  prog.extract(sol, part);
  tighten_to_exact_work(part);
  res.partition = std::move(part);
  res.objective_mj = partition_energy(*res.partition, platform).objective_mj;
  return res;
}

bool check_feasibility(const std::vector<JobInstance>& jobs, const MajorGrid& grid,
                       const Platform& platform) {
  LpDvfsProgram prog = build_lp_dvfs(jobs, grid, platform, /*feasibility_only=*/true);
  lp::Solution sol = lp::solve(prog.lp);
  if (sol.status == lp::Status::Unbounded || sol.status == lp::Status::Singular)
    throw std::runtime_error("feasibility probe failed numerically");
  return sol.status == lp::Status::Optimal;
}

namespace {

// Work-preserving exchange between two partial migrants. A vertex of the
// frozen-xi polytope can still carry two of them when both cluster rows are
// tight, but the packing step needs at most one. Shift work of job A toward
// one type and of job B toward the other, coupled so the cluster row that
// would grow stays constant, and step to the first breakpoint: a donor level
// empties (the job becomes single-type) or a busy budget fills (the job
// becomes a full migrant, which the packing handles in any number). Among all
// level choices the cheapest eliminating move is applied; energy can grow
// when the exchange rate is not tied, which only happens off the fluid
// optimum.
bool repair_step(WorkloadPartition& p, const Platform& pf, int mu, int A, int B) {
  constexpr double kTol = 1e-12;
  const double h = p.grid().length_seconds(mu);

  double usage[2] = {0.0, 0.0};
  for (int j = 0; j < p.num_jobs(); ++j)
    for (int r = 0; r < 2; ++r) usage[r] += p.type_share(mu, j, r);

  auto spd = [&p](int r, int q) { return p.speed(r, q); };
  auto work_cost = [&](int r, int q) {  // mJ per unit work at this level
    return h * (eval_power(pf, r, spd(r, q)) - pf.types[r].p_idle) / spd(r, q);
  };

  struct Move {
    int rAf = 0, qa = 0, pa = 0, qb = 0, pb = 0;
    double kappa = 0.0, alpha = 0.0, added = 0.0;
    bool eliminating = false, valid = false;
  };
  Move best;

  for (int o = 0; o < 2; ++o) {
    const int rAf = o, rAt = 1 - o;  // A donates on rAf; B donates on rAt
    for (int qa = 0; qa < p.levels(rAf); ++qa) {
      if (p.omega(mu, A, rAf, qa) <= kTol) continue;
      for (int qb = 0; qb < p.levels(rAt); ++qb) {
        if (p.omega(mu, B, rAt, qb) <= kTol) continue;
        for (int pa = 0; pa < p.levels(rAt); ++pa)
          for (int pb = 0; pb < p.levels(rAf); ++pb)
            for (int pin = 0; pin < 2; ++pin) {
              // beta = kappa * alpha pins one cluster row exactly
              const double kappa = pin == 0 ? spd(rAt, qb) / spd(rAt, pa)
                                            : spd(rAf, pb) / spd(rAf, qa);
              double row_rate[2];
              row_rate[rAt] = 1.0 / spd(rAt, pa) - kappa / spd(rAt, qb);
              row_rate[rAf] = kappa / spd(rAf, pb) - 1.0 / spd(rAf, qa);
              const double busy_rate_a = 1.0 / spd(rAt, pa) - 1.0 / spd(rAf, qa);
              const double busy_rate_b = kappa * (1.0 / spd(rAf, pb) - 1.0 / spd(rAt, qb));

              double alpha = p.omega(mu, A, rAf, qa) * spd(rAf, qa);
              alpha = std::min(alpha, p.omega(mu, B, rAt, qb) * spd(rAt, qb) / kappa);
              bool eliminating = true;
              if (busy_rate_a > kTol)
                alpha = std::min(alpha, (1.0 - p.busy_share(mu, A)) / busy_rate_a);
              if (busy_rate_b > kTol)
                alpha = std::min(alpha, (1.0 - p.busy_share(mu, B)) / busy_rate_b);
              for (int r = 0; r < 2; ++r)
                if (row_rate[r] > kTol) {
                  const double slack =
                      std::max(0.0, static_cast<double>(pf.types[r].cores) - usage[r]);
                  if (slack / row_rate[r] < alpha) {
                    alpha = slack / row_rate[r];
                    eliminating = false;  // a cluster row binds before any migrant resolves
                  }
                }
              if (alpha <= kTol) continue;

              const double added =
                  alpha * (work_cost(rAt, pa) - work_cost(rAf, qa) +
                           kappa * (work_cost(rAf, pb) - work_cost(rAt, qb)));
              const bool better = !best.valid || (eliminating && !best.eliminating) ||
                                  (eliminating == best.eliminating && added < best.added - kTol);
              if (better) best = {rAf, qa, pa, qb, pb, kappa, alpha, added, eliminating, true};
            }
      }
    }
  }
  if (!best.valid) return false;

  const int rAf = best.rAf, rAt = 1 - best.rAf;
  const double beta = best.kappa * best.alpha;
  auto shift = [&](int job, int r, int q, double work) {
    double w = p.omega(mu, job, r, q) + work / spd(r, q);
    p.set_omega(mu, job, r, q, w < kTol ? 0.0 : w);
  };
  shift(A, rAf, best.qa, -best.alpha);
  shift(A, rAt, best.pa, best.alpha);
  shift(B, rAt, best.qb, -beta);
  shift(B, rAf, best.pb, beta);
  return true;
}

void repair_partial_migrants(WorkloadPartition& p, const Platform& pf, int mu) {
  constexpr double kTol = 1e-9;
  for (int guard = 0; guard < 4 * p.num_jobs() + 8; ++guard) {
    std::vector<int> partial;
    for (int j = 0; j < p.num_jobs(); ++j) {
      const double a = p.type_share(mu, j, 0), b = p.type_share(mu, j, 1);
      if (a > kTol && b > kTol && a + b < 1.0 - kTol) partial.push_back(j);
    }
    if (partial.size() <= 1) return;
    if (!repair_step(p, pf, mu, partial[0], partial[1])) return;  // classify will report
  }
}

}  // namespace

void reduce_intercluster(WorkloadPartition& p, const Platform& platform) {
  const int types = p.num_types();
  for (int mu = 0; mu < p.grid().intervals(); ++mu) {
    double h = p.grid().length_seconds(mu);
    // Jobs that actually execute here.
    std::vector<int> act;
    std::vector<double> xi;
    for (int i = 0; i < p.num_jobs(); ++i) {
      if (!p.active(mu, i)) continue;
      double done = p.executed(mu, i);
      if (done > 1e-12) {
        act.push_back(i);
        xi.push_back(done / h);
      } else {
        for (int r = 0; r < types; ++r)
          for (int q = 0; q < p.levels(r); ++q) p.set_omega(mu, i, r, q, 0.0);
      }
    }
    if (act.empty()) continue;

    lp::LinearProgram ip;
    std::vector<int> var;  // (job slot, type, level) -> var
    for (size_t k = 0; k < act.size(); ++k) {
      (void)k;
      for (int r = 0; r < types; ++r)
        for (int q = 0; q < p.levels(r); ++q) {
          double cost =
              h * (eval_power(platform, r, p.speed(r, q)) - platform.types[r].p_idle);
          var.push_back(ip.add_variable(0.0, 1.0, cost));
        }
    }
    int stride = 0;
    std::vector<int> off;
    for (int r = 0; r < types; ++r) {
      off.push_back(stride);
      stride += p.levels(r);
    }
    auto vat = [&](size_t k, int r, int q) { return var[k * stride + off[r] + q]; };

    for (size_t k = 0; k < act.size(); ++k) {
      std::vector<std::pair<int, double>> work, busy;
      for (int r = 0; r < types; ++r)
        for (int q = 0; q < p.levels(r); ++q) {
          work.push_back({vat(k, r, q), p.speed(r, q)});
          busy.push_back({vat(k, r, q), 1.0});
        }
      ip.add_row(work, lp::Relation::Equal, xi[k], "work" + std::to_string(k));
      ip.add_row(busy, lp::Relation::LessEq, 1.0, "busy" + std::to_string(k));
    }
    for (int r = 0; r < types; ++r) {
      std::vector<std::pair<int, double>> terms;
      for (size_t k = 0; k < act.size(); ++k)
        for (int q = 0; q < p.levels(r); ++q) terms.push_back({vat(k, r, q), 1.0});
      ip.add_row(terms, lp::Relation::LessEq, static_cast<double>(platform.types[r].cores),
                 "cores" + std::to_string(r));
    }

    lp::Solution sol = lp::solve(ip);
    if (sol.status != lp::Status::Optimal)
      throw std::runtime_error("per-interval re-solve failed in interval " + std::to_string(mu));
    for (size_t k = 0; k < act.size(); ++k)
      for (int r = 0; r < types; ++r)
        for (int q = 0; q < p.levels(r); ++q)
          p.set_omega(mu, act[k], r, q, std::clamp(sol.x[vat(k, r, q)], 0.0, 1.0));
    if (types == 2) repair_partial_migrants(p, platform, mu);
  }
}

NlpDvfsResult solve_nlp_dvfs(const std::vector<JobInstance>& jobs, const MajorGrid& grid,
                             const Platform& platform, int grid_points) {
  NlpDvfsResult out{{}, make_speed_grid(platform, grid_points)};
  out.result = solve_lp_dvfs(jobs, grid, out.gridded);
  return out;
}

}  // namespace hetsched
