#include "hetsched/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetsched {

namespace {

// Build and solve the allocation LP. `top_only` restricts every type to its
// highest level. Window time per task over the horizon weights the objective;
// density factors k = work / (s * min(d, p)) link y to delta.
GwaResult solve_gwa(const std::vector<TaskSpec>& tasks, const Platform& platform,
                    double tick_seconds, bool top_only) {
  const int types = platform.type_count();
  GwaResult out;
  GwaAllocation a;
  a.tasks = static_cast<int>(tasks.size());
  std::vector<std::vector<int>> levels(types);  // usable level indices per type
  for (int r = 0; r < types; ++r) {
    const auto& pt = platform.types[r];
    if (pt.speeds.empty()) throw std::invalid_argument("type " + pt.name + " has no speed levels");
    if (top_only)
      levels[r] = {static_cast<int>(pt.speeds.size()) - 1};
    else
      for (int q = 0; q < static_cast<int>(pt.speeds.size()); ++q) levels[r].push_back(q);
    a.offset.push_back(a.stride);
    a.stride += static_cast<int>(pt.speeds.size());
  }

  TasksetStats st = taskset_stats(tasks, platform, tick_seconds);
  double horizon_s = static_cast<double>(st.horizon) * tick_seconds;

  // Active window seconds per task across the horizon.
  std::vector<double> window_s(tasks.size());
  std::vector<double> span_s(tasks.size());
  for (size_t i = 0; i < tasks.size(); ++i) {
    const TaskSpec& t = tasks[i];
    Ticks span = t.period ? std::min(t.deadline, *t.period) : t.deadline;
    span_s[i] = static_cast<double>(span) * tick_seconds;
    double jobs = t.period ? static_cast<double>(st.horizon / *t.period) : 1.0;
    window_s[i] = jobs * span_s[i];
  }

  lp::LinearProgram lp;
  std::vector<int> var(static_cast<size_t>(a.tasks) * a.stride, -1);
  auto vat = [&](int i, int r, int q) -> int& {
    return var[static_cast<size_t>(i) * a.stride + a.offset[r] + q];
  };
  for (int i = 0; i < a.tasks; ++i)
    for (int r = 0; r < types; ++r) {
      const auto& pt = platform.types[r];
      if (pt.cores <= 0) continue;
      for (int q : levels[r]) {
        double s = pt.speeds[q];
        double k = tasks[i].work / (s * span_s[i]);
        double cost = window_s[i] * k * (eval_power(platform, r, s) - pt.p_idle);
        vat(i, r, q) = lp.add_variable(0.0, 1.0, cost);
      }
    }
  for (int i = 0; i < a.tasks; ++i) {
    std::vector<std::pair<int, double>> whole, density;
    for (int r = 0; r < types; ++r) {
      const auto& pt = platform.types[r];
      if (pt.cores <= 0) continue;
      for (int q : levels[r]) {
        double k = tasks[i].work / (pt.speeds[q] * span_s[i]);
        whole.push_back({vat(i, r, q), 1.0});
        density.push_back({vat(i, r, q), k});
      }
    }
    lp.add_row(whole, lp::Relation::Equal, 1.0, "split" + std::to_string(i));
    lp.add_row(density, lp::Relation::LessEq, 1.0, "dens" + std::to_string(i));
  }
  for (int r = 0; r < types; ++r) {
    const auto& pt = platform.types[r];
    if (pt.cores <= 0) continue;
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < a.tasks; ++i)
      for (int q : levels[r]) {
        double k = tasks[i].work / (pt.speeds[q] * span_s[i]);
        terms.push_back({vat(i, r, q), k});
      }
    lp.add_row(terms, lp::Relation::LessEq, static_cast<double>(pt.cores),
               "cores" + std::to_string(r));
  }

  lp::Solution sol = lp::solve(lp);
  out.status = sol.status;
  if (sol.status != lp::Status::Optimal) return out;

  a.y.assign(static_cast<size_t>(a.tasks) * a.stride, 0.0);
  a.delta.assign(a.y.size(), 0.0);
  for (int i = 0; i < a.tasks; ++i)
    for (int r = 0; r < types; ++r) {
      const auto& pt = platform.types[r];
      for (int q : levels[r]) {
        int v = (pt.cores <= 0) ? -1 : vat(i, r, q);
        if (v < 0) continue;
        double yv = std::clamp(sol.x[v], 0.0, 1.0);
        double k = tasks[i].work / (pt.speeds[q] * span_s[i]);
        a.y[static_cast<size_t>(i) * a.stride + a.offset[r] + q] = yv;
        a.delta[static_cast<size_t>(i) * a.stride + a.offset[r] + q] = yv * k;
      }
    }
  a.objective_mj = sol.objective;
  double idle = 0.0;
  for (const auto& pt : platform.types) idle += pt.cores * pt.p_idle * horizon_s;
  a.total_mj = a.objective_mj + idle;
  out.alloc = std::move(a);
  return out;
}

}  // namespace

GwaResult solve_gwa_ddiscrete(const std::vector<TaskSpec>& tasks, const Platform& platform,
                              double tick_seconds) {
  return solve_gwa(tasks, platform, tick_seconds, /*top_only=*/false);
}

GwaResult solve_gwa_nodvfs(const std::vector<TaskSpec>& tasks, const Platform& platform,
                           double tick_seconds) {
  return solve_gwa(tasks, platform, tick_seconds, /*top_only=*/true);
}

WorkloadPartition gwa_to_partition(const GwaAllocation& alloc,
                                   const std::vector<JobInstance>& jobs, const MajorGrid& grid,
                                   const Platform& platform) {
  WorkloadPartition p(grid, platform, jobs);
  for (int j = 0; j < p.num_jobs(); ++j) {
    int task = jobs[j].task_index;
    for (int mu = p.window_begin(j); mu < p.window_end(j); ++mu)
      for (int r = 0; r < p.num_types(); ++r)
        for (int q = 0; q < p.levels(r); ++q)
          p.set_omega(mu, j, r, q, alloc.delta_at(task, r, q));
    double x = p.work(j);
    p.set_x(p.window_begin(j), j, x);
    for (int mu = p.window_begin(j); mu < p.window_end(j); ++mu) {
      x = std::max(0.0, x - p.executed(mu, j));
      p.set_x(mu + 1, j, x);
    }
  }
  return p;
}

}  // namespace hetsched
