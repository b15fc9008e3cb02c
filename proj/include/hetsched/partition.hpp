#pragma once

#include <optional>
#include <vector>

#include "hetsched/lp.hpp"
#include "hetsched/model.hpp"
#include "hetsched/ordering.hpp"

namespace hetsched {

// Time-fraction split of every job over intervals, processor types and speed
// levels, together with the remaining-work trajectory at grid boundaries.
// omega(mu, i, r, q) is the fraction of interval mu job i spends on a type-r
// core at level q; x(mu, i) is the work (seconds at unit speed) still owed at
// grid point mu.
class WorkloadPartition {
 public:
  WorkloadPartition(MajorGrid grid, const Platform& platform,
                    const std::vector<JobInstance>& jobs);

  double omega(int interval, int job, int type, int level) const {
    return omega_[flat(interval, job, type, level)];
  }
  void set_omega(int interval, int job, int type, int level, double v) {
    omega_[flat(interval, job, type, level)] = v;
  }
  double type_share(int interval, int job, int type) const;
  double busy_share(int interval, int job) const;
  // Work executed by `job` during `interval`, in seconds at unit speed.
  double executed(int interval, int job) const;

  double x(int point, int job) const { return x_[static_cast<size_t>(point) * jobs_ + job]; }
  void set_x(int point, int job, double v) { x_[static_cast<size_t>(point) * jobs_ + job] = v; }

  const MajorGrid& grid() const { return grid_; }
  int num_jobs() const { return jobs_; }
  int num_types() const { return static_cast<int>(levels_.size()); }
  int levels(int type) const { return levels_[type]; }
  double speed(int type, int level) const { return speeds_[type][level]; }
  int window_begin(int job) const { return win_begin_[job]; }
  int window_end(int job) const { return win_end_[job]; }
  double work(int job) const { return work_[job]; }
  bool active(int interval, int job) const {
    return win_begin_[job] <= interval && interval < win_end_[job];
  }

  // Per-job aggregate type shares of one interval (for classification/packing).
  std::vector<JobShare> shares(int interval, double tol = 0.0) const;

 private:
  size_t flat(int interval, int job, int type, int level) const {
    return (static_cast<size_t>(interval) * jobs_ + job) * stride_ + offset_[type] + level;
  }

  MajorGrid grid_;
  int jobs_ = 0;
  int stride_ = 0;  // total level count across types
  std::vector<int> levels_, offset_;
  std::vector<std::vector<double>> speeds_;
  std::vector<double> omega_;  // intervals x jobs x stride
  std::vector<double> x_;      // (intervals + 1) x jobs
  std::vector<int> win_begin_, win_end_;
  std::vector<double> work_;
};

struct PartitionEnergy {
  double objective_mj = 0.0;  // sum h * omega * (P_active - P_idle)
  double active_mj = 0.0;
  double idle_mj = 0.0;
  double total_mj = 0.0;  // = objective + sum_r cores_r * P_idle_r * horizon
  double busy_seconds[2] = {0.0, 0.0};
};

PartitionEnergy partition_energy(const WorkloadPartition& p, const Platform& platform);

// The workload-partitioning LP: variables are the per-interval time fractions
// omega and the remaining-work samples x at interior window boundaries;
// constraints are the work balance along each job's window, the unit busy-time
// budget per (job, interval) and the core-count budget per (type, interval).
// The objective prices a fraction at h * (P_active(s) - P_idle), i.e. the energy
// added over leaving the core idle.
struct LpDvfsProgram {
  lp::LinearProgram lp;
  std::vector<int> omega_var;  // flat (interval, job, type, level) -> var index or -1
  std::vector<int> x_var;      // flat (point, job) -> var index or -1 (window constants excluded)
  int intervals = 0, jobs = 0, stride = 0;
  std::vector<int> offset;  // per-type level offset into the stride

  // Copies a solved point into a partition (values clamped to their bounds).
  void extract(const lp::Solution& sol, WorkloadPartition& out) const;
};

LpDvfsProgram build_lp_dvfs(const std::vector<JobInstance>& jobs, const MajorGrid& grid,
                            const Platform& platform, bool feasibility_only = false);

struct PartitionResult {
  lp::Status status = lp::Status::Infeasible;
  std::optional<WorkloadPartition> partition;
  double objective_mj = 0.0;
  int iterations = 0;
};

// Solve + surplus trimming, so every job's executed work equals its demand
// exactly and the trajectory x matches the trimmed fractions.
PartitionResult solve_lp_dvfs(const std::vector<JobInstance>& jobs, const MajorGrid& grid,
                              const Platform& platform);

bool check_feasibility(const std::vector<JobInstance>& jobs, const MajorGrid& grid,
                       const Platform& platform);

// Walk each job's window forward and proportionally discard fraction mass once
// the cumulative executed work reaches the demand, then rebuild x. Controls the
// surplus a pure feasibility solve (or accumulated float error) leaves behind.
void tighten_to_exact_work(WorkloadPartition& p);

// Re-solves every interval with the executed work of each job frozen, replacing
// the fractions by a basic (vertex) solution of the per-interval polytope: at
// most one partial migrant per interval, unchanged energy for an already
// optimal partition.
void reduce_intercluster(WorkloadPartition& p, const Platform& platform);

struct NlpDvfsResult {
  PartitionResult result;
  Platform gridded;  // the discrete platform actually solved
};

// Continuous speed ranges approximated by a uniform grid with `grid_points`
// levels per type spanning [min speed, max speed] of each type.
NlpDvfsResult solve_nlp_dvfs(const std::vector<JobInstance>& jobs, const MajorGrid& grid,
                             const Platform& platform, int grid_points);

}  // namespace hetsched
