#pragma once

#include <optional>
#include <vector>

#include "hetsched/model.hpp"
#include "hetsched/partition.hpp"

namespace hetsched {

// Time-invariant allocation: each task holds a distribution y over (type,
// level) summing to 1, which induces a constant density delta(i, r, q) =
// y * work / (s * min(deadline, period)) inside every job window.
struct GwaAllocation {
  int tasks = 0;
  int stride = 0;
  std::vector<int> offset;      // per-type level offset
  std::vector<double> y;        // tasks x stride
  std::vector<double> delta;    // tasks x stride
  double objective_mj = 0.0;    // sum over active windows of delta * (P - P_idle)
  double total_mj = 0.0;        // + idle power over the whole horizon

  double y_at(int task, int type, int level) const {
    return y[static_cast<size_t>(task) * stride + offset[type] + level];
  }
  double delta_at(int task, int type, int level) const {
    return delta[static_cast<size_t>(task) * stride + offset[type] + level];
  }
};

struct GwaResult {
  lp::Status status = lp::Status::Infeasible;
  std::optional<GwaAllocation> alloc;
};

// Allocation over the full DVFS level sets.
GwaResult solve_gwa_ddiscrete(const std::vector<TaskSpec>& tasks, const Platform& platform,
                              double tick_seconds = kDefaultTickSeconds);

// Same program with every type pinned at its top speed.
GwaResult solve_gwa_nodvfs(const std::vector<TaskSpec>& tasks, const Platform& platform,
                           double tick_seconds = kDefaultTickSeconds);

// Spreads the constant densities over each job's window intervals, producing a
// partition with exactly the allocation's energy that the common validation
// pipeline can schedule.
WorkloadPartition gwa_to_partition(const GwaAllocation& alloc,
                                   const std::vector<JobInstance>& jobs, const MajorGrid& grid,
                                   const Platform& platform);

}  // namespace hetsched
