#pragma once

#include <string>
#include <vector>

#include "hetsched/model.hpp"
#include "hetsched/ordering.hpp"
#include "hetsched/partition.hpp"

namespace hetsched {

struct Segment {
  double start = 0.0, end = 0.0;  // seconds
  int type = 0;
  int proc = 0;  // index within the type
  int job = -1;
  double speed = 0.0;
};

struct Schedule {
  double horizon = 0.0;  // seconds
  std::vector<int> cores_per_type;
  std::vector<Segment> segments;  // busy segments; idle time is the complement
};

// Classify and wrap every interval of a partition. Throws when an interval's
// shares violate the packing preconditions (more than one partial migrant,
// overloaded cluster), which a reduced partition never does.
std::vector<OrderedInterval> order_all_intervals(const WorkloadPartition& p,
                                                 const Platform& platform);

// Turns packed windows into concrete segments: inside each window a job's
// speed-level mass for that (interval, type) is laid out lowest level first,
// walking the job's windows in time order.
Schedule expand_schedule(const WorkloadPartition& p, const std::vector<OrderedInterval>& order,
                         const Platform& platform);

struct ScheduleReport {
  bool feasible = false;
  double active_mj = 0.0, idle_mj = 0.0, total_mj = 0.0;
  int preemptions = 0;
  int intra_migrations[2] = {0, 0};
  int inter_migrations = 0;
  std::vector<std::string> violations;            // empty when feasible
  std::vector<std::pair<int, double>> misses;     // job -> work shortfall (seconds)
  double max_residual = 0.0;                      // worst violation magnitude
};

// Event-based checks: per-processor and per-job non-overlap, execution inside
// [release, deadline), speeds drawn from the platform's level sets, and work
// completion within `completion_tol` seconds.
ScheduleReport validate(const Schedule& s, const std::vector<JobInstance>& jobs,
                        const Platform& platform, double tick_seconds = kDefaultTickSeconds,
                        double completion_tol = 1e-7);

struct EnergyBreakdown {
  double active_mj = 0.0, idle_mj = 0.0, total_mj = 0.0;
};

EnergyBreakdown schedule_energy(const Schedule& s, const Platform& platform);

struct SwitchCounts {
  int preemptions = 0;     // within-job gaps: the job pauses and resumes later
  int intra[2] = {0, 0};   // jobs on two processors of the same type
  int inter = 0;           // jobs on both types
};

SwitchCounts count_context_switches(const Schedule& s, double tol = 1e-9);

// Remaining work per job sampled at every segment boundary, for plotting and
// for the monotonicity checks inside validate().
struct FluidTrace {
  std::vector<double> times;                // ascending event times
  std::vector<std::vector<double>> remaining;  // [job][event]
};

FluidTrace fluid_trace(const Schedule& s, const std::vector<JobInstance>& jobs);

}  // namespace hetsched
