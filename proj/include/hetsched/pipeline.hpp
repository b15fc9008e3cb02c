#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hetsched/io.hpp"
#include "hetsched/model.hpp"
#include "hetsched/partition.hpp"
#include "hetsched/schedule.hpp"

namespace hetsched {

enum class Algorithm { LpDvfs, NlpDvfs, GwaDDiscrete, GwaNoDvfs };

std::optional<Algorithm> parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);

struct PipelineResult {
  bool feasible = false;
  std::string failure;  // names the binding bound when infeasible
  TasksetStats stats;
  std::vector<JobInstance> jobs;
  MajorGrid grid;
  Platform solved_platform;  // gridded for nlp-dvfs, the input otherwise
  std::optional<WorkloadPartition> partition;
  double energy_mj = 0.0;  // allocation energy (equals realized energy for LP paths)
  Schedule schedule;
  ScheduleReport report;
};

// The full chain: solve the chosen allocation, reduce every interval to a
// vertex, wrap, expand to an absolute-time schedule and validate it.
PipelineResult run_pipeline(const std::vector<TaskSpec>& tasks, const Platform& platform,
                            Algorithm algo, int nlp_grid_points = 9,
                            double tick_seconds = kDefaultTickSeconds);

struct SweepEntry {
  std::string name;
  std::vector<TaskSpec> tasks;
};

// One row per (taskset, algorithm); normalization denominator is the
// GWA-NoDVFS energy of the same taskset (blank when that baseline fails).
std::vector<SweepRow> run_sweep(const std::vector<SweepEntry>& entries, const Platform& platform,
                                const std::vector<Algorithm>& algorithms,
                                int nlp_grid_points = 9,
                                double tick_seconds = kDefaultTickSeconds);

}  // namespace hetsched
