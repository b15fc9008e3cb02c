#pragma once

#include <string>
#include <vector>

#include "hetsched/baselines.hpp"
#include "hetsched/model.hpp"
#include "hetsched/partition.hpp"
#include "hetsched/schedule.hpp"

namespace hetsched {

// Taskset file: JSON array of {id, min_exec_time | cycles, deadline, period?,
// arrival?}. Times are seconds and must land on the tick grid; cycles are
// divided by f_max. Throws std::runtime_error with the offending field on
// malformed input.
std::vector<TaskSpec> load_taskset(const std::string& path, double f_max = 1.0,
                                   double tick_seconds = kDefaultTickSeconds);

// Platform file: JSON {f_max, types: [{name, cores, speeds, alpha, beta,
// p_static, p_idle}]}. Hard structural violations throw via validate_platform.
Platform load_platform(const std::string& path);

std::string format_double(double v);  // shortest round-trippable decimal form

// CSV bodies (first line is the header). Writers are deterministic: same
// input, same bytes.
std::string partition_csv(const WorkloadPartition& p, const std::vector<JobInstance>& jobs,
                          const MajorGrid& grid, const Platform& platform);
std::string allocation_csv(const GwaAllocation& alloc, const std::vector<TaskSpec>& tasks,
                           const Platform& platform, double horizon_seconds);
std::string schedule_csv(const Schedule& s, const std::vector<JobInstance>& jobs);
std::string report_csv(const ScheduleReport& report);

struct SweepRow {
  std::string taskset;
  double total_density = 0.0;
  std::string algorithm;
  bool feasible = false;
  double energy_mj = 0.0;
  double normalized = 0.0;  // against GWA-NoDVFS for the same taskset
};

std::string sweep_csv(const std::vector<SweepRow>& rows);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Parses a schedule CSV produced by schedule_csv back into segments; used by
// the standalone validate command. The horizon is the larger of
// `horizon_seconds` and the last segment end.
Schedule parse_schedule_csv(const std::string& text, const Platform& platform,
                            const std::vector<JobInstance>& jobs,
                            double horizon_seconds = 0.0);

}  // namespace hetsched
