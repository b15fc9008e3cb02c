#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hetsched {

// Time-grid quantities (releases, deadlines, periods) are integer ticks so that
// hyperperiods and deadline-partition boundaries are exact. Workloads and speeds
// stay floating point; a tick defaults to 1 ms.
using Ticks = std::int64_t;

constexpr double kDefaultTickSeconds = 1e-3;

struct TaskSpec {
  std::string id;
  double work = 0.0;  // minimum execution time at the reference frequency, seconds
  Ticks deadline = 0;  // relative deadline
  std::optional<Ticks> period;  // empty: one-shot job released at `arrival`
  Ticks arrival = 0;  // release offset (one-shot tasks), 0 for periodic
};

struct JobInstance {
  int task_index = -1;
  int instance = 0;
  std::string label;  // "<task id>#<instance>"
  Ticks release = 0;
  Ticks deadline = 0;  // absolute
  double work = 0.0;
};

// P_active(s) = alpha * s^beta + p_static (mW), valid on [speeds.front(), speeds.back()].
struct ProcType {
  std::string name;
  int cores = 0;
  std::vector<double> speeds;  // normalized to the reference frequency, ascending
  double alpha = 0.0;
  double beta = 1.0;
  double p_static = 0.0;
  double p_idle = 0.0;
};

struct Platform {
  std::vector<ProcType> types;  // one or two entries
  double f_max = 1.0;  // reference frequency, used only to convert cycle counts

  int total_cores() const;
  int type_count() const { return static_cast<int>(types.size()); }
};

struct MajorGrid {
  std::vector<Ticks> bounds;  // ascending, bounds.front() == 0
  double tick_seconds = kDefaultTickSeconds;

  int intervals() const { return static_cast<int>(bounds.size()) - 1; }
  double length_seconds(int interval) const {
    return static_cast<double>(bounds[interval + 1] - bounds[interval]) * tick_seconds;
  }
  double time_seconds(int point) const {
    return static_cast<double>(bounds[point]) * tick_seconds;
  }
  // Index of an exactly matching boundary; throws if `t` is not a grid point.
  int index_of(Ticks t) const;
};

struct TasksetStats {
  std::vector<double> densities;  // per task, at the top speed of the fastest type
  double total_density = 0.0;     // D
  double capacity = 0.0;          // C = sum_r m_r * max(S^r)
  Ticks hyperperiod = 0;          // 0 when no task is periodic
  Ticks horizon = 0;              // scheduling window end: hyperperiod, or max deadline
};

// Least common multiple of all periods. One-shot tasks are ignored; throws if
// every task is one-shot or the LCM overflows.
Ticks hyperperiod(const std::vector<TaskSpec>& tasks);

// All jobs with a release strictly before `horizon`, periodic tasks unrolled.
// Throws if a job could not finish by its deadline even at unit speed
// (work > window length), since no schedule can exist.
std::vector<JobInstance> expand_periodic(const std::vector<TaskSpec>& tasks, Ticks horizon,
                                         double tick_seconds = kDefaultTickSeconds);

TasksetStats taskset_stats(const std::vector<TaskSpec>& tasks, const Platform& platform,
                           double tick_seconds = kDefaultTickSeconds);

// Deadline partition: every distinct release and deadline, with 0 always included.
MajorGrid build_major_grid(const std::vector<JobInstance>& jobs,
                           double tick_seconds = kDefaultTickSeconds);

// Active power (mW) of `type` at speed `s`; throws when s is outside
// [min speed, max speed] of the type.
double eval_power(const Platform& platform, int type, double s);

// Quick necessary check: every task density must fit the slowest type's top speed
// and the total density must fit the platform capacity. Returns human-readable
// complaints, empty when the screen passes. (Necessary, not sufficient.)
std::vector<std::string> screen_taskset(const std::vector<TaskSpec>& tasks,
                                        const Platform& platform,
                                        double tick_seconds = kDefaultTickSeconds);

// Structural platform checks (speed ordering, power model sanity). Violations of
// hard invariants throw; the returned list carries advisory findings such as a
// top speed below 1.
std::vector<std::string> validate_platform(const Platform& platform);

// Uniform DVFS grid with `points` levels per type spanning [min speed, max speed];
// used to approximate a continuous frequency range. points >= 2.
Platform make_speed_grid(const Platform& platform, int points);

}  // namespace hetsched
