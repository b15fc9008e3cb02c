#include "hetsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hetsched {

int Platform::total_cores() const {
  int n = 0;
  for (const auto& t : types) n += t.cores;
  return n;
}

int MajorGrid::index_of(Ticks t) const {
  auto it = std::lower_bound(bounds.begin(), bounds.end(), t);
  if (it == bounds.end() || *it != t)
    throw std::invalid_argument("time " + std::to_string(t) + " is not a grid boundary");
  return static_cast<int>(it - bounds.begin());
}

Ticks hyperperiod(const std::vector<TaskSpec>& tasks) {
  Ticks lcm = 0;
  for (const auto& t : tasks) {
    if (!t.period) continue;
    if (*t.period <= 0) throw std::invalid_argument("task " + t.id + ": period must be positive");
    if (lcm == 0) {
      lcm = *t.period;
    } else {
      Ticks g = std::gcd(lcm, *t.period);
      Ticks factor = *t.period / g;
      if (lcm > std::numeric_limits<Ticks>::max() / factor)
        throw std::overflow_error("hyperperiod overflows the tick range");
      lcm *= factor;
    }
  }
  if (lcm == 0) throw std::invalid_argument("taskset has no periodic task");
  return lcm;
}

std::vector<JobInstance> expand_periodic(const std::vector<TaskSpec>& tasks, Ticks horizon,
                                         double tick_seconds) {
  if (horizon <= 0) throw std::invalid_argument("horizon must be positive");
  std::vector<JobInstance> jobs;
  for (int i = 0; i < static_cast<int>(tasks.size()); ++i) {
    const TaskSpec& t = tasks[i];
    if (t.work < 0) throw std::invalid_argument("task " + t.id + ": negative work");
    if (t.deadline <= 0) throw std::invalid_argument("task " + t.id + ": deadline must be positive");
    if (t.period && t.deadline > *t.period)
      throw std::invalid_argument("task " + t.id + ": deadline exceeds period");
    Ticks step = t.period ? *t.period : horizon;  // one iteration for one-shot tasks
    int instance = 0;
    for (Ticks release = t.arrival; release < horizon; release += step, ++instance) {
      JobInstance job;
      job.task_index = i;
      job.instance = instance;
      job.label = t.id + "#" + std::to_string(instance);
      job.release = release;
      job.deadline = release + t.deadline;
      job.work = t.work;
      double window = static_cast<double>(t.deadline) * tick_seconds;
      if (t.work > window * (1.0 + 1e-12))
        throw std::invalid_argument("task " + t.id + ": work " + std::to_string(t.work) +
                                    " s cannot finish in a window of " + std::to_string(window) +
                                    " s even at unit speed");
      jobs.push_back(std::move(job));
      if (!t.period) break;
    }
  }
  return jobs;
}

TasksetStats taskset_stats(const std::vector<TaskSpec>& tasks, const Platform& platform,
                           double tick_seconds) {
  TasksetStats st;
  for (const auto& t : tasks) {
    Ticks span = t.period ? std::min(t.deadline, *t.period) : t.deadline;
    double d = t.work / (static_cast<double>(span) * tick_seconds);
    st.densities.push_back(d);
    st.total_density += d;
  }
  for (const auto& pt : platform.types)
    st.capacity += pt.cores * (pt.speeds.empty() ? 0.0 : pt.speeds.back());
  bool any_periodic = std::any_of(tasks.begin(), tasks.end(),
                                  [](const TaskSpec& t) { return t.period.has_value(); });
  st.hyperperiod = any_periodic ? hyperperiod(tasks) : 0;
  Ticks max_deadline = 0;
  for (const auto& t : tasks) max_deadline = std::max(max_deadline, t.arrival + t.deadline);
  st.horizon = any_periodic ? std::max(st.hyperperiod, max_deadline) : max_deadline;
  return st;
}

MajorGrid build_major_grid(const std::vector<JobInstance>& jobs, double tick_seconds) {
  MajorGrid grid;
  grid.tick_seconds = tick_seconds;
  grid.bounds.push_back(0);
  for (const auto& j : jobs) {
    if (j.release >= j.deadline)
      throw std::invalid_argument("job " + j.label + ": empty scheduling window");
    grid.bounds.push_back(j.release);
    grid.bounds.push_back(j.deadline);
  }
  std::sort(grid.bounds.begin(), grid.bounds.end());
  grid.bounds.erase(std::unique(grid.bounds.begin(), grid.bounds.end()), grid.bounds.end());
  if (grid.bounds.front() < 0) throw std::invalid_argument("negative release time");
  return grid;
}

double eval_power(const Platform& platform, int type, double s) {
  if (type < 0 || type >= platform.type_count()) throw std::out_of_range("no such processor type");
  const ProcType& pt = platform.types[type];
  if (pt.speeds.empty()) throw std::invalid_argument("type " + pt.name + " has no speed levels");
  constexpr double tol = 1e-9;
  if (s < pt.speeds.front() - tol || s > pt.speeds.back() + tol)
    throw std::domain_error("speed " + std::to_string(s) + " outside the range of type " + pt.name);
  return pt.alpha * std::pow(s, pt.beta) + pt.p_static;
}

std::vector<std::string> screen_taskset(const std::vector<TaskSpec>& tasks,
                                        const Platform& platform, double tick_seconds) {
  std::vector<std::string> issues;
  double weakest_top = std::numeric_limits<double>::infinity();
  for (const auto& pt : platform.types)
    if (!pt.speeds.empty()) weakest_top = std::min(weakest_top, pt.speeds.back());
  TasksetStats st = taskset_stats(tasks, platform, tick_seconds);
  for (size_t i = 0; i < tasks.size(); ++i) {
    if (st.densities[i] > weakest_top + 1e-12)
      issues.push_back("task " + tasks[i].id + ": density " + std::to_string(st.densities[i]) +
                       " exceeds the weakest type's top speed " + std::to_string(weakest_top));
  }
  if (st.total_density > st.capacity + 1e-12)
    issues.push_back("total density " + std::to_string(st.total_density) +
                     " exceeds platform capacity " + std::to_string(st.capacity));
  return issues;
}

std::vector<std::string> validate_platform(const Platform& platform) {
  if (platform.types.empty() || platform.type_count() > 2)
    throw std::invalid_argument("platform must declare one or two processor types");
  double top = 0.0;
  for (const auto& pt : platform.types) {
    if (pt.cores < 0) throw std::invalid_argument("type " + pt.name + ": negative core count");
    if (pt.speeds.empty()) throw std::invalid_argument("type " + pt.name + ": no speed levels");
    for (size_t q = 0; q < pt.speeds.size(); ++q) {
      if (pt.speeds[q] <= 0 || pt.speeds[q] > 1.0 + 1e-9)
        throw std::invalid_argument("type " + pt.name + ": speeds must lie in (0, 1]");
      if (q > 0 && pt.speeds[q] <= pt.speeds[q - 1] + 1e-12)
        throw std::invalid_argument("type " + pt.name + ": speeds must be strictly ascending");
    }
    if (pt.alpha <= 0 || pt.beta < 1.0)
      throw std::invalid_argument("type " + pt.name + ": power model needs alpha > 0, beta >= 1");
    double p_min = pt.alpha * std::pow(pt.speeds.front(), pt.beta) + pt.p_static;
    if (pt.p_idle >= p_min)
      throw std::invalid_argument("type " + pt.name + ": idle power must be below active power");
    top = std::max(top, pt.speeds.back());
  }
  std::vector<std::string> notes;
  if (std::abs(top - 1.0) > 1e-9)
    notes.push_back("top speed across types is " + std::to_string(top) +
                    ", not 1; speeds are not normalized to the fastest level");
  return notes;
}

Platform make_speed_grid(const Platform& platform, int points) {
  if (points < 2) throw std::invalid_argument("a speed grid needs at least 2 points");
  Platform out = platform;
  for (auto& pt : out.types) {
    if (pt.speeds.empty()) throw std::invalid_argument("type " + pt.name + " has no speed range");
    double lo = pt.speeds.front(), hi = pt.speeds.back();
    pt.speeds.assign(points, lo);
    for (int k = 0; k < points; ++k)
      pt.speeds[k] = lo + (hi - lo) * static_cast<double>(k) / (points - 1);
    pt.speeds.back() = hi;  // exact endpoints regardless of rounding
  }
  return out;
}

}  // namespace hetsched
