#include "hetsched/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace hetsched {

std::vector<OrderedInterval> order_all_intervals(const WorkloadPartition& p,
                                                 const Platform& platform) {
  int m1 = platform.types.empty() ? 0 : platform.types[0].cores;
  int m2 = platform.type_count() > 1 ? platform.types[1].cores : 0;
  std::vector<OrderedInterval> out;
  out.reserve(p.grid().intervals());
  for (int mu = 0; mu < p.grid().intervals(); ++mu) {
    auto shares = p.shares(mu, 1e-12);
    auto cls = classify(shares, m1, m2);
    out.push_back(hetero_wrap(shares, cls, m1, m2));
  }
  return out;
}

Schedule expand_schedule(const WorkloadPartition& p, const std::vector<OrderedInterval>& order,
                         const Platform& platform) {
  if (static_cast<int>(order.size()) != p.grid().intervals())
    throw std::invalid_argument("one ordered interval per grid interval expected");
  Schedule s;
  s.horizon = p.grid().time_seconds(p.grid().intervals());
  for (const auto& pt : platform.types) s.cores_per_type.push_back(pt.cores);

  for (int mu = 0; mu < p.grid().intervals(); ++mu) {
    double t0 = p.grid().time_seconds(mu);
    double h = p.grid().length_seconds(mu);
    // Windows per (job, type), in time order.
    std::map<std::pair<int, int>, std::vector<Window>> windows;
    for (const auto& w : order[mu].windows) windows[{w.job, w.type}].push_back(w);
    for (auto& [key, wins] : windows) {
      auto [job, type] = key;
      std::sort(wins.begin(), wins.end(),
                [](const Window& a, const Window& b) { return a.start < b.start; });
      // Level runs, slowest first.
      std::vector<std::pair<int, double>> runs;
      for (int q = 0; q < p.levels(type); ++q) {
        double w = p.omega(mu, job, type, q);
        if (w > 1e-12) runs.push_back({q, w});
      }
      size_t run = 0;
      double run_left = runs.empty() ? 0.0 : runs[0].second;
      for (const auto& win : wins) {
        double pos = win.start;
        while (pos < win.end - 1e-12 && run < runs.size()) {
          double take = std::min(run_left, win.end - pos);
          if (take > 1e-12) {
            Segment seg;
            seg.start = t0 + pos * h;
            seg.end = t0 + (pos + take) * h;
            seg.type = type;
            seg.proc = win.proc;
            seg.job = job;
            seg.speed = p.speed(type, runs[run].first);
            s.segments.push_back(seg);
          }
          pos += take;
          run_left -= take;
          if (run_left <= 1e-12) {
            ++run;
            run_left = run < runs.size() ? runs[run].second : 0.0;
          }
        }
      }
    }
  }
  std::sort(s.segments.begin(), s.segments.end(), [](const Segment& a, const Segment& b) {
    if (a.type != b.type) return a.type < b.type;
    if (a.proc != b.proc) return a.proc < b.proc;
    return a.start < b.start;
  });
  return s;
}

ScheduleReport validate(const Schedule& s, const std::vector<JobInstance>& jobs,
                        const Platform& platform, double tick_seconds, double completion_tol) {
  ScheduleReport rep;
  const double tol = 1e-9 * std::max(1.0, s.horizon);
  auto note = [&](const std::string& msg, double residual) {
    rep.violations.push_back(msg);
    rep.max_residual = std::max(rep.max_residual, residual);
  };

  // Per-processor non-overlap.
  std::map<std::pair<int, int>, std::vector<const Segment*>> per_proc;
  std::vector<std::vector<const Segment*>> per_job(jobs.size());
  for (const auto& seg : s.segments) {
    if (seg.end < seg.start - tol) note("segment with negative length", seg.start - seg.end);
    if (seg.type < 0 || seg.type >= platform.type_count()) {
      note("segment on unknown type", 1.0);
      continue;
    }
    if (seg.proc < 0 || seg.proc >= platform.types[seg.type].cores)
      note("segment on unknown processor", 1.0);
    if (seg.start < -tol || seg.end > s.horizon + tol)
      note("segment outside the horizon", std::max(-seg.start, seg.end - s.horizon));
    per_proc[{seg.type, seg.proc}].push_back(&seg);
    if (seg.job < 0 || seg.job >= static_cast<int>(jobs.size())) {
      note("segment for unknown job", 1.0);
      continue;
    }
    per_job[seg.job].push_back(&seg);
    // Speed membership.
    const auto& speeds = platform.types[seg.type].speeds;
    double best = 1e9;
    for (double sp : speeds) best = std::min(best, std::abs(sp - seg.speed));
    if (best > 1e-9)
      note("job " + jobs[seg.job].label + ": speed " + std::to_string(seg.speed) +
               " is not a platform level",
           best);
  }
  for (auto& [key, list] : per_proc) {
    std::sort(list.begin(), list.end(),
              [](const Segment* a, const Segment* b) { return a->start < b->start; });
    for (size_t k = 1; k < list.size(); ++k) {
      double overlap = list[k - 1]->end - list[k]->start;
      if (overlap > tol)
        note("type " + std::to_string(key.first) + " proc " + std::to_string(key.second) +
                 ": overlapping segments",
             overlap);
    }
  }
  for (size_t j = 0; j < jobs.size(); ++j) {
    auto& list = per_job[j];
    std::sort(list.begin(), list.end(),
              [](const Segment* a, const Segment* b) { return a->start < b->start; });
    double release = static_cast<double>(jobs[j].release) * tick_seconds;
    double deadline = static_cast<double>(jobs[j].deadline) * tick_seconds;
    double done = 0.0;
    for (size_t k = 0; k < list.size(); ++k) {
      const Segment* seg = list[k];
      if (k > 0) {
        double overlap = list[k - 1]->end - seg->start;
        if (overlap > tol)
          note("job " + jobs[j].label + ": runs on two processors at once", overlap);
      }
      if (seg->start < release - tol || seg->end > deadline + tol)
        note("job " + jobs[j].label + ": executes outside its window",
             std::max(release - seg->start, seg->end - deadline));
      done += (seg->end - seg->start) * seg->speed;
    }
    double shortfall = jobs[j].work - done;
    if (shortfall > completion_tol) {
      rep.misses.push_back({static_cast<int>(j), shortfall});
      note("job " + jobs[j].label + ": misses its deadline by " + std::to_string(shortfall) +
               " work-seconds",
           shortfall);
    }
  }

  EnergyBreakdown e = schedule_energy(s, platform);
  rep.active_mj = e.active_mj;
  rep.idle_mj = e.idle_mj;
  rep.total_mj = e.total_mj;
  SwitchCounts sw = count_context_switches(s);
  rep.preemptions = sw.preemptions;
  rep.intra_migrations[0] = sw.intra[0];
  rep.intra_migrations[1] = sw.intra[1];
  rep.inter_migrations = sw.inter;
  rep.feasible = rep.violations.empty();
  return rep;
}

EnergyBreakdown schedule_energy(const Schedule& s, const Platform& platform) {
  EnergyBreakdown e;
  std::vector<double> busy(platform.type_count(), 0.0);
  for (const auto& seg : s.segments) {
    double dur = std::max(0.0, seg.end - seg.start);
    e.active_mj += dur * eval_power(platform, seg.type, seg.speed);
    busy[seg.type] += dur;
  }
  for (int r = 0; r < platform.type_count(); ++r) {
    const auto& pt = platform.types[r];
    e.idle_mj += pt.p_idle * (pt.cores * s.horizon - busy[r]);
  }
  e.total_mj = e.active_mj + e.idle_mj;
  return e;
}

SwitchCounts count_context_switches(const Schedule& s, double tol) {
  SwitchCounts out;
  std::map<int, std::vector<const Segment*>> per_job;
  for (const auto& seg : s.segments)
    if (seg.end - seg.start > tol) per_job[seg.job].push_back(&seg);
  for (auto& [job, list] : per_job) {
    std::sort(list.begin(), list.end(),
              [](const Segment* a, const Segment* b) { return a->start < b->start; });
    std::set<std::pair<int, int>> procs;
    bool types_used[2] = {false, false};
    for (size_t k = 0; k < list.size(); ++k) {
      procs.insert({list[k]->type, list[k]->proc});
      if (list[k]->type < 2) types_used[list[k]->type] = true;
      if (k > 0 && list[k]->start - list[k - 1]->end > tol) ++out.preemptions;
    }
    int cnt[2] = {0, 0};
    for (const auto& [type, proc] : procs)
      if (type < 2) ++cnt[type];
    for (int r = 0; r < 2; ++r)
      if (cnt[r] >= 2) ++out.intra[r];
    if (types_used[0] && types_used[1]) ++out.inter;
  }
  return out;
}

FluidTrace fluid_trace(const Schedule& s, const std::vector<JobInstance>& jobs) {
  FluidTrace tr;
  std::set<double> times{0.0, s.horizon};
  for (const auto& seg : s.segments) {
    times.insert(seg.start);
    times.insert(seg.end);
  }
  tr.times.assign(times.begin(), times.end());
  tr.remaining.assign(jobs.size(), std::vector<double>(tr.times.size(), 0.0));
  for (size_t j = 0; j < jobs.size(); ++j)
    for (size_t k = 0; k < tr.times.size(); ++k) tr.remaining[j][k] = jobs[j].work;
  for (const auto& seg : s.segments) {
    if (seg.job < 0 || seg.job >= static_cast<int>(jobs.size())) continue;
    for (size_t k = 0; k < tr.times.size(); ++k) {
      double t = tr.times[k];
      double covered = std::max(0.0, std::min(t, seg.end) - seg.start);
      tr.remaining[seg.job][k] -= covered * seg.speed;
    }
  }
  for (auto& row : tr.remaining)
    for (auto& v : row) v = std::max(v, 0.0);
  return tr;
}

}  // namespace hetsched
