#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "hetsched/model.hpp"
#include "hetsched/partition.hpp"
#include "hetsched/schedule.hpp"

using namespace hetsched;

namespace {

// Two cores whose fitted law lands exactly on 1142 mW at full speed.
Platform synth_platform() {
  Platform p;
  ProcType t;
  t.name = "core";
  t.cores = 2;
  t.speeds = {0.5, 1.0};
  t.alpha = 1072.0;
  t.beta = 2.0;
  t.p_static = 70.0;
  t.p_idle = 30.0;
  p.types = {t};
  return p;
}

Platform two_type_platform() {
  Platform p = synth_platform();
  p.types[0].cores = 1;
  ProcType slow;
  slow.name = "slow";
  slow.cores = 1;
  slow.speeds = {0.25, 0.5};
  slow.alpha = 500.0;
  slow.beta = 2.0;
  slow.p_static = 10.0;
  slow.p_idle = 5.0;
  p.types.push_back(slow);
  return p;
}

JobInstance make_job(int idx, Ticks release, Ticks deadline, double work) {
  JobInstance j;
  j.task_index = idx;
  j.instance = 0;
  j.label = "J" + std::to_string(idx) + "#0";
  j.release = release;
  j.deadline = deadline;
  j.work = work;
  return j;
}

Schedule make_schedule(double horizon, std::vector<int> cores,
                       std::vector<Segment> segments) {
  Schedule s;
  s.horizon = horizon;
  s.cores_per_type = std::move(cores);
  s.segments = std::move(segments);
  return s;
}

bool mentions(const ScheduleReport& rep, const std::string& phrase) {
  for (const auto& v : rep.violations)
    if (v.find(phrase) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("schedule_energy prices busy and idle time from the platform") {
  Platform p = synth_platform();

  SUBCASE("one core flat out for a second") {
    auto s = make_schedule(1.0, {2}, {{0.0, 1.0, 0, 0, 0, 1.0}});
    auto e = schedule_energy(s, p);
    CHECK(e.active_mj == doctest::Approx(1142.0).epsilon(1e-12));
    CHECK(e.idle_mj == doctest::Approx(30.0).epsilon(1e-12));  // the second core
    CHECK(e.total_mj == doctest::Approx(1172.0).epsilon(1e-12));
  }
  SUBCASE("an empty two-core system pays only the idle floor") {
    Platform little;
    ProcType t;
    t.name = "LITTLE";
    t.cores = 2;
    t.speeds = {0.375};
    t.alpha = 1103.17;
    t.beta = 2.3034;
    t.p_static = 18.3549;
    t.p_idle = 12.0;
    little.types = {t};
    auto s = make_schedule(10.0, {2}, {});
    auto e = schedule_energy(s, little);
    CHECK(e.active_mj == 0.0);
    CHECK(e.total_mj == doctest::Approx(240.0).epsilon(1e-12));
  }
  SUBCASE("energy adds over split segments") {
    auto joined = make_schedule(1.0, {2}, {{0.0, 1.0, 0, 0, 0, 0.5}});
    auto split = make_schedule(
        1.0, {2}, {{0.0, 0.4, 0, 0, 0, 0.5}, {0.4, 1.0, 0, 0, 0, 0.5}});
    CHECK(schedule_energy(joined, p).total_mj ==
          doctest::Approx(schedule_energy(split, p).total_mj).epsilon(1e-12));
  }
}

TEST_CASE("validate passes a correct schedule and mirrors its energy") {
  Platform p = synth_platform();
  std::vector<JobInstance> jobs = {make_job(0, 0, 1000, 0.6)};
  auto s = make_schedule(1.0, {2},
                         {{0.0, 0.8, 0, 0, 0, 0.5}, {0.8, 1.0, 0, 0, 0, 1.0}});

  auto rep = validate(s, jobs, p);
  CHECK(rep.feasible);
  CHECK(rep.violations.empty());
  CHECK(rep.misses.empty());
  CHECK(rep.preemptions == 0);
  CHECK(rep.inter_migrations == 0);

  auto e = schedule_energy(s, p);
  CHECK(rep.active_mj == doctest::Approx(e.active_mj).epsilon(1e-12));
  CHECK(rep.total_mj == doctest::Approx(e.total_mj).epsilon(1e-12));
  CHECK(rep.active_mj == doctest::Approx(0.8 * 338.0 + 0.2 * 1142.0).epsilon(1e-12));
}

TEST_CASE("every violation class is flagged by name") {
  Platform p = synth_platform();

  SUBCASE("two jobs sharing a processor instant") {
    std::vector<JobInstance> jobs = {make_job(0, 0, 1000, 0.5), make_job(1, 0, 1000, 0.5)};
    auto s = make_schedule(1.0, {2},
                           {{0.0, 0.5, 0, 0, 0, 1.0}, {0.4, 0.9, 0, 0, 1, 1.0}});
    auto rep = validate(s, jobs, p);
    CHECK(!rep.feasible);
    CHECK(mentions(rep, "overlapping segments"));
  }
  SUBCASE("one job on two processors at once") {
    std::vector<JobInstance> jobs = {make_job(0, 0, 1000, 0.5)};
    auto s = make_schedule(1.0, {2},
                           {{0.0, 0.5, 0, 0, 0, 0.5}, {0.3, 0.8, 0, 1, 0, 0.5}});
    auto rep = validate(s, jobs, p);
    CHECK(!rep.feasible);
    CHECK(mentions(rep, "runs on two processors at once"));
  }
  SUBCASE("execution before the release") {
    std::vector<JobInstance> jobs = {make_job(0, 200, 1000, 0.6)};
    auto s = make_schedule(1.0, {2}, {{0.1, 0.7, 0, 0, 0, 1.0}});
    auto rep = validate(s, jobs, p);
    CHECK(!rep.feasible);
    CHECK(mentions(rep, "executes outside its window"));
  }
  SUBCASE("speed not drawn from the platform levels") {
    std::vector<JobInstance> jobs = {make_job(0, 0, 1000, 0.6)};
    auto s = make_schedule(1.0, {2}, {{0.0, 0.8, 0, 0, 0, 0.75}});
    auto rep = validate(s, jobs, p);
    CHECK(!rep.feasible);
    CHECK(mentions(rep, "not a platform level"));
  }
  SUBCASE("unfinished work becomes a deadline miss with the residual") {
    std::vector<JobInstance> jobs = {make_job(0, 0, 1000, 0.6)};
    auto s = make_schedule(1.0, {2}, {{0.0, 0.5, 0, 0, 0, 1.0}});
    auto rep = validate(s, jobs, p);
    CHECK(!rep.feasible);
    REQUIRE(rep.misses.size() == 1);
    CHECK(rep.misses[0].first == 0);
    CHECK(rep.misses[0].second == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(mentions(rep, "misses its deadline"));
  }
  SUBCASE("segment spilling past the horizon") {
    std::vector<JobInstance> jobs = {make_job(0, 0, 2000, 1.2)};
    auto s = make_schedule(1.0, {2}, {{0.0, 1.2, 0, 0, 0, 1.0}});
    auto rep = validate(s, jobs, p);
    CHECK(mentions(rep, "outside the horizon"));
  }
}

TEST_CASE("context switches split into preemptions and migrations") {
  SUBCASE("a gap on the same processor is a preemption") {
    auto s = make_schedule(1.0, {2},
                           {{0.0, 0.3, 0, 0, 0, 1.0}, {0.5, 0.8, 0, 0, 0, 1.0}});
    auto sw = count_context_switches(s);
    CHECK(sw.preemptions == 1);
    CHECK(sw.intra[0] == 0);
    CHECK(sw.inter == 0);
  }
  SUBCASE("back-to-back on two processors of one type is an intra migration") {
    auto s = make_schedule(1.0, {2},
                           {{0.0, 0.3, 0, 0, 0, 1.0}, {0.3, 0.6, 0, 1, 0, 1.0}});
    auto sw = count_context_switches(s);
    CHECK(sw.preemptions == 0);
    CHECK(sw.intra[0] == 1);
    CHECK(sw.inter == 0);
  }
  SUBCASE("touching both types is an inter migration") {
    auto s = make_schedule(1.0, {1, 1},
                           {{0.0, 0.3, 0, 0, 0, 1.0}, {0.3, 0.6, 1, 0, 0, 0.5}});
    auto sw = count_context_switches(s);
    CHECK(sw.inter == 1);
    CHECK(sw.intra[0] == 0);
    CHECK(sw.intra[1] == 0);
  }
  SUBCASE("hairline gaps below the tolerance do not count") {
    auto s = make_schedule(1.0, {2},
                           {{0.0, 0.3, 0, 0, 0, 1.0}, {0.3 + 1e-13, 0.6, 0, 0, 0, 1.0}});
    CHECK(count_context_switches(s).preemptions == 0);
  }
}

TEST_CASE("fluid_trace tracks remaining work through every event") {
  std::vector<JobInstance> jobs = {make_job(0, 0, 1000, 0.6)};
  auto s = make_schedule(1.0, {2},
                         {{0.0, 0.8, 0, 0, 0, 0.5}, {0.8, 1.0, 0, 0, 0, 1.0}});
  auto tr = fluid_trace(s, jobs);

  REQUIRE(tr.remaining.size() == 1);
  REQUIRE(tr.remaining[0].size() == tr.times.size());
  CHECK(tr.times.front() == doctest::Approx(0.0));
  CHECK(tr.times.back() == doctest::Approx(1.0));
  CHECK(tr.remaining[0].front() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(tr.remaining[0].back() == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  for (size_t k = 1; k < tr.times.size(); ++k) {
    CHECK(tr.times[k] >= tr.times[k - 1]);
    CHECK(tr.remaining[0][k] <= tr.remaining[0][k - 1] + 1e-12);
  }
  // The 0.8 s switch point must be an event, with 0.4 work done by then.
  bool found = false;
  for (size_t k = 0; k < tr.times.size(); ++k)
    if (std::abs(tr.times[k] - 0.8) < 1e-12 &&
        std::abs(tr.remaining[0][k] - 0.2) < 1e-9)
      found = true;
  CHECK(found);
}

TEST_CASE("partition to schedule round trip stays feasible and on budget") {
  Platform p = two_type_platform();
  TaskSpec a;
  a.id = "A";
  a.work = 0.0004;
  a.period = 4;
  a.deadline = 4;
  TaskSpec b;
  b.id = "B";
  b.work = 0.0005;
  b.period = 5;
  b.deadline = 5;

  auto st = taskset_stats({a, b}, p);
  auto jobs = expand_periodic({a, b}, st.horizon);
  auto grid = build_major_grid(jobs);
  auto res = solve_lp_dvfs(jobs, grid, p);
  REQUIRE(res.status == lp::Status::Optimal);

  WorkloadPartition part = *res.partition;
  PartitionEnergy planned = partition_energy(part, p);
  reduce_intercluster(part, p);
  auto order = order_all_intervals(part, p);
  Schedule s = expand_schedule(part, order, p);
  auto rep = validate(s, jobs, p);

  CHECK(rep.feasible);
  CHECK(rep.misses.empty());
  CHECK(rep.total_mj == doctest::Approx(planned.total_mj).epsilon(1e-9));
}
