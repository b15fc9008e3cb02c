#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hetsched/model.hpp"

using namespace hetsched;

namespace {

Platform two_type_platform() {
  Platform p;
  p.f_max = 1.0;
  ProcType big;
  big.name = "big";
  big.cores = 2;
  big.speeds = {0.5, 0.5625, 0.625, 0.6875, 0.75, 0.8125, 0.875, 0.9375, 1.0};
  big.alpha = 1063.9;
  big.beta = 2.2;
  big.p_static = 95.9075;
  big.p_idle = 70.0;
  ProcType little;
  little.name = "LITTLE";
  little.cores = 6;
  little.speeds = {0.15625, 0.1875, 0.25, 0.3125, 0.375};
  little.alpha = 1103.17;
  little.beta = 2.3034;
  little.p_static = 18.3549;
  little.p_idle = 12.0;
  p.types = {big, little};
  return p;
}

TaskSpec periodic(std::string id, double work, Ticks period, Ticks deadline = 0) {
  TaskSpec t;
  t.id = std::move(id);
  t.work = work;
  t.period = period;
  t.deadline = deadline > 0 ? deadline : period;
  return t;
}

TaskSpec one_shot(std::string id, double work, Ticks arrival, Ticks deadline) {
  TaskSpec t;
  t.id = std::move(id);
  t.work = work;
  t.arrival = arrival;
  t.deadline = deadline;
  return t;
}

}  // namespace

TEST_CASE("hyperperiod is the lcm of the periodic tasks") {
  std::vector<TaskSpec> tasks = {periodic("A", 0.001, 4), periodic("B", 0.001, 6)};
  CHECK(hyperperiod(tasks) == 12);

  tasks.push_back(one_shot("C", 0.001, 0, 5));  // one-shots do not move the lcm
  CHECK(hyperperiod(tasks) == 12);

  std::vector<TaskSpec> only_shots = {one_shot("C", 0.001, 0, 5)};
  CHECK_THROWS_AS(hyperperiod(only_shots), std::exception);
}

TEST_CASE("expand_periodic unrolls releases and keeps absolute deadlines") {
  std::vector<TaskSpec> tasks = {periodic("A", 0.002, 4), one_shot("B", 0.001, 3, 5)};
  auto jobs = expand_periodic(tasks, 12);
  REQUIRE(jobs.size() == 4);

  CHECK(jobs[0].label == "A#0");
  CHECK(jobs[1].label == "A#1");
  CHECK(jobs[2].label == "A#2");
  CHECK(jobs[0].release == 0);
  CHECK(jobs[1].release == 4);
  CHECK(jobs[2].release == 8);
  CHECK(jobs[0].deadline == 4);
  CHECK(jobs[1].deadline == 8);
  CHECK(jobs[2].deadline == 12);
  for (int k = 0; k < 3; ++k) {
    CHECK(jobs[k].task_index == 0);
    CHECK(jobs[k].instance == k);
    CHECK(jobs[k].work == doctest::Approx(0.002));
  }

  CHECK(jobs[3].label == "B#0");
  CHECK(jobs[3].release == 3);
  CHECK(jobs[3].deadline == 8);

  SUBCASE("a release at the horizon is excluded") {
    auto short_jobs = expand_periodic({periodic("A", 0.002, 4)}, 8);
    CHECK(short_jobs.size() == 2);
  }
  SUBCASE("work beyond the window length at unit speed is hopeless") {
    // 6 ms of work in a 5 ms window cannot finish even at speed 1.
    CHECK_THROWS_AS(expand_periodic({one_shot("B", 0.006, 0, 5)}, 5), std::exception);
  }
}

TEST_CASE("build_major_grid collects every release and deadline once") {
  std::vector<TaskSpec> tasks = {periodic("A", 0.002, 4), one_shot("B", 0.001, 3, 5)};
  auto jobs = expand_periodic(tasks, 12);
  auto grid = build_major_grid(jobs);

  REQUIRE(grid.bounds == std::vector<Ticks>{0, 3, 4, 8, 12});
  CHECK(grid.intervals() == 4);
  CHECK(grid.length_seconds(0) == doctest::Approx(0.003));
  CHECK(grid.length_seconds(3) == doctest::Approx(0.004));
  CHECK(grid.time_seconds(2) == doctest::Approx(0.004));
  CHECK(grid.index_of(4) == 2);
  CHECK(grid.index_of(0) == 0);
  CHECK_THROWS_AS(grid.index_of(5), std::exception);
}

TEST_CASE("taskset_stats computes densities against the unit reference speed") {
  Platform p = two_type_platform();
  std::vector<TaskSpec> tasks = {periodic("A", 0.002, 4),  // density 0.5
                                 periodic("B", 0.003, 12, 6)};  // constrained: work / min(D,T)
  auto st = taskset_stats(tasks, p);

  REQUIRE(st.densities.size() == 2);
  CHECK(st.densities[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(st.densities[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(st.total_density == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(st.capacity == doctest::Approx(2 * 1.0 + 6 * 0.375).epsilon(1e-12));
  CHECK(st.hyperperiod == 12);
  CHECK(st.horizon == 12);

  SUBCASE("one-shot only tasksets use the latest deadline as horizon") {
    auto st2 = taskset_stats({one_shot("C", 0.001, 2, 5)}, p);
    CHECK(st2.hyperperiod == 0);
    CHECK(st2.horizon == 7);
  }
}

TEST_CASE("eval_power matches the declared power law inside the speed range") {
  Platform p = two_type_platform();
  CHECK(eval_power(p, 0, 1.0) == doctest::Approx(1063.9 + 95.9075).epsilon(1e-12));
  CHECK(eval_power(p, 0, 0.5) ==
        doctest::Approx(1063.9 * std::pow(0.5, 2.2) + 95.9075).epsilon(1e-12));
  CHECK(eval_power(p, 1, 0.375) ==
        doctest::Approx(1103.17 * std::pow(0.375, 2.3034) + 18.3549).epsilon(1e-12));
  CHECK(eval_power(p, 1, 0.15625) ==
        doctest::Approx(1103.17 * std::pow(0.15625, 2.3034) + 18.3549).epsilon(1e-12));

  CHECK_THROWS_AS(eval_power(p, 0, 0.4), std::exception);   // below the big range
  CHECK_THROWS_AS(eval_power(p, 0, 1.01), std::exception);  // above it
  CHECK_THROWS_AS(eval_power(p, 1, 0.5), std::exception);   // above the LITTLE range
}

TEST_CASE("screen_taskset flags densities the platform can never serve") {
  Platform p = two_type_platform();

  SUBCASE("a fitting taskset passes silently") {
    std::vector<TaskSpec> ok = {periodic("A", 0.0015, 4), periodic("B", 0.001, 4)};
    CHECK(screen_taskset(ok, p).empty());
  }
  SUBCASE("a task denser than the weakest top speed is called out by id") {
    std::vector<TaskSpec> bad = {periodic("H", 0.002, 4)};  // density 0.5 > 0.375
    auto issues = screen_taskset(bad, p);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].find("H") != std::string::npos);
  }
  SUBCASE("total density above capacity is reported") {
    std::vector<TaskSpec> heavy;
    for (int i = 0; i < 12; ++i)
      heavy.push_back(periodic("T" + std::to_string(i), 0.0015, 4));  // 12 * 0.375 = 4.5 > 4.25
    auto issues = screen_taskset(heavy, p);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].find("capacity") != std::string::npos);
  }
}

TEST_CASE("validate_platform rejects malformed level sets") {
  Platform p = two_type_platform();
  CHECK(validate_platform(p).empty());

  SUBCASE("speeds must ascend strictly") {
    Platform q = p;
    q.types[0].speeds = {0.5, 0.5, 1.0};
    CHECK_THROWS_AS(validate_platform(q), std::invalid_argument);
    q.types[0].speeds = {1.0, 0.5};
    CHECK_THROWS_AS(validate_platform(q), std::invalid_argument);
  }
  SUBCASE("speeds live in (0, 1]") {
    Platform q = p;
    q.types[1].speeds = {0.0, 0.375};
    CHECK_THROWS_AS(validate_platform(q), std::invalid_argument);
    q.types[1].speeds = {0.375, 1.5};
    CHECK_THROWS_AS(validate_platform(q), std::invalid_argument);
  }
  SUBCASE("at most two types") {
    Platform q = p;
    q.types.push_back(p.types[0]);
    CHECK_THROWS_AS(validate_platform(q), std::invalid_argument);
    q.types.clear();
    CHECK_THROWS_AS(validate_platform(q), std::invalid_argument);
  }
  SUBCASE("a top speed below 1 is advisory, not fatal") {
    Platform q;
    q.types = {p.types[1]};  // LITTLE only, top 0.375
    auto notes = validate_platform(q);
    CHECK(!notes.empty());
  }
}

TEST_CASE("make_speed_grid spans each range uniformly and nests when doubled") {
  Platform p = two_type_platform();
  Platform g5 = make_speed_grid(p, 5);

  REQUIRE(g5.types[0].speeds.size() == 5);
  CHECK(g5.types[0].speeds.front() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g5.types[0].speeds.back() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g5.types[0].speeds[2] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(g5.types[1].speeds.front() == doctest::Approx(0.15625).epsilon(1e-15));
  CHECK(g5.types[1].speeds.back() == doctest::Approx(0.375).epsilon(1e-15));

  // Doubling the interval count keeps every old level: 2 -> 3 -> 5 -> 9.
  std::vector<int> chain = {2, 3, 5, 9};
  for (size_t k = 0; k + 1 < chain.size(); ++k) {
    Platform coarse = make_speed_grid(p, chain[k]);
    Platform fine = make_speed_grid(p, chain[k + 1]);
    for (int r = 0; r < 2; ++r) {
      for (double s : coarse.types[r].speeds) {
        bool found = false;
        for (double f : fine.types[r].speeds)
          if (std::abs(f - s) < 1e-12) found = true;
        CHECK(found);
      }
    }
  }

  // Power model and core counts carry over untouched.
  CHECK(g5.types[0].alpha == p.types[0].alpha);
  CHECK(g5.types[0].cores == p.types[0].cores);
  CHECK_THROWS_AS(make_speed_grid(p, 1), std::exception);
}
