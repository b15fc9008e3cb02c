// Acceptance gate: one line per criterion, nonzero exit when any line fails.
// Every tolerance is pinned next to the check it governs; nothing here reads
// configuration. Run from anywhere, fixtures resolve through the compiled-in
// data directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hetsched/baselines.hpp"
#include "hetsched/io.hpp"
#include "hetsched/model.hpp"
#include "hetsched/oracle.hpp"
#include "hetsched/ordering.hpp"
#include "hetsched/partition.hpp"
#include "hetsched/pipeline.hpp"
#include "hetsched/speed_profile.hpp"

namespace fs = std::filesystem;
using namespace hetsched;

namespace {

const std::string kData = HETSCHED_DATA_DIR;

struct Line {
  bool ok = false;
  std::string detail;
};

std::string fmt(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
  return buf;
}

std::vector<fs::path> fixture_files(const std::string& subdir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(kData + "/tasksets/" + subdir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12}); }

// Measured operating points the fitted power laws are judged against.
const std::vector<SpeedPoint> kBigMeasured = {
    {0.5, 327}, {0.5625, 392}, {0.625, 472},  {0.6875, 562}, {0.75, 661},
    {0.8125, 742}, {0.875, 874}, {0.9375, 1019}, {1.0, 1142}};
const std::vector<SpeedPoint> kLittleMeasured = {
    {0.15625, 32}, {0.1875, 42}, {0.25, 64}, {0.3125, 92}, {0.375, 134}};

// ---- criteria 1-3: fixture sweeps ------------------------------------------

struct FixtureRun {
  std::string name;
  double lp = 0.0, gwa = 0.0;
  bool lp_ok = false, gwa_ok = false;
  size_t misses = 0, violations = 0;
};

struct SweepData {
  std::vector<FixtureRun> runs;
  double lp_seconds = 0.0;
};

SweepData run_fixtures(const std::string& subdir, const Platform& platform) {
  SweepData out;
  for (const auto& path : fixture_files(subdir)) {
    FixtureRun run;
    run.name = path.stem().string();
    auto tasks = load_taskset(path.string(), platform.f_max);
    auto t0 = std::chrono::steady_clock::now();
    auto lp = run_pipeline(tasks, platform, Algorithm::LpDvfs);
    out.lp_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    run.lp_ok = lp.feasible;
    run.lp = lp.energy_mj;
    run.misses = lp.report.misses.size();
    run.violations = lp.report.violations.size();
    auto gwa = run_pipeline(tasks, platform, Algorithm::GwaDDiscrete);
    run.gwa_ok = gwa.feasible;
    run.gwa = gwa.energy_mj;
    out.runs.push_back(std::move(run));
  }
  return out;
}

Line criterion1(const SweepData& d) {
  size_t feasible = 0, misses = 0, violations = 0;
  for (const auto& r : d.runs) {
    feasible += r.lp_ok;
    misses += r.misses;
    violations += r.violations;
  }
  bool ok = d.runs.size() == 16 && feasible == 16 && misses == 0 && violations == 0 &&
            d.lp_seconds < 5.0;
  std::ostringstream os;
  os << feasible << "/" << d.runs.size() << " feasible, " << misses << " deadline misses, "
     << violations << " violations, " << fmt(d.lp_seconds) << " s solve+validate (budget 5 s)";
  return {ok, os.str()};
}

Line criterion2(const SweepData& d) {
  double worst = 0.0;
  std::string where = "-";
  bool solved = true;
  for (const auto& r : d.runs) {
    solved = solved && r.lp_ok && r.gwa_ok;
    double g = rel_gap(r.lp, r.gwa);
    if (g > worst) {
      worst = g;
      where = r.name;
    }
  }
  bool ok = solved && worst <= 1e-6;
  return {ok, "largest relative energy gap " + fmt(worst) + " (at " + where + ", tolerance 1e-6)"};
}

Line criterion3(const SweepData& d) {
  double best_gain = 0.0;
  std::string best_name = "-", bad;
  for (const auto& r : d.runs) {
    if (!r.lp_ok || !r.gwa_ok) bad = r.name + " did not solve";
    if (r.lp > r.gwa * (1.0 + 1e-9)) bad = r.name + " lp above gwa";
    double gain = (r.gwa - r.lp) / r.gwa;
    if (gain > best_gain) {
      best_gain = gain;
      best_name = r.name;
    }
  }
  bool ok = bad.empty() && d.runs.size() == 10 && best_gain > 0.01;
  std::ostringstream os;
  if (!bad.empty()) os << bad << "; ";
  os << "lp <= gwa-ddiscrete on " << d.runs.size() << "/" << d.runs.size()
     << " tasksets, best saving " << fmt(100.0 * best_gain) << "% at " << best_name
     << " (need > 1% somewhere)";
  return {ok, os.str()};
}

// ---- criterion 4: power-model fit ------------------------------------------

Line criterion4(const Platform& platform) {
  auto mape = [&](int type, const std::vector<SpeedPoint>& measured) {
    double sum = 0.0;
    for (const auto& p : measured) sum += std::abs(eval_power(platform, type, p.speed) - p.power) / p.power;
    return 100.0 * sum / static_cast<double>(measured.size());
  };
  double big = mape(0, kBigMeasured);
  double little = mape(1, kLittleMeasured);
  bool ok = big <= 1.5 && little <= 2.0;
  return {ok, "MAPE big " + fmt(big) + "% (cap 1.5%), LITTLE " + fmt(little) + "% (cap 2.0%)"};
}

// ---- criterion 5: two-speed compression ------------------------------------

// Cheapest active energy any mixture can reach for `demand` over a unit
// interval: single level plus idle, exact two-level brackets, and a dense
// lambda sweep of every pair with an idle gap.
double mixture_oracle(const std::vector<SpeedPoint>& t, double d) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : t)
    if (p.speed >= d - 1e-15) best = std::min(best, d / p.speed * p.power);
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = i + 1; j < t.size(); ++j) {
      if (t[i].speed <= d + 1e-15 && d <= t[j].speed + 1e-15) {
        double lam = std::clamp((t[j].speed - d) / (t[j].speed - t[i].speed), 0.0, 1.0);
        best = std::min(best, lam * t[i].power + (1.0 - lam) * t[j].power);
      }
      for (int k = 0; k <= 200; ++k) {
        double lam = k / 200.0;
        double s = lam * t[i].speed + (1.0 - lam) * t[j].speed;
        if (s >= d - 1e-15)
          best = std::min(best, d / s * (lam * t[i].power + (1.0 - lam) * t[j].power));
      }
    }
  return best;
}

Line criterion5(const Platform& platform) {
  std::vector<std::pair<std::string, std::vector<SpeedPoint>>> tables = {
      {"big measured", kBigMeasured}, {"LITTLE measured", kLittleMeasured}};
  for (int r = 0; r < platform.type_count(); ++r) {
    std::vector<SpeedPoint> t;
    for (double s : platform.types[r].speeds) t.push_back({s, eval_power(platform, r, s)});
    tables.emplace_back(platform.types[r].name + " fitted", std::move(t));
  }

  std::mt19937 rng(50001);
  std::uniform_int_distribution<int> nseg(1, 8);
  std::uniform_real_distribution<double> dur(0.05, 1.0);
  double worst_work = 0.0, worst_up = 0.0;
  long profiles = 0;
  for (const auto& [name, table] : tables) {
    std::uniform_int_distribution<size_t> pick(0, table.size() - 1);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<ProfileSegment> prof(nseg(rng));
      double total = 0.0, work = 0.0;
      for (auto& seg : prof) {
        seg.duration = dur(rng);
        seg.speed = table[pick(rng)].speed;
        total += seg.duration;
        work += seg.duration * seg.speed;
      }
      double before = profile_energy(prof, table);
      auto two = compress_profile(prof, table);
      worst_work = std::max(worst_work, std::abs(two.average_speed() * total - work) /
                                            std::max(1.0, work));
      worst_up = std::max(worst_up, (two.active_energy(total) - before) / std::max(1.0, before));
      ++profiles;
    }
  }
  bool compress_ok = worst_work <= 1e-12 && worst_up <= 1e-9;

  // Dense demand sweep against the enumerated-mixture oracle.
  double worst_margin = -std::numeric_limits<double>::infinity();
  std::string worst_at = "-";
  long demands = 0;
  for (const auto& [name, table] : tables) {
    double top = table.back().speed;
    for (int k = 1; k <= 400; ++k) {
      double d = top * k / 400.0;
      auto prof = two_speed_for_demand(table, d);
      double mine = prof ? prof->active_energy(1.0) : 0.0;
      double oracle = mixture_oracle(table, d);
      double margin = (mine - oracle) / std::max(1.0, oracle);
      if (margin > worst_margin) {
        worst_margin = margin;
        worst_at = name + " demand " + fmt(d);
      }
      ++demands;
    }
  }
  bool sweep_ok = worst_margin <= 1e-9;

  std::ostringstream os;
  os << profiles << " profiles: work drift " << fmt(worst_work) << ", energy increase "
     << fmt(worst_up) << "; " << demands << " demands: worst margin over mixture oracle "
     << fmt(worst_margin) << " (" << worst_at << ")";
  return {compress_ok && sweep_ok, os.str()};
}

// ---- criterion 6: wrap-around packing --------------------------------------

struct WrapCase {
  std::vector<JobShare> shares;
  int m1 = 1, m2 = 1;
};

// Random interval workloads the classifier accepts: up to 3 full migrants, at
// most one partial, singles on both clusters, rejected until loads fit.
std::optional<WrapCase> random_wrap_case(std::mt19937& rng) {
  std::uniform_int_distribution<int> cores(1, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WrapCase wc;
  wc.m1 = cores(rng);
  wc.m2 = cores(rng);
  for (int attempt = 0; attempt < 30; ++attempt) {
    std::vector<JobShare> shares;
    int next = 0;
    double load[2] = {0.0, 0.0};
    int fulls = static_cast<int>(u(rng) * 4.0);
    for (int i = 0; i < fulls; ++i) {
      double split = 0.05 + 0.9 * u(rng);
      shares.push_back({next++, {split, 1.0 - split}});
      load[0] += split;
      load[1] += 1.0 - split;
    }
    if (u(rng) < 0.5) {
      double busy = 0.2 + 0.7 * u(rng);
      double split = 0.1 + 0.8 * u(rng);
      shares.push_back({next++, {busy * split, busy * (1.0 - split)}});
      load[0] += busy * split;
      load[1] += busy * (1.0 - split);
    }
    int singles = static_cast<int>(u(rng) * 5.0);
    for (int i = 0; i < singles; ++i) {
      int cluster = u(rng) < 0.5 ? 0 : 1;
      JobShare js;
      js.job = next++;
      js.share[cluster] = 0.05 + 0.9 * u(rng);
      shares.push_back(js);
      load[cluster] += js.share[cluster];
    }
    if (!shares.empty() && load[0] <= wc.m1 - 1e-9 && load[1] <= wc.m2 - 1e-9) {
      wc.shares = std::move(shares);
      return wc;
    }
  }
  return std::nullopt;
}

Line criterion6() {
  // Reference instance: two full migrants, one partial, one single per cluster
  // on 2+2 cores; classification and window layout are pinned by hand.
  std::vector<JobShare> ref = {
      {0, {0.3, 0.7}}, {1, {0.6, 0.4}}, {2, {0.2, 0.4}}, {3, {0.5, 0.0}}, {4, {0.0, 0.5}}};
  auto cls = classify(ref, 2, 2);
  bool ref_ok = cls.migrating_full == std::vector<int>{0, 1} &&
                cls.migrating_partial == std::vector<int>{2} &&
                cls.single[0] == std::vector<int>{3} && cls.single[1] == std::vector<int>{4};

  std::mt19937 rng(60001);
  long checked = 0, with_migrants = 0;
  std::string fail;
  while (checked < 10000 && fail.empty()) {
    auto wc = random_wrap_case(rng);
    if (!wc) continue;
    IntervalClassification c;
    OrderedInterval ord;
    try {
      c = classify(wc->shares, wc->m1, wc->m2);
      ord = hetero_wrap(wc->shares, c, wc->m1, wc->m2);
    } catch (const std::exception& e) {
      fail = std::string("throw: ") + e.what();
      break;
    }
    if (!c.migrating_full.empty() || !c.migrating_partial.empty()) ++with_migrants;

    int njobs = 0;
    for (const auto& s : wc->shares) njobs = std::max(njobs, s.job + 1);
    std::vector<std::vector<Window>> per_job(njobs);
    std::map<std::pair<int, int>, std::vector<Window>> per_proc;
    std::vector<std::vector<double>> mass(njobs, std::vector<double>(2, 0.0));
    for (const auto& w : ord.windows) {
      if (w.start < -1e-9 || w.end > 1.0 + 1e-9 || w.start > w.end + 1e-12) {
        fail = "window out of range";
        break;
      }
      per_job[w.job].push_back(w);
      per_proc[{w.type, w.proc}].push_back(w);
      mass[w.job][w.type] += w.end - w.start;
    }
    auto overlaps = [](std::vector<Window>& ws) {
      std::sort(ws.begin(), ws.end(), [](const Window& a, const Window& b) { return a.start < b.start; });
      for (size_t i = 1; i < ws.size(); ++i)
        if (ws[i].start < ws[i - 1].end - 1e-9) return true;
      return false;
    };
    for (auto& ws : per_job)
      if (overlaps(ws)) fail = "job self-overlap";
    for (auto& [proc, ws] : per_proc) {
      double load = 0.0;
      for (const auto& w : ws) load += w.end - w.start;
      if (load > 1.0 + 1e-9) fail = "processor overloaded";
      if (overlaps(ws)) fail = "processor double-booked";
    }
    for (const auto& s : wc->shares)
      for (int r = 0; r < 2; ++r)
        if (std::abs(mass[s.job][r] - s.share[r]) > 1e-12) fail = "work not preserved";
    auto counts = migration_counts(ord);
    if (counts.intra[0] > wc->m1 - 1 || counts.intra[1] > wc->m2 - 1)
      fail = "too many intra-cluster migrations";
    ++checked;
  }

  bool ok = ref_ok && fail.empty() && checked == 10000;
  std::ostringstream os;
  if (!ref_ok) os << "reference classification mismatch; ";
  if (!fail.empty()) os << "instance " << checked << ": " << fail << "; ";
  os << checked << " random intervals clean (" << with_migrants << " with migrating jobs)";
  return {ok, os.str()};
}

// ---- criterion 7: interval vertex structure --------------------------------

struct VertexStats {
  long intervals = 0;
  int worst_partials = 0;
  long entry_violations = 0;
  long worst_excess = std::numeric_limits<long>::min();
  long worst_entries = 0, worst_allowed = 0;
  std::string worst_where = "-";
};

void scan_partition(const WorkloadPartition& p, const std::string& tag, VertexStats& vs) {
  const double tol = 1e-9;
  for (int mu = 0; mu < p.grid().intervals(); ++mu) {
    int partials = 0, active = 0;
    long entries = 0;
    for (int i = 0; i < p.num_jobs(); ++i) {
      double share[2] = {0.0, 0.0};
      for (int r = 0; r < p.num_types(); ++r) {
        share[r] = p.type_share(mu, i, r);
        for (int q = 0; q < p.levels(r); ++q)
          if (p.omega(mu, i, r, q) > tol) ++entries;
      }
      double busy = share[0] + share[1];
      if (busy > tol) ++active;
      if (p.num_types() == 2 && share[0] > tol && share[1] > tol && busy < 1.0 - 1e-7) ++partials;
    }
    ++vs.intervals;
    vs.worst_partials = std::max(vs.worst_partials, partials);
    long allowed = active + 2;
    if (entries > allowed) {
      ++vs.entry_violations;
      if (entries - allowed > vs.worst_excess) {
        vs.worst_excess = entries - allowed;
        vs.worst_entries = entries;
        vs.worst_allowed = allowed;
        vs.worst_where = tag + " interval " + std::to_string(mu);
      }
    }
  }
}

Line criterion7(const Platform& big_little, const Platform& pair) {
  VertexStats vs;
  for (const auto& [subdir, plat] : std::vector<std::pair<std::string, const Platform*>>{
           {"implicit", &big_little}, {"constrained", &pair}}) {
    for (const auto& path : fixture_files(subdir)) {
      auto tasks = load_taskset(path.string(), plat->f_max);
      for (auto algo : {Algorithm::LpDvfs, Algorithm::GwaDDiscrete}) {
        auto res = run_pipeline(tasks, *plat, algo);
        if (!res.feasible) return {false, "fixture " + path.stem().string() + " infeasible"};
        scan_partition(*res.partition, subdir + "/" + path.stem().string() + " " +
                                           algorithm_name(algo), vs);
      }
    }
  }
  long fixture_intervals = vs.intervals;
  long fixture_violations = vs.entry_violations;

  // Random feasible tasksets on the 2-big + 6-LITTLE platform. Densities are
  // capped at the weakest type's top speed so the screen passes; mixed
  // implicit/constrained deadlines, hyperperiod <= 20 ms.
  std::mt19937 rng(70001);
  std::uniform_int_distribution<int> ntasks(2, 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Ticks periods[] = {4, 5, 10, 20};
  const double capacity = 4.25, cap = 0.37;
  long kept = 0, attempts = 0;
  while (kept < 1000 && attempts < 100000) {
    ++attempts;
    int n = ntasks(rng);
    std::vector<double> raw(n);
    double sum = 0.0;
    for (auto& r : raw) sum += (r = 0.05 + 0.95 * u(rng));
    double scale = (0.3 + 0.68 * u(rng)) * capacity / sum;
    std::vector<TaskSpec> tasks;
    for (int i = 0; i < n; ++i) {
      TaskSpec t;
      t.id = "T" + std::to_string(i + 1);
      t.period = periods[static_cast<size_t>(u(rng) * 4.0) & 3];
      Ticks per = *t.period;
      t.deadline = u(rng) < 0.5 ? per : per / 2 + static_cast<Ticks>(u(rng) * static_cast<double>(per - per / 2));
      t.deadline = std::max<Ticks>(1, std::min(t.deadline, per));
      double density = std::min(raw[i] * scale, cap);
      t.work = density * static_cast<double>(std::min(t.deadline, per)) * kDefaultTickSeconds;
      tasks.push_back(std::move(t));
    }
    if (!screen_taskset(tasks, big_little).empty()) continue;
    auto res = run_pipeline(tasks, big_little, Algorithm::LpDvfs);
    if (!res.feasible) continue;
    ++kept;
    scan_partition(*res.partition, "random#" + std::to_string(attempts), vs);
  }

  bool partial_ok = vs.worst_partials <= 1;
  bool entries_ok = vs.entry_violations == 0;
  std::ostringstream os;
  os << "migrating-split bound: at most " << vs.worst_partials << " partial migrant per interval over "
     << vs.intervals << " intervals (" << kept << " random tasksets) - "
     << (partial_ok ? "holds" : "VIOLATED") << "; nonzero-entry bound n_active+2: "
     << fixture_violations << "/" << fixture_intervals << " fixture and "
     << (vs.entry_violations - fixture_violations) << "/" << (vs.intervals - fixture_intervals)
     << " random intervals above it, worst " << vs.worst_entries << " entries vs "
     << vs.worst_allowed << " allowed (" << vs.worst_where
     << ") - two-level speed mixes per task make the literal count unattainable, see README";
  return {partial_ok && entries_ok, os.str()};
}

// ---- criterion 8: exhaustive-search agreement ------------------------------

double fluid_total(const QuantizedInstance& inst) {
  auto jobs = oracle_jobs(inst);
  auto grid = build_major_grid(jobs);
  auto res = solve_lp_dvfs(jobs, grid, inst.platform);
  if (res.status != lp::Status::Optimal) throw std::runtime_error("fluid solve failed");
  double total = partition_energy(*res.partition, inst.platform).total_mj;
  double horizon = inst.num_quanta * inst.quantum;
  double covered = grid.time_seconds(grid.intervals());
  for (const auto& t : inst.platform.types) total += t.cores * t.p_idle * (horizon - covered);
  return total;
}

Line criterion8() {
  int matched = 0, feasible = 0, infeasible = 0, total = 60;
  for (unsigned seed = 1; seed <= static_cast<unsigned>(total); ++seed) {
    auto inst = random_tiny_instance(seed, /*representable=*/true);
    auto oracle = brute_force(inst);
    auto jobs = oracle_jobs(inst);
    auto grid = build_major_grid(jobs);
    bool fluid_ok = check_feasibility(jobs, grid, inst.platform);
    if (oracle.feasible == fluid_ok) ++matched;
    (oracle.feasible ? feasible : infeasible)++;
  }
  bool verdicts_ok = matched == total && feasible >= 10 && infeasible >= 10;

  // Work in whole top-speed quanta on one core: the fluid optimum is realizable
  // per quantum, so both sides must land on the same energy.
  Platform toy;
  ProcType t;
  t.name = "core";
  t.cores = 1;
  t.speeds = {0.5, 1.0};
  t.alpha = 1000.0;
  t.beta = 2.0;
  t.p_static = 100.0;
  t.p_idle = 100.0;
  toy.types = {t};
  double worst_energy_gap = 0.0;
  for (auto jobs : {std::vector<OracleJob>{{0, 2, 1.0}}, std::vector<OracleJob>{{0, 1, 1.0}},
                    std::vector<OracleJob>{{0, 4, 2.0}}, std::vector<OracleJob>{{0, 3, 1.5}},
                    std::vector<OracleJob>{{0, 2, 1.0}, {0, 2, 1.0}},
                    std::vector<OracleJob>{{0, 2, 0.5}, {1, 3, 1.0}}}) {
    QuantizedInstance inst;
    inst.jobs = jobs;
    inst.platform = toy;
    inst.quantum = 1.0;
    for (const auto& j : jobs) inst.num_quanta = std::max(inst.num_quanta, j.deadline);
    auto oracle = brute_force(inst);
    if (!oracle.feasible) return {false, "packable instance infeasible in the exhaustive search"};
    worst_energy_gap = std::max(worst_energy_gap, rel_gap(fluid_total(inst), oracle.min_energy_mj));
  }
  bool energy_ok = worst_energy_gap <= 1e-6;

  int bound_checked = 0;
  std::string bound_fail;
  for (unsigned seed = 1; seed <= 24; ++seed) {
    auto inst = random_tiny_instance(seed, /*representable=*/false);
    auto oracle = brute_force(inst);
    if (!oracle.feasible) continue;
    auto jobs = oracle_jobs(inst);
    auto grid = build_major_grid(jobs);
    if (!check_feasibility(jobs, grid, inst.platform)) bound_fail = "quantized feasible but fluid infeasible";
    if (fluid_total(inst) > oracle.min_energy_mj + 1e-6) bound_fail = "fluid energy above quantized optimum";
    ++bound_checked;
  }
  bool bounds_ok = bound_fail.empty() && bound_checked >= 5;

  std::ostringstream os;
  os << "verdicts " << matched << "/" << total << " matched (" << feasible << " feasible / "
     << infeasible << " infeasible); packable energy gap " << fmt(worst_energy_gap)
     << " (tolerance 1e-6); one-sided bounds on " << bound_checked << " free-form instances"
     << (bound_fail.empty() ? "" : ": " + bound_fail);
  return {verdicts_ok && energy_ok && bounds_ok, os.str()};
}

// ---- criterion 9: continuous-speed grid convergence ------------------------

Line criterion9() {
  Platform plat;
  ProcType t;
  t.name = "big";
  t.cores = 1;
  t.speeds = {0.5, 1.0};  // endpoints of the continuous range
  t.alpha = 1063.9;
  t.beta = 2.2;
  t.p_static = 95.9075;
  t.p_idle = 70.0;
  plat.types = {t};
  TaskSpec task;
  task.id = "J";
  task.work = 0.6;
  task.deadline = 1000;
  auto jobs = expand_periodic({task}, 1000);
  auto grid = build_major_grid(jobs);

  std::vector<double> totals;
  for (int points : {2, 3, 5, 9, 17, 33}) {
    auto res = solve_nlp_dvfs(jobs, grid, plat, points);
    if (res.result.status != lp::Status::Optimal) return {false, "grid solve failed"};
    totals.push_back(partition_energy(*res.result.partition, res.gridded).total_mj);
  }
  bool monotone = true;
  for (size_t i = 1; i < totals.size(); ++i)
    if (totals[i] > totals[i - 1] + 1e-9) monotone = false;

  // Constant-speed optimum: run the demand at one speed s, idle the rest, cost
  // (d/s)(P(s)-P_idle) + P_idle per second. The unconstrained minimizer of
  // (P(s)-P_idle)/s sits below the demand here, so the demand itself is the
  // optimal speed.
  double d = 0.6;
  double critical = std::pow((t.p_static - t.p_idle) / (t.alpha * (t.beta - 1.0)), 1.0 / t.beta);
  double s_star = std::clamp(std::max(d, critical), t.speeds.front(), t.speeds.back());
  double closed = d / s_star * (t.alpha * std::pow(s_star, t.beta) + t.p_static - t.p_idle) + t.p_idle;
  double gap = (totals.back() - closed) / closed;
  bool converged = gap <= 0.005 && gap >= -1e-9;

  std::ostringstream os;
  os << "totals mJ:";
  for (double v : totals) os << " " << fmt(v, 6);
  os << (monotone ? " (monotone)" : " (NOT monotone)") << "; closed form " << fmt(closed, 6)
     << ", final gap " << fmt(100.0 * gap) << "% (cap 0.5%)";
  return {monotone && converged, os.str()};
}

}  // namespace

int main() {
  int failed = 0;
  auto emit = [&](int num, const char* title, const Line& line) {
    std::printf("%s  criterion %d  %s: %s\n", line.ok ? "PASS" : "FAIL", num, title,
                line.detail.c_str());
    std::fflush(stdout);
    if (!line.ok) ++failed;
  };
  auto guarded = [&](int num, const char* title, auto&& fn) {
    Line line;
    try {
      line = fn();
    } catch (const std::exception& e) {
      line = {false, std::string("exception: ") + e.what()};
    }
    emit(num, title, line);
  };

  Platform big_little = load_platform(kData + "/platforms/arm_2big_6little.json");
  Platform pair = load_platform(kData + "/platforms/arm_1big_1little.json");

  SweepData implicit_runs, constrained_runs;
  guarded(1, "implicit tasksets all feasible", [&] {
    implicit_runs = run_fixtures("implicit", big_little);
    return criterion1(implicit_runs);
  });
  guarded(2, "lp matches gwa-ddiscrete on implicit sets", [&] { return criterion2(implicit_runs); });
  guarded(3, "lp beats gwa-ddiscrete under constrained deadlines", [&] {
    constrained_runs = run_fixtures("constrained", pair);
    return criterion3(constrained_runs);
  });
  guarded(4, "power-model fit error", [&] { return criterion4(big_little); });
  guarded(5, "two-speed compression optimality", [&] { return criterion5(big_little); });
  guarded(6, "wrap-around packing invariants", [&] { return criterion6(); });
  guarded(7, "interval vertex structure", [&] { return criterion7(big_little, pair); });
  guarded(8, "exhaustive-search agreement", [&] { return criterion8(); });
  guarded(9, "continuous-speed grid convergence", [&] { return criterion9(); });

  std::printf("acceptance: %d/9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
