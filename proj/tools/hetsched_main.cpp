#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hetsched/gantt.hpp"
#include "hetsched/io.hpp"
#include "hetsched/oracle.hpp"
#include "hetsched/pipeline.hpp"

namespace fs = std::filesystem;
using namespace hetsched;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;

struct Options {
  std::string taskset, platform, schedule_file, algorithm = "lp-dvfs";
  std::string out = ".";
  int nlp_points = 9;
  int count = 50;
  unsigned seed = 1;
  double tick = kDefaultTickSeconds;
};

std::string out_path(const Options& o, const std::string& name) {
  fs::create_directories(o.out);
  return (fs::path(o.out) / name).string();
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

int cmd_schedule(const Options& o) {
  const Platform platform = load_platform(o.platform);
  const auto tasks = load_taskset(o.taskset, platform.f_max, o.tick);
  const auto algo = parse_algorithm(o.algorithm);
  if (!algo) {
    std::cerr << "unknown algorithm: " << o.algorithm << '\n';
    return kExitUsage;
  }
  const PipelineResult res = run_pipeline(tasks, platform, *algo, o.nlp_points, o.tick);
  if (!res.feasible) {
    std::cerr << "infeasible: " << res.failure << '\n';
    return kExitInfeasible;
  }
  const std::string stem = stem_of(o.taskset) + "." + algorithm_name(*algo);
  write_file(out_path(o, stem + ".report.csv"), report_csv(res.report));
  write_file(out_path(o, stem + ".schedule.csv"), schedule_csv(res.schedule, res.jobs));
  if (res.partition)
    write_file(out_path(o, stem + ".partition.csv"),
               partition_csv(*res.partition, res.jobs, res.grid, res.solved_platform));
  write_file(out_path(o, stem + ".gantt.svg"),
             gantt_svg(res.schedule, res.jobs, res.solved_platform));
  std::cout << algorithm_name(*algo) << ": " << format_double(res.energy_mj)
            << " mJ allocated, realized " << format_double(res.report.total_mj)
            << " mJ (active " << format_double(res.report.active_mj) << ", idle "
            << format_double(res.report.idle_mj) << "), preemptions "
            << res.report.preemptions << ", migrations "
            << res.report.intra_migrations[0] + res.report.intra_migrations[1] << "+"
            << res.report.inter_migrations << " -> " << o.out << '\n';
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  const Platform platform = load_platform(o.platform);
  std::vector<Algorithm> algos;
  if (o.algorithm == "all") {
    algos = {Algorithm::LpDvfs, Algorithm::NlpDvfs, Algorithm::GwaDDiscrete,
             Algorithm::GwaNoDvfs};
  } else {
    const auto algo = parse_algorithm(o.algorithm);
    if (!algo) {
      std::cerr << "unknown algorithm: " << o.algorithm << '\n';
      return kExitUsage;
    }
    algos = {*algo};
  }

  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(o.taskset))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  std::vector<SweepRow> rows;
  for (const auto& file : files) {
    SweepEntry e{stem_of(file), {}};
    try {
      e.tasks = load_taskset(file, platform.f_max, o.tick);
    } catch (const std::exception& ex) {
      std::cerr << file << ": " << ex.what() << '\n';
      for (Algorithm a : algos)
        rows.push_back({e.name, 0.0, algorithm_name(a), false, 0.0, 0.0});
      continue;
    }
    const auto batch = run_sweep({e}, platform, algos, o.nlp_points, o.tick);
    rows.insert(rows.end(), batch.begin(), batch.end());
  }
  const std::string path = out_path(o, "sweep.csv");
  write_file(path, sweep_csv(rows));
  std::cout << rows.size() << " rows -> " << path << '\n';
  return kExitOk;
}

int cmd_validate(const Options& o) {
  const Platform platform = load_platform(o.platform);
  const auto tasks = load_taskset(o.taskset, platform.f_max, o.tick);
  const TasksetStats st = taskset_stats(tasks, platform, o.tick);
  const auto jobs = expand_periodic(tasks, st.horizon, o.tick);
  const Schedule s = parse_schedule_csv(read_file(o.schedule_file), platform, jobs,
                                        static_cast<double>(st.horizon) * o.tick);
  const ScheduleReport report = validate(s, jobs, platform, o.tick);
  std::cout << report_csv(report);
  for (const auto& v : report.violations) std::cerr << "violation: " << v << '\n';
  return report.feasible ? kExitOk : kExitInfeasible;
}

int cmd_gantt(const Options& o) {
  const Platform platform = load_platform(o.platform);
  const auto tasks = load_taskset(o.taskset, platform.f_max, o.tick);
  const std::string stem = stem_of(o.taskset);
  if (!o.schedule_file.empty()) {
    const TasksetStats st = taskset_stats(tasks, platform, o.tick);
    const auto jobs = expand_periodic(tasks, st.horizon, o.tick);
    const Schedule s = parse_schedule_csv(read_file(o.schedule_file), platform, jobs,
                                          static_cast<double>(st.horizon) * o.tick);
    const std::string path = out_path(o, stem + ".gantt.svg");
    write_file(path, gantt_svg(s, jobs, platform));
    std::cout << path << '\n';
    return kExitOk;
  }
  const auto algo = parse_algorithm(o.algorithm);
  if (!algo) {
    std::cerr << "unknown algorithm: " << o.algorithm << '\n';
    return kExitUsage;
  }
  const PipelineResult res = run_pipeline(tasks, platform, *algo, o.nlp_points, o.tick);
  if (!res.feasible) {
    std::cerr << "infeasible: " << res.failure << '\n';
    return kExitInfeasible;
  }
  const std::string path = out_path(o, stem + "." + algorithm_name(*algo) + ".gantt.svg");
  write_file(path, gantt_svg(res.schedule, res.jobs, res.solved_platform));
  std::cout << path << '\n';
  return kExitOk;
}

int cmd_oracle_check(const Options& o) {
  int mismatches = 0;
  int feasible_count = 0;
  for (int i = 0; i < o.count; ++i) {
    const QuantizedInstance inst = random_tiny_instance(o.seed + i, /*representable=*/true);
    const auto jobs = oracle_jobs(inst, o.tick);
    const MajorGrid grid = build_major_grid(jobs, o.tick);
    const bool fluid = check_feasibility(jobs, grid, inst.platform);
    const OracleOutcome oracle = brute_force(inst);
    if (oracle.feasible) ++feasible_count;
    if (fluid != oracle.feasible) {
      ++mismatches;
      std::cerr << "mismatch at seed " << o.seed + i << ": fluid " << fluid << ", enumerated "
                << oracle.feasible << '\n';
    }
  }
  std::cout << o.count - mismatches << "/" << o.count
            << " feasibility verdicts agree (representable family, seed " << o.seed << ", "
            << feasible_count << " feasible / " << o.count - feasible_count << " infeasible)\n";

  int one_sided = 0;
  for (int i = 0; i < o.count; ++i) {
    const QuantizedInstance inst = random_tiny_instance(o.seed + 100000 + i, false);
    const OracleOutcome oracle = brute_force(inst);
    if (!oracle.feasible) continue;
    const auto jobs = oracle_jobs(inst, o.tick);
    const MajorGrid grid = build_major_grid(jobs, o.tick);
    if (!check_feasibility(jobs, grid, inst.platform)) {
      ++one_sided;
      std::cerr << "free-form seed " << o.seed + 100000 + i
                << ": enumerated schedule exists but fluid relaxation says no\n";
    }
  }
  std::cout << o.count - one_sided << "/" << o.count
            << " free-form instances respect the relaxation direction\n";
  return mismatches + one_sided == 0 ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-optimal scheduling of hard real-time tasks on two-type "
               "heterogeneous multiprocessors with DVFS"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* cmd, bool needs_files) {
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--tick", o.tick, "tick length in seconds")->check(CLI::PositiveNumber);
    if (needs_files) {
      cmd->add_option("--taskset", o.taskset, "taskset JSON")->required();
      cmd->add_option("--platform", o.platform, "platform JSON")->required();
    }
  };

  auto* sched = app.add_subcommand("schedule", "solve one taskset and emit schedule artifacts");
  add_common(sched, true);
  sched->add_option("--algorithm", o.algorithm,
                    "lp-dvfs | nlp-dvfs | gwa-ddiscrete | gwa-nodvfs");
  sched->add_option("--nlp-grid-points", o.nlp_points, "speed grid size for nlp-dvfs")
      ->check(CLI::Range(2, 513));

  auto* sweep = app.add_subcommand("sweep", "run algorithms over a directory of tasksets");
  sweep->add_option("--taskset", o.taskset, "directory of taskset JSON files")->required();
  sweep->add_option("--platform", o.platform, "platform JSON")->required();
  sweep->add_option("--algorithm", o.algorithm, "one algorithm or 'all'");
  sweep->add_option("--nlp-grid-points", o.nlp_points, "speed grid size for nlp-dvfs")
      ->check(CLI::Range(2, 513));
  sweep->add_option("--out", o.out, "output directory");
  sweep->add_option("--tick", o.tick, "tick length in seconds")->check(CLI::PositiveNumber);

  auto* val = app.add_subcommand("validate", "re-check a schedule CSV against its taskset");
  add_common(val, true);
  val->add_option("--schedule", o.schedule_file, "schedule CSV")->required();

  auto* gantt = app.add_subcommand("gantt", "render a Gantt SVG");
  add_common(gantt, true);
  gantt->add_option("--schedule", o.schedule_file, "schedule CSV (otherwise solve first)");
  gantt->add_option("--algorithm", o.algorithm,
                    "lp-dvfs | nlp-dvfs | gwa-ddiscrete | gwa-nodvfs");
  gantt->add_option("--nlp-grid-points", o.nlp_points, "speed grid size for nlp-dvfs")
      ->check(CLI::Range(2, 513));

  auto* oc = app.add_subcommand("oracle-check",
                                "cross-check fluid feasibility against exhaustive enumeration");
  oc->add_option("--seed", o.seed, "base seed");
  oc->add_option("--count", o.count, "instances per family")->check(CLI::PositiveNumber);
  oc->add_option("--tick", o.tick, "tick length in seconds")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sched->parsed()) return cmd_schedule(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (val->parsed()) return cmd_validate(o);
    if (gantt->parsed()) return cmd_gantt(o);
    if (oc->parsed()) return cmd_oracle_check(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
