#include "hetsched/pipeline.hpp"

#include <stdexcept>

#include "hetsched/baselines.hpp"

namespace hetsched {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "lp-dvfs") return Algorithm::LpDvfs;
  if (name == "nlp-dvfs") return Algorithm::NlpDvfs;
  if (name == "gwa-ddiscrete") return Algorithm::GwaDDiscrete;
  if (name == "gwa-nodvfs") return Algorithm::GwaNoDvfs;
  return std::nullopt;
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::LpDvfs: return "lp-dvfs";
    case Algorithm::NlpDvfs: return "nlp-dvfs";
    case Algorithm::GwaDDiscrete: return "gwa-ddiscrete";
    case Algorithm::GwaNoDvfs: return "gwa-nodvfs";
  }
  return "unknown";
}

PipelineResult run_pipeline(const std::vector<TaskSpec>& tasks, const Platform& platform,
                            Algorithm algo, int nlp_grid_points, double tick_seconds) {
  PipelineResult out;
  out.solved_platform = platform;
  if (tasks.empty()) {  // nothing to schedule
    out.feasible = true;
    out.report.feasible = true;
    for (const auto& ct : platform.types) out.schedule.cores_per_type.push_back(ct.cores);
    return out;
  }

  out.stats = taskset_stats(tasks, platform, tick_seconds);
  if (auto complaints = screen_taskset(tasks, platform, tick_seconds); !complaints.empty()) {
    out.failure = join(complaints);
    return out;
  }

  try {
    out.jobs = expand_periodic(tasks, out.stats.horizon, tick_seconds);
  } catch (const std::exception& e) {
    out.failure = e.what();
    return out;
  }
  out.grid = build_major_grid(out.jobs, tick_seconds);
  // Pad an idle tail when every deadline lands before the horizon (all-constrained
  // tasksets), so fluid and time-invariant energies price the same window.
  if (out.grid.bounds.back() < out.stats.horizon) out.grid.bounds.push_back(out.stats.horizon);

  switch (algo) {
    case Algorithm::LpDvfs: {
      PartitionResult res = solve_lp_dvfs(out.jobs, out.grid, platform);
      if (res.status != lp::Status::Optimal || !res.partition) {
        out.failure =
            "no feasible workload partition: a deadline window exceeds platform "
            "capacity on the partition grid";
        return out;
      }
      out.partition = std::move(res.partition);
      break;
    }
    case Algorithm::NlpDvfs: {
      NlpDvfsResult res = solve_nlp_dvfs(out.jobs, out.grid, platform, nlp_grid_points);
      if (res.result.status != lp::Status::Optimal || !res.result.partition) {
        out.failure =
            "no feasible workload partition on the speed grid: a deadline window "
            "exceeds platform capacity";
        return out;
      }
      out.solved_platform = std::move(res.gridded);
      out.partition = std::move(res.result.partition);
      break;
    }
    case Algorithm::GwaDDiscrete:
    case Algorithm::GwaNoDvfs: {
      GwaResult res = algo == Algorithm::GwaDDiscrete
                          ? solve_gwa_ddiscrete(tasks, platform, tick_seconds)
                          : solve_gwa_nodvfs(tasks, platform, tick_seconds);
      if (res.status != lp::Status::Optimal || !res.alloc) {
        out.failure = "no feasible time-invariant allocation: per-task density or "
                      "core-count budget binds";
        return out;
      }
      out.energy_mj = res.alloc->total_mj;
      out.partition = gwa_to_partition(*res.alloc, out.jobs, out.grid, platform);
      break;
    }
  }

  if (algo == Algorithm::LpDvfs || algo == Algorithm::NlpDvfs)
    out.energy_mj = partition_energy(*out.partition, out.solved_platform).total_mj;

  reduce_intercluster(*out.partition, out.solved_platform);
  const auto order = order_all_intervals(*out.partition, out.solved_platform);
  out.schedule = expand_schedule(*out.partition, order, out.solved_platform);
  out.report = validate(out.schedule, out.jobs, out.solved_platform, tick_seconds);
  out.feasible = out.report.feasible;
  if (!out.feasible && out.failure.empty())
    out.failure = out.report.violations.empty() ? "deadline miss in realized schedule"
                                                : out.report.violations.front();
  return out;
}

std::vector<SweepRow> run_sweep(const std::vector<SweepEntry>& entries, const Platform& platform,
                                const std::vector<Algorithm>& algorithms, int nlp_grid_points,
                                double tick_seconds) {
  std::vector<SweepRow> rows;
  for (const auto& entry : entries) {
    auto attempt = [&](Algorithm algo) -> PipelineResult {
      try {
        return run_pipeline(entry.tasks, platform, algo, nlp_grid_points, tick_seconds);
      } catch (const std::exception& e) {  // record and move on
        PipelineResult failed;
        failed.failure = e.what();
        return failed;
      }
    };
    const PipelineResult denom = attempt(Algorithm::GwaNoDvfs);
    const double base = denom.feasible ? denom.energy_mj : 0.0;
    for (Algorithm algo : algorithms) {
      const PipelineResult res = algo == Algorithm::GwaNoDvfs ? denom : attempt(algo);
      SweepRow row;
      row.taskset = entry.name;
      row.total_density = res.stats.total_density;
      row.algorithm = algorithm_name(algo);
      row.feasible = res.feasible;
      row.energy_mj = res.energy_mj;
      row.normalized = (res.feasible && base > 0) ? res.energy_mj / base : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace hetsched
