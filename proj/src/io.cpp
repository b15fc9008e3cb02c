#include "hetsched/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hetsched {
namespace {

using nlohmann::json;

Ticks to_ticks(double seconds, double tick_seconds, const std::string& what) {
  const double q = seconds / tick_seconds;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-6 * std::max(1.0, std::abs(q)))
    throw std::runtime_error(what + ": " + format_double(seconds) +
                             " s does not land on the tick grid");
  return static_cast<Ticks>(r);
}

json parse_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // collapse -0
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

std::vector<TaskSpec> load_taskset(const std::string& path, double f_max,
                                   double tick_seconds) {
  json doc = parse_json(path);
  if (doc.is_object() && doc.contains("tasks")) doc = doc["tasks"];
  if (!doc.is_array()) throw std::runtime_error(path + ": expected a JSON task array");
  if (f_max <= 0) throw std::runtime_error("f_max must be positive");

  std::vector<TaskSpec> tasks;
  for (const auto& item : doc) {
    TaskSpec t;
    t.id = item.contains("id") ? item.at("id").get<std::string>()
                               : "T" + std::to_string(tasks.size() + 1);
    const std::string where = path + ", task " + t.id;
    if (item.contains("min_exec_time"))
      t.work = item.at("min_exec_time").get<double>();
    else if (item.contains("cycles"))
      t.work = item.at("cycles").get<double>() / f_max;
    else
      throw std::runtime_error(where + ": needs min_exec_time or cycles");
    if (!(t.work > 0)) throw std::runtime_error(where + ": work must be positive");
    if (!item.contains("deadline")) throw std::runtime_error(where + ": missing deadline");
    t.deadline = to_ticks(item.at("deadline").get<double>(), tick_seconds, where + ".deadline");
    if (t.deadline <= 0) throw std::runtime_error(where + ": deadline must be positive");
    if (item.contains("period")) {
      t.period = to_ticks(item.at("period").get<double>(), tick_seconds, where + ".period");
      if (*t.period <= 0) throw std::runtime_error(where + ": period must be positive");
    }
    if (item.contains("arrival")) {
      t.arrival = to_ticks(item.at("arrival").get<double>(), tick_seconds, where + ".arrival");
      if (t.arrival < 0) throw std::runtime_error(where + ": arrival must be nonnegative");
    }
    tasks.push_back(std::move(t));
  }
  return tasks;
}

Platform load_platform(const std::string& path) {
  json doc = parse_json(path);
  if (!doc.is_object() || !doc.contains("types"))
    throw std::runtime_error(path + ": expected an object with a types array");
  Platform p;
  p.f_max = doc.value("f_max", 1.0);
  for (const auto& jt : doc.at("types")) {
    ProcType ct;
    ct.name = jt.contains("name") ? jt.at("name").get<std::string>()
                                  : "type" + std::to_string(p.types.size());
    try {
      ct.cores = jt.at("cores").get<int>();
      ct.speeds = jt.at("speeds").get<std::vector<double>>();
      ct.alpha = jt.at("alpha").get<double>();
      ct.beta = jt.at("beta").get<double>();
      ct.p_static = jt.at("p_static").get<double>();
      ct.p_idle = jt.at("p_idle").get<double>();
    } catch (const json::exception& e) {
      throw std::runtime_error(path + ", type " + ct.name + ": " + e.what());
    }
    p.types.push_back(std::move(ct));
  }
  validate_platform(p);
  return p;
}

std::string partition_csv(const WorkloadPartition& p, const std::vector<JobInstance>& jobs,
                          const MajorGrid& grid, const Platform& platform) {
  std::string out = "interval_index,t_start,t_end,job_id,type,speed_level,omega\n";
  for (int mu = 0; mu < grid.intervals(); ++mu)
    for (int j = 0; j < p.num_jobs(); ++j) {
      if (!p.active(mu, j)) continue;
      for (int r = 0; r < p.num_types(); ++r)
        for (int q = 0; q < p.levels(r); ++q) {
          const double w = p.omega(mu, j, r, q);
          if (w <= 1e-15) continue;
          out += std::to_string(mu) + ',' + format_double(grid.time_seconds(mu)) + ',' +
                 format_double(grid.time_seconds(mu + 1)) + ',' + jobs[j].label + ',' +
                 platform.types[r].name + ',' + format_double(p.speed(r, q)) + ',' +
                 format_double(w) + '\n';
        }
    }
  return out;
}

std::string allocation_csv(const GwaAllocation& alloc, const std::vector<TaskSpec>& tasks,
                           const Platform& platform, double horizon_seconds) {
  std::string out = "interval_index,t_start,t_end,job_id,type,speed_level,omega\n";
  for (int i = 0; i < alloc.tasks; ++i)
    for (int r = 0; r < platform.type_count(); ++r)
      for (int q = 0; q < static_cast<int>(platform.types[r].speeds.size()); ++q) {
        const double d = alloc.delta_at(i, r, q);
        if (d <= 1e-15) continue;
        out += std::string("hyperperiod,0,") + format_double(horizon_seconds) + ',' +
               tasks[i].id + ',' + platform.types[r].name + ',' +
               format_double(platform.types[r].speeds[q]) + ',' + format_double(d) + '\n';
      }
  return out;
}

std::string schedule_csv(const Schedule& s, const std::vector<JobInstance>& jobs) {
  std::string out = "t_start,t_end,type,proc,job,speed\n";
  for (const auto& seg : s.segments)
    out += format_double(seg.start) + ',' + format_double(seg.end) + ',' +
           std::to_string(seg.type) + ',' + std::to_string(seg.proc) + ',' +
           jobs[seg.job].label + ',' + format_double(seg.speed) + '\n';
  return out;
}

std::string report_csv(const ScheduleReport& report) {
  std::string out = "metric,value\n";
  auto row = [&out](const std::string& k, const std::string& v) { out += k + ',' + v + '\n'; };
  row("feasible", report.feasible ? "1" : "0");
  row("active_mj", format_double(report.active_mj));
  row("idle_mj", format_double(report.idle_mj));
  row("total_mj", format_double(report.total_mj));
  row("preemptions", std::to_string(report.preemptions));
  row("intra_migrations_type0", std::to_string(report.intra_migrations[0]));
  row("intra_migrations_type1", std::to_string(report.intra_migrations[1]));
  row("inter_migrations", std::to_string(report.inter_migrations));
  row("deadline_misses", std::to_string(report.misses.size()));
  row("violations", std::to_string(report.violations.size()));
  row("max_residual", format_double(report.max_residual));
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "taskset,D,algorithm,energy_mj,normalized_energy\n";
  for (const auto& r : rows) {
    out += r.taskset + ',' + format_double(r.total_density) + ',' + r.algorithm + ',';
    if (r.feasible) {
      out += format_double(r.energy_mj) + ',';
      if (r.normalized > 0) out += format_double(r.normalized);
    } else {
      out += ',';  // energy and normalization stay empty for infeasible runs
    }
    out += '\n';
  }
  return out;
}

Schedule parse_schedule_csv(const std::string& text, const Platform& platform,
                            const std::vector<JobInstance>& jobs, double horizon_seconds) {
  Schedule s;
  s.horizon = horizon_seconds;
  for (const auto& ct : platform.types) s.cores_per_type.push_back(ct.cores);

  std::istringstream in(text);
  std::string line;
  bool header = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != "t_start,t_end,type,proc,job,speed")
        throw std::runtime_error("unexpected schedule CSV header: " + line);
      header = false;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 6)
      throw std::runtime_error("schedule CSV line " + std::to_string(line_no) +
                               ": expected 6 columns");
    Segment seg;
    seg.start = std::stod(cells[0]);
    seg.end = std::stod(cells[1]);
    seg.type = std::stoi(cells[2]);
    seg.proc = std::stoi(cells[3]);
    seg.speed = std::stod(cells[5]);
    seg.job = -1;
    for (std::size_t j = 0; j < jobs.size(); ++j)
      if (jobs[j].label == cells[4]) seg.job = static_cast<int>(j);
    if (seg.job < 0)
      throw std::runtime_error("schedule CSV line " + std::to_string(line_no) +
                               ": unknown job " + cells[4]);
    if (seg.type < 0 || seg.type >= platform.type_count())
      throw std::runtime_error("schedule CSV line " + std::to_string(line_no) +
                               ": unknown type " + cells[2]);
    s.segments.push_back(seg);
    s.horizon = std::max(s.horizon, seg.end);
  }
  if (header) throw std::runtime_error("schedule CSV is empty");
  return s;
}

}  // namespace hetsched
