#include "hetsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace hetsched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

struct Proc {
  int type = 0;
};

struct Option {
  int job = -1;  // -1 means idle
  int level = 0;
};

struct Search {
  const QuantizedInstance& inst;
  std::vector<Proc> procs;
  double s_max = 0.0;
  // memo key: quantum index plus remaining work rounded to picoseconds
  std::map<std::pair<int, std::vector<std::int64_t>>, double> memo;

  explicit Search(const QuantizedInstance& i) : inst(i) {
    for (std::size_t r = 0; r < inst.platform.types.size(); ++r) {
      const auto& ct = inst.platform.types[r];
      for (int c = 0; c < ct.cores; ++c) procs.push_back({static_cast<int>(r)});
      if (!ct.speeds.empty()) s_max = std::max(s_max, ct.speeds.back());
    }
  }

  std::vector<std::int64_t> key(const std::vector<double>& rem) const {
    std::vector<std::int64_t> k(rem.size());
    for (std::size_t i = 0; i < rem.size(); ++i)
      k[i] = static_cast<std::int64_t>(std::llround(rem[i] * 1e12));
    return k;
  }

  // cheapest energy from quantum q onward, +inf when no completion exists
  double best(int q, std::vector<double>& rem) {
    for (std::size_t j = 0; j < inst.jobs.size(); ++j)
      if (inst.jobs[j].deadline <= q && rem[j] > kEps) return kInf;
    if (q == inst.num_quanta) return 0.0;

    // a job can occupy at most one processor per quantum
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
      const int slots = std::max(0, std::min(inst.jobs[j].deadline, inst.num_quanta) - q);
      if (rem[j] > slots * inst.quantum * s_max + kEps) return kInf;
    }

    auto mk = std::make_pair(q, key(rem));
    if (auto it = memo.find(mk); it != memo.end()) return it->second;

    double best_e = kInf;
    std::vector<Option> pick(procs.size());
    enumerate(0, q, rem, pick, best_e);
    memo.emplace(std::move(mk), best_e);
    return best_e;
  }

  void enumerate(std::size_t p, int q, std::vector<double>& rem,
                 std::vector<Option>& pick, double& best_e) {
    if (p == procs.size()) {
      apply(q, rem, pick, best_e);
      return;
    }
    pick[p] = {-1, 0};
    enumerate(p + 1, q, rem, pick, best_e);
    const auto& ct = inst.platform.types[procs[p].type];
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
      if (inst.jobs[j].release > q || inst.jobs[j].deadline <= q) continue;
      if (rem[j] <= kEps) continue;
      bool taken = false;
      for (std::size_t prev = 0; prev < p; ++prev)
        if (pick[prev].job == static_cast<int>(j)) taken = true;
      if (taken) continue;
      for (std::size_t k = 0; k < ct.speeds.size(); ++k) {
        pick[p] = {static_cast<int>(j), static_cast<int>(k)};
        enumerate(p + 1, q, rem, pick, best_e);
      }
    }
    pick[p] = {-1, 0};
  }

  void apply(int q, std::vector<double>& rem, const std::vector<Option>& pick,
             double& best_e) {
    double e = 0.0;
    std::vector<double> next = rem;
    for (std::size_t p = 0; p < procs.size(); ++p) {
      const auto& ct = inst.platform.types[procs[p].type];
      if (pick[p].job < 0) {
        e += ct.p_idle * inst.quantum;
        continue;
      }
      const double s = ct.speeds[pick[p].level];
      const double done = std::min(next[pick[p].job], inst.quantum * s);
      const double busy = done / s;
      e += busy * eval_power(inst.platform, procs[p].type, s) +
           (inst.quantum - busy) * ct.p_idle;
      next[pick[p].job] = std::max(0.0, next[pick[p].job] - done);
    }
    if (e >= best_e) return;  // tail energy is nonnegative
    const double tail = best(q + 1, next);
    if (e + tail < best_e) best_e = e + tail;
  }
};

}  // namespace

OracleOutcome brute_force(const QuantizedInstance& inst) {
  if (inst.jobs.size() > 3) throw std::invalid_argument("oracle: more than 3 jobs");
  if (inst.num_quanta < 1 || inst.num_quanta > 8)
    throw std::invalid_argument("oracle: horizon must be 1..8 quanta");
  if (inst.quantum <= 0) throw std::invalid_argument("oracle: quantum must be positive");
  int total_cores = 0;
  for (const auto& ct : inst.platform.types) {
    total_cores += ct.cores;
    if (ct.speeds.size() > 3)
      throw std::invalid_argument("oracle: more than 3 speed levels");
  }
  if (total_cores > 2) throw std::invalid_argument("oracle: more than 2 processors");
  for (const auto& j : inst.jobs) {
    if (j.release < 0 || j.deadline > inst.num_quanta || j.release >= j.deadline)
      throw std::invalid_argument("oracle: bad job window");
    if (j.work < 0) throw std::invalid_argument("oracle: negative work");
  }

  Search search(inst);
  std::vector<double> rem;
  rem.reserve(inst.jobs.size());
  for (const auto& j : inst.jobs) rem.push_back(j.work);
  const double e = search.best(0, rem);
  if (e == kInf) return {false, 0.0};
  return {true, e};
}

std::vector<JobInstance> oracle_jobs(const QuantizedInstance& inst, double tick_seconds) {
  const double q = inst.quantum / tick_seconds;
  const Ticks per = static_cast<Ticks>(std::llround(q));
  if (per < 1 || std::abs(q - static_cast<double>(per)) > 1e-9)
    throw std::invalid_argument("oracle: quantum is not a whole number of ticks");
  std::vector<JobInstance> jobs;
  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    JobInstance j;
    j.task_index = static_cast<int>(i);
    j.instance = 0;
    j.label = "J" + std::to_string(i + 1) + "#0";
    j.release = inst.jobs[i].release * per;
    j.deadline = inst.jobs[i].deadline * per;
    j.work = inst.jobs[i].work;
    jobs.push_back(std::move(j));
  }
  return jobs;
}

QuantizedInstance random_tiny_instance(unsigned seed, bool representable) {
  std::mt19937 rng(seed);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto unif = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  static constexpr double kPool[] = {0.25, 0.4, 0.5, 0.625, 0.75, 0.8, 1.0};
  constexpr int kPoolSize = static_cast<int>(std::size(kPool));

  QuantizedInstance inst;
  inst.quantum = 1.0;
  inst.num_quanta = pick(2, 6);

  const int types = representable ? 1 : pick(1, 2);
  int cores_left = 2;
  for (int r = 0; r < types; ++r) {
    ProcType ct;
    ct.name = r == 0 ? "one" : "two";
    ct.cores = (r + 1 == types) ? pick(1, cores_left) : 1;
    cores_left -= ct.cores;
    const int levels = pick(1, 3);
    const int top = pick(levels - 1, kPoolSize - 1);
    for (int q = levels - 1; q >= 0; --q) ct.speeds.push_back(kPool[top - q]);
    ct.alpha = unif(80.0, 1200.0);
    ct.beta = unif(1.5, 3.0);
    ct.p_static = unif(5.0, 120.0);
    ct.p_idle = unif(1.0, ct.p_static);
    inst.platform.types.push_back(std::move(ct));
  }

  double s_top = 0.0;
  for (const auto& ct : inst.platform.types) s_top = std::max(s_top, ct.speeds.back());
  const int jobs = pick(1, 3);
  for (int j = 0; j < jobs; ++j) {
    OracleJob job;
    job.release = pick(0, inst.num_quanta - 1);
    job.deadline = pick(job.release + 1, inst.num_quanta);
    const int len = job.deadline - job.release;
    if (representable)
      job.work = pick(1, len + 1) * inst.quantum * inst.platform.types[0].speeds.back();
    else
      job.work = unif(0.05, 1.1) * len * inst.quantum * s_top;
    inst.jobs.push_back(job);
  }
  return inst;
}

}  // namespace hetsched
