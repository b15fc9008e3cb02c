#include "hetsched/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace hetsched {

IntervalClassification classify(const std::vector<JobShare>& shares, int m1, int m2, double tol) {
  IntervalClassification cls;
  double load[2] = {0.0, 0.0};
  for (const auto& s : shares) {
    for (int r = 0; r < 2; ++r) {
      if (s.share[r] < -tol)
        throw std::invalid_argument("job " + std::to_string(s.job) + ": negative share");
      if (s.share[r] > 1.0 + tol)
        throw std::invalid_argument("job " + std::to_string(s.job) + ": share above 1");
      load[r] += s.share[r];
    }
    double total = s.share[0] + s.share[1];
    if (total > 1.0 + tol)
      throw std::invalid_argument("job " + std::to_string(s.job) +
                                  ": combined share exceeds the interval");
    bool on1 = s.share[0] > tol, on2 = s.share[1] > tol;
    if (on1 && on2) {
      if (total >= 1.0 - tol)
        cls.migrating_full.push_back(s.job);
      else
        cls.migrating_partial.push_back(s.job);
    } else if (on1) {
      cls.single[0].push_back(s.job);
    } else if (on2) {
      cls.single[1].push_back(s.job);
    }
  }
  if (load[0] > m1 + tol)
    throw std::invalid_argument("cluster 1 load " + std::to_string(load[0]) + " exceeds " +
                                std::to_string(m1) + " cores");
  if (load[1] > m2 + tol)
    throw std::invalid_argument("cluster 2 load " + std::to_string(load[1]) + " exceeds " +
                                std::to_string(m2) + " cores");
  if (cls.migrating_partial.size() > 1)
    throw std::invalid_argument("more than one partial migrant (" +
                                std::to_string(cls.migrating_partial.size()) +
                                "); the shares are not a vertex solution");
  return cls;
}

namespace {

constexpr double kEps = 1e-12;

// Emit the line span [lo, hi) split at integer processor boundaries; spans
// shorter than kEps vanish.
void emit(std::vector<Window>& out, int job, int type, int cores, double lo, double hi) {
  if (hi - lo <= kEps) return;
  lo = std::max(lo, 0.0);
  hi = std::min(hi, static_cast<double>(cores));
  int k = static_cast<int>(std::floor(lo + kEps));
  while (lo < hi - kEps) {
    double cell_end = std::min(hi, static_cast<double>(k + 1));
    if (cell_end - lo > kEps)
      out.push_back({job, type, k, lo - k, cell_end - k});
    lo = cell_end;
    ++k;
  }
}

}  // namespace

OrderedInterval hetero_wrap(const std::vector<JobShare>& shares,
                            const IntervalClassification& cls, int m1, int m2) {
  auto share_of = [&](int job, int r) -> double {
    for (const auto& s : shares)
      if (s.job == job) return s.share[r];
    throw std::invalid_argument("classification references unknown job " + std::to_string(job));
  };

  OrderedInterval out;
  double p1 = 0.0;        // cluster 1 fill position, grows from 0
  double p2 = m2;         // cluster 2 fill position, shrinks from m2

  auto place1 = [&](int job) {
    double w = share_of(job, 0);
    if (w <= kEps) return;
    emit(out.windows, job, 0, m1, p1, p1 + w);
    p1 += w;
  };
  auto place2 = [&](int job) {
    double w = share_of(job, 1);
    if (w <= kEps) return;
    emit(out.windows, job, 1, m2, p2 - w, p2);
    p2 -= w;
  };

  // Migrating jobs first, identical order on both clusters: a full migrant's
  // cluster-2 window is then exactly the time complement of its cluster-1
  // window, and the lone partial migrant's windows stay disjoint because its
  // shares sum below 1.
  for (int job : cls.migrating_full) {
    place1(job);
    place2(job);
  }
  for (int job : cls.migrating_partial) {
    place1(job);
    place2(job);
  }
  for (int job : cls.single[0]) place1(job);
  for (int job : cls.single[1]) place2(job);

  if (p1 > m1 + 1e-9 || p2 < -1e-9)
    throw std::invalid_argument("shares overflow the cluster capacity");
  return out;
}

MigrationCounts migration_counts(const OrderedInterval& interval, double tol) {
  MigrationCounts mc;
  std::set<std::pair<int, int>> seen;  // (job, type*large + proc)
  std::set<int> jobs;
  for (const auto& w : interval.windows) {
    if (w.end - w.start <= tol) continue;
    seen.insert({w.job, w.type * 1000000 + w.proc});
    jobs.insert(w.job);
  }
  for (int job : jobs) {
    int cnt[2] = {0, 0};
    for (const auto& [j, key] : seen) {
      if (j != job) continue;
      ++cnt[key / 1000000];
    }
    for (int r = 0; r < 2; ++r)
      if (cnt[r] >= 2) ++mc.intra[r];
    if (cnt[0] >= 1 && cnt[1] >= 1) ++mc.inter;
  }
  return mc;
}

}  // namespace hetsched
