#pragma once

#include <vector>

namespace hetsched {

// Aggregate time shares of one job inside one interval, one entry per type
// (share[r] = fraction of the interval the job runs on type-r processors).
struct JobShare {
  int job = -1;
  double share[2] = {0.0, 0.0};
};

// Jobs split by how they use the two clusters within an interval:
//  - migrating_full:    both clusters, shares sum to 1 (busy the whole interval)
//  - migrating_partial: both clusters, shares sum below 1 (at most one allowed)
//  - single[r]:         only cluster r
struct IntervalClassification {
  std::vector<int> migrating_full;
  std::vector<int> migrating_partial;
  std::vector<int> single[2];
};

// Classifies shares and validates the packing preconditions: shares in [0,1],
// per-job total at most 1, per-cluster totals within core counts, and at most
// one partial migrant. Violations throw std::invalid_argument. Jobs whose
// shares are all below `tol` are dropped.
IntervalClassification classify(const std::vector<JobShare>& shares, int m1, int m2,
                                double tol = 1e-9);

// One busy window on one processor, in normalized interval time [0, 1).
struct Window {
  int job = -1;
  int type = 0;
  int proc = 0;  // processor index within the type
  double start = 0.0, end = 0.0;
};

struct OrderedInterval {
  std::vector<Window> windows;
};

// Wrap-around packing: cluster 1 fills left to right, cluster 2 right to left,
// with migrating jobs first (same order on both clusters) so each job's windows
// never overlap in time. A job gets at most two windows per cluster.
OrderedInterval hetero_wrap(const std::vector<JobShare>& shares,
                            const IntervalClassification& cls, int m1, int m2);

struct MigrationCounts {
  int intra[2] = {0, 0};  // jobs using two processors of one type
  int inter = 0;          // jobs using both types
};

MigrationCounts migration_counts(const OrderedInterval& interval, double tol = 1e-12);

}  // namespace hetsched
