#pragma once

#include <vector>

#include "hetsched/model.hpp"

namespace hetsched {

struct OracleJob {
  int release = 0, deadline = 0;  // in quanta
  double work = 0.0;              // seconds at unit speed
};

// A deliberately tiny instance: assignments are constant per quantum, so the
// whole schedule space can be enumerated. Hard caps keep the search bounded:
// at most 3 jobs, 2 processors, 3 levels per type and 8 quanta.
struct QuantizedInstance {
  std::vector<OracleJob> jobs;
  Platform platform;
  double quantum = 1.0;  // seconds per quantum
  int num_quanta = 1;
};

struct OracleOutcome {
  bool feasible = false;
  double min_energy_mj = 0.0;  // total (active + idle), valid when feasible
};

// Exhaustive minimum-energy search with memoization on (quantum, remaining
// work). A job bound to a processor for a quantum runs until its work is done
// and the processor idles for the rest of the quantum.
OracleOutcome brute_force(const QuantizedInstance& inst);

// The same instance on the fluid pipeline's representation; the quantum must
// be a whole number of ticks.
std::vector<JobInstance> oracle_jobs(const QuantizedInstance& inst,
                                     double tick_seconds = kDefaultTickSeconds);

// Seeded random instance for cross-checks. `representable` restricts to a
// single processor type with work a whole number of top-speed quanta, the
// family where quantized and fluid feasibility provably coincide; without it
// instances are free-form and only one-sided checks hold (quantized feasible
// implies fluid feasible, quantized energy bounds fluid energy from above).
QuantizedInstance random_tiny_instance(unsigned seed, bool representable);

}  // namespace hetsched
