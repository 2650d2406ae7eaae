#pragma once

#include <cstdint>
#include <optional>

#include "lsap/types.hpp"

namespace lsap {

struct DgsConfig {
  std::uint64_t seed = 0;
  std::optional<Duration> deadline;
  // Strictness margin for accepting an improvement. 0 keeps the exact
  // f(new) > f(old) comparison; positive values absorb user-matrix noise.
  double improvement_epsilon = 0.0;

  void validate() const {
    if (!(improvement_epsilon >= 0.0))
      throw Error("improvement_epsilon must be >= 0");
  }
};

// Uniformly random full assignment, Fisher-Yates over a splitmix64 stream.
Assignment initial_random(const Instance& inst, std::uint64_t seed);

// Best strictly improving 2-exchange for agent i (scanning candidate jobs)
// or job j (scanning candidate agents); ties go to the smallest candidate
// index. Writes tables.agent_records[i] / tables.job_records[j].
void ade(std::int32_t i, const Instance& inst, const Assignment& asg, DeltaTables& tables);
void jde(std::int32_t j, const Instance& inst, const Assignment& asg, DeltaTables& tables);

// Greedy switching descent: evaluate every agent and job, repeatedly apply
// the best recorded 2-exchange (agent side wins ties), re-evaluating the
// two agents and two jobs each committed exchange touches, until a full
// pass leaves the objective unchanged. Interruptible at any deadline; a
// complete valid assignment is always returned.
SolveReport dgs_sequential(const Instance& inst, const DgsConfig& cfg = {});

}  // namespace lsap
