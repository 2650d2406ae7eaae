#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lsap/dgs.hpp"
#include "lsap/types.hpp"

namespace lsap {

struct ParallelConfig : DgsConfig {
  std::int32_t workers = 0;  // 0 = hardware concurrency
  std::int32_t chunk = 64;   // records per work unit

  // Records re-evaluated after each batch of exchanges, in addition to the
  // agents/jobs touched by an applied exchange. Re-evaluating conflicted
  // proposers keeps their records fresh at the cost of extra scans; with
  // touched_only they stay stale until accepted (the commit guard drains
  // them) or the next full pass. Both reach the same fixed point.
  enum class Reeval { touched_and_conflicted, touched_only };
  Reeval reeval = Reeval::touched_and_conflicted;

  void validate() const {
    DgsConfig::validate();
    if (workers < 0) throw Error("workers must be >= 1 (0 = auto)");
    if (chunk < 1) throw Error("chunk must be >= 1");
  }

  std::int32_t effective_workers() const;
};

// Outcome of the conflict-check pass over one set of delta tables.
// `reserved` holds every agent endpoint claimed by an accepted proposal,
// `conflicted` every agent whose proposal hit an existing reservation
// (job-side proposals are charged to the job's current holder). The
// acceptance flags record which proposals claimed both endpoints; only
// those may be applied concurrently.
struct ConflictSets {
  std::vector<std::int32_t> reserved;    // ascending
  std::vector<std::int32_t> conflicted;  // ascending
  std::vector<std::uint8_t> agent_accepted;
  std::vector<std::uint8_t> job_accepted;
  std::vector<std::int32_t> conflicted_jobs;  // job-side proposals that conflicted
};

// One committed 2-exchange: agent took new_job from displaced, who took
// old_job in return.
struct AppliedExchange {
  std::int32_t agent = -1;
  std::int32_t new_job = -1;
  std::int32_t old_job = -1;
  std::int32_t displaced = -1;
  double delta = 0.0;
};

// Fills the full delta tables over a worker pool. Each worker owns
// disjoint record slots and reads a frozen assignment, so the result is
// bit-identical to running ade/jde over every index sequentially.
void evaluate_all_parallel(const Instance& inst, const Assignment& asg,
                           DeltaTables& tables, const ParallelConfig& cfg);

// Sequential reservation pass, agents in ascending index order then jobs
// in ascending index order, so the outcome is reproducible.
ConflictSets check_conflicts(const DeltaTables& tables, const Assignment& asg);

// Applies every accepted proposal whose improvement, recomputed on the
// frozen input assignment, is strictly positive. Accepted proposals touch
// pairwise disjoint agents and jobs (violations throw: they would mean the
// conflict check is broken), so the batch is order-independent and safe to
// apply concurrently. Returns the new assignment and the applied list.
std::pair<Assignment, std::vector<AppliedExchange>> apply_parallel_switches(
    const Instance& inst, const Assignment& asg, const DeltaTables& tables,
    const ConflictSets& sets, const ParallelConfig& cfg);

// The parallel descent: pooled full evaluation, then batches of
// {check conflicts, apply all accepted improving exchanges, re-evaluate}
// until no positive record remains, repeated until a full pass leaves the
// objective unchanged. Results are independent of the worker count.
SolveReport dgs_parallel(const Instance& inst, const ParallelConfig& cfg = {});

}  // namespace lsap
