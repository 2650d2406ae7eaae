#pragma once

#include "lsap/types.hpp"

namespace lsap {

// Sum of benefits[sigma[j]][j]. Throws on a size mismatch between the
// assignment and the instance. Pure.
double objective(const Instance& inst, const Assignment& asg);

// True iff p is a permutation of {0..n-1}.
bool is_permutation(const Perm& p);

// Inverse permutation. Throws Error if sigma is not a permutation.
Perm make_tau(const Perm& sigma);

// Builds a full Assignment (tau + cached value) from sigma.
Assignment make_assignment(const Instance& inst, Perm sigma);

// The objective change of giving agent i the job j_new while the displaced
// agent takes i's old job. Two orderings of the same four terms: each is
// pinned to the rounding of the scan kernel that produced the record
// (agent-side records scan jobs, job-side records scan agents), so a fresh
// record's delta is reproduced bit for bit at commit time.
inline double agent_exchange_delta(const Instance& inst, const Assignment& asg,
                                   std::int32_t i, std::int32_t j_new) {
  const std::int32_t j_old = asg.tau[i];
  const std::int32_t displaced = asg.sigma[j_new];
  return (inst.at(i, j_new) - inst.at(i, j_old)) +
         (inst.at(displaced, j_old) - inst.at(displaced, j_new));
}

inline double job_exchange_delta(const Instance& inst, const Assignment& asg,
                                 std::int32_t i_new, std::int32_t j) {
  const std::int32_t holder = asg.sigma[j];
  const std::int32_t j_old = asg.tau[i_new];
  return (inst.at(i_new, j) - inst.at(holder, j)) +
         (inst.at(holder, j_old) - inst.at(i_new, j_old));
}

// The 2-exchange: agent i takes job j, the displaced agent sigma[j] takes
// i's former job tau[i]. Returns a new assignment with the value cache
// updated incrementally; the input is untouched. Throws Error when j is
// already i's job (a no-op exchange) or on invalid indices.
Assignment switch_exchange(std::int32_t i, std::int32_t j, const Assignment& asg,
                           const Instance& inst);

// Checks the full Assignment contract against inst: permutation closure,
// tau == inverse(sigma), and |value - objective| <= 1e-9. Throws Error.
void validate_assignment(const Instance& inst, const Assignment& asg);

}  // namespace lsap
