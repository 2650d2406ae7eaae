#include <algorithm>
#include <string>

#include "lsap/baselines.hpp"
#include "lsap/core.hpp"

namespace lsap {

SolveReport brute_force_solve(const Instance& inst) {
  inst.validate();
  if (inst.n > 10)
    throw Error("brute force refused: n = " + std::to_string(inst.n) + " exceeds 10");
  const auto start = Clock::now();
  const std::int32_t n = inst.n;

  Perm perm(n);
  for (std::int32_t j = 0; j < n; ++j) perm[j] = j;

  Perm best_sigma = perm;
  double best = -std::numeric_limits<double>::infinity();
  std::int64_t count = 0;
  do {
    double sum = 0.0;
    for (std::int32_t j = 0; j < n; ++j) sum += inst.at(perm[j], j);
    if (sum > best) {  // first maximum wins: lexicographically smallest sigma
      best = sum;
      best_sigma = perm;
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));

  SolveReport rep;
  rep.assignment = make_assignment(inst, std::move(best_sigma));
  rep.outer_iterations = count;
  rep.objective_trace.emplace_back(0, rep.assignment.value);
  rep.terminated_by = Termination::converged;
  rep.elapsed = std::chrono::duration_cast<Duration>(Clock::now() - start);
  return rep;
}

}  // namespace lsap
