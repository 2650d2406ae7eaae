#include <limits>
#include <vector>

#include "lsap/baselines.hpp"
#include "lsap/core.hpp"

namespace lsap {

// Potential-based shortest augmenting path method on cost = -benefit,
// one row at a time; 1-based arrays with column 0 as the sentinel.
SolveReport hungarian_solve(const Instance& inst) {
  inst.validate();
  const auto start = Clock::now();
  const std::int32_t n = inst.n;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::int32_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);

  for (std::int32_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::int32_t j0 = 0;
    minv.assign(n + 1, inf);
    used.assign(n + 1, 0);
    do {
      used[j0] = 1;
      const std::int32_t i0 = match[j0];
      const double* row = inst.row(i0 - 1);
      double delta = inf;
      std::int32_t j1 = 0;
      for (std::int32_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::int32_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::int32_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Perm sigma(n);
  for (std::int32_t j = 1; j <= n; ++j) sigma[j - 1] = match[j] - 1;

  SolveReport rep;
  rep.assignment = make_assignment(inst, std::move(sigma));
  rep.outer_iterations = n;
  rep.objective_trace.emplace_back(0, rep.assignment.value);
  rep.terminated_by = Termination::converged;
  rep.elapsed = std::chrono::duration_cast<Duration>(Clock::now() - start);
  return rep;
}

}  // namespace lsap
