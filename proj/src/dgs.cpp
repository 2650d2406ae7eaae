#include "lsap/dgs.hpp"

#include <string>
#include <vector>

#include "lsap/core.hpp"
#include "lsap/kernels.hpp"
#include "lsap/rng.hpp"
#include "solver_state.hpp"

namespace lsap {

namespace {
constexpr std::size_t kTraceCap = 100000;

void push_trace(SolveReport& rep, std::int64_t switches, double value) {
  if (rep.objective_trace.size() < kTraceCap)
    rep.objective_trace.emplace_back(switches, value);
}
}  // namespace

Assignment initial_random(const Instance& inst, std::uint64_t seed) {
  inst.validate();
  return make_assignment(inst, random_perm(inst.n, seed));
}

void ade(std::int32_t i, const Instance& inst, const Assignment& asg, DeltaTables& tables) {
  const std::int32_t n = inst.n;
  if (asg.size() != n) throw Error("assignment does not match instance");
  if (i < 0 || i >= n) throw Error("agent index out of range");
  if (tables.agent_records.size() != static_cast<std::size_t>(n))
    tables.agent_records.resize(n);

  std::vector<double> job_cur(n);
  for (std::int32_t j = 0; j < n; ++j) job_cur[j] = inst.at(asg.sigma[j], j);

  const std::int32_t j_old = asg.tau[i];
  const auto r = kernels::active().exchange_scan(
      inst.row(i), inst.benefits.data() + j_old, asg.sigma.data(), /*stride=*/n,
      job_cur.data(), inst.at(i, j_old), j_old, n, /*eps=*/0.0);
  tables.agent_records[i] = {r.partner, r.delta, r.active()};
}

void jde(std::int32_t j, const Instance& inst, const Assignment& asg, DeltaTables& tables) {
  const std::int32_t n = inst.n;
  if (asg.size() != n) throw Error("assignment does not match instance");
  if (j < 0 || j >= n) throw Error("job index out of range");
  if (tables.job_records.size() != static_cast<std::size_t>(n))
    tables.job_records.resize(n);

  std::vector<double> col(n), agent_cur(n);
  for (std::int32_t i = 0; i < n; ++i) {
    col[i] = inst.at(i, j);
    agent_cur[i] = inst.at(i, asg.tau[i]);
  }

  const std::int32_t holder = asg.sigma[j];
  const auto r = kernels::active().exchange_scan(
      col.data(), inst.benefits.data() + static_cast<std::size_t>(holder) * n,
      asg.tau.data(), /*stride=*/1, agent_cur.data(), inst.at(holder, j), holder, n,
      /*eps=*/0.0);
  tables.job_records[j] = {r.partner, r.delta, r.active()};
}

SolveReport dgs_sequential(const Instance& inst, const DgsConfig& cfg) {
  inst.validate();
  cfg.validate();
  const auto start = Clock::now();
  const auto dl = detail::Deadline::starting(start, cfg.deadline);
  const double eps = cfg.improvement_epsilon;
  const std::int32_t n = inst.n;

  detail::SolverState st;
  st.init(inst, initial_random(inst, cfg.seed));

  SolveReport rep;
  push_trace(rep, 0, st.value);

  bool expired = dl.expired() || !st.build_columns(dl);
  const auto argmax = kernels::active().argmax;

  while (!expired) {
    ++rep.outer_iterations;
    const double f_start = st.value;

    for (std::int32_t i = 0; i < n && !expired; ++i) {
      st.eval_agent(i, eps);
      if ((i & 15) == 0 && dl.expired()) expired = true;
    }
    for (std::int32_t j = 0; j < n && !expired; ++j) {
      st.eval_job(j, eps);
      if ((j & 15) == 0 && dl.expired()) expired = true;
    }
    if (expired) break;

    while (true) {
      const auto best_agent = argmax(st.agent_delta.data(), n);
      const auto best_job = argmax(st.job_delta.data(), n);
      if (!(best_agent.value > 0.0) && !(best_job.value > 0.0)) break;

      std::int32_t i, j_new;
      double actual;
      if (best_agent.value >= best_job.value) {  // agent side wins ties
        i = best_agent.index;
        j_new = st.agent_partner[i];
        st.agent_delta[i] = 0.0;
        st.agent_partner[i] = -1;
        actual = st.agent_proposal_delta(i, j_new);
      } else {
        const std::int32_t j = best_job.index;
        i = st.job_partner[j];
        j_new = j;
        st.job_delta[j] = 0.0;
        st.job_partner[j] = -1;
        actual = st.job_proposal_delta(i, j_new);
      }

      // The stored record can be stale; the recomputed improvement is the
      // commit authority. A failed commit leaves the record zeroed.
      if (actual > eps) {
        const std::int32_t j_old = st.tau[i];
        const std::int32_t displaced = st.sigma[j_new];
        st.apply_exchange(i, j_new, actual);
        ++rep.switches_applied;
        push_trace(rep, rep.switches_applied, st.value);
        st.eval_agent(i, eps);
        st.eval_agent(displaced, eps);
        st.eval_job(j_old, eps);
        st.eval_job(j_new, eps);
      }

      if (dl.expired()) {
        expired = true;
        break;
      }
    }
    if (expired) break;

    if (rep.objective_trace.size() >= kTraceCap)
      rep.objective_trace.emplace_back(rep.switches_applied, st.value);
    if (st.value == f_start) break;
  }

  rep.terminated_by = expired ? Termination::deadline : Termination::converged;
  rep.assignment = st.snapshot_assignment();
  rep.elapsed = std::chrono::duration_cast<Duration>(Clock::now() - start);
  return rep;
}

}  // namespace lsap
