#include "lsap/parallel.hpp"

#include <atomic>
#include <thread>

#include "lsap/core.hpp"
#include "lsap/kernels.hpp"
#include "solver_state.hpp"
#include "thread_pool.hpp"

namespace lsap {

namespace {

constexpr std::size_t kTraceCap = 100000;

void push_trace(SolveReport& rep, std::int64_t switches, double value) {
  if (rep.objective_trace.size() < kTraceCap)
    rep.objective_trace.emplace_back(switches, value);
}

struct CcScratch {
  std::vector<std::uint8_t> reserved_mask, conflicted_mask;

  void reset(std::int32_t n) {
    reserved_mask.assign(n, 0);
    conflicted_mask.assign(n, 0);
  }
};

// Reservation pass over the current tables: agents in ascending order, then
// jobs in ascending order. A proposal is accepted when both of its agent
// endpoints are unreserved; otherwise its proposer (the job's current
// holder on the job side) is marked conflicted.
void check_conflicts_impl(std::int32_t n, const double* agent_delta,
                          const std::int32_t* agent_partner, const double* job_delta,
                          const std::int32_t* job_partner, const std::int32_t* sigma,
                          ConflictSets& out, CcScratch& scratch) {
  scratch.reset(n);
  out.agent_accepted.assign(n, 0);
  out.job_accepted.assign(n, 0);
  out.reserved.clear();
  out.conflicted.clear();
  out.conflicted_jobs.clear();
  auto& res = scratch.reserved_mask;
  auto& con = scratch.conflicted_mask;

  for (std::int32_t i = 0; i < n; ++i) {
    if (!(agent_delta[i] > 0.0) || agent_partner[i] < 0) continue;
    const std::int32_t displaced = sigma[agent_partner[i]];
    if (res[i] || res[displaced]) {
      con[i] = 1;
    } else {
      res[i] = 1;
      res[displaced] = 1;
      out.agent_accepted[i] = 1;
    }
  }
  for (std::int32_t j = 0; j < n; ++j) {
    if (!(job_delta[j] > 0.0) || job_partner[j] < 0) continue;
    const std::int32_t holder = sigma[j];
    const std::int32_t i_new = job_partner[j];
    if (res[holder] || res[i_new]) {
      con[holder] = 1;
      out.conflicted_jobs.push_back(j);
    } else {
      res[holder] = 1;
      res[i_new] = 1;
      out.job_accepted[j] = 1;
    }
  }
  for (std::int32_t i = 0; i < n; ++i) {
    if (res[i]) out.reserved.push_back(i);
    if (con[i]) out.conflicted.push_back(i);
  }
}

// Runs one full evaluation of all 2n records over the pool. Returns false
// when the deadline cut it short.
bool eval_all(detail::SolverState& st, detail::ThreadPool& pool, std::int32_t chunk,
              double eps, const detail::Deadline& dl) {
  const std::int64_t n = st.n;
  std::atomic<bool> stop{false};
  pool.for_each_chunk(0, 2 * n, chunk, [&](std::int64_t lo, std::int64_t hi) {
    if (stop.load(std::memory_order_relaxed)) return;
    for (std::int64_t t = lo; t < hi; ++t) {
      if (t < n)
        st.eval_agent(static_cast<std::int32_t>(t), eps);
      else
        st.eval_job(static_cast<std::int32_t>(t - n), eps);
      if ((t & 15) == 0 && dl.expired()) {
        stop.store(true, std::memory_order_relaxed);
        return;
      }
    }
  });
  return !stop.load(std::memory_order_relaxed);
}

bool reeval_lists(detail::SolverState& st, detail::ThreadPool& pool, std::int32_t chunk,
                  double eps, const detail::Deadline& dl,
                  const std::vector<std::int32_t>& agents,
                  const std::vector<std::int32_t>& jobs) {
  std::atomic<bool> stop{false};
  const auto run = [&](const std::vector<std::int32_t>& list, bool agent_side) {
    pool.for_each_chunk(0, static_cast<std::int64_t>(list.size()), chunk,
                        [&](std::int64_t lo, std::int64_t hi) {
                          if (stop.load(std::memory_order_relaxed)) return;
                          for (std::int64_t k = lo; k < hi; ++k) {
                            if (agent_side)
                              st.eval_agent(list[k], eps);
                            else
                              st.eval_job(list[k], eps);
                            if ((k & 15) == 0 && dl.expired()) {
                              stop.store(true, std::memory_order_relaxed);
                              return;
                            }
                          }
                        });
  };
  run(agents, true);
  if (!stop.load(std::memory_order_relaxed)) run(jobs, false);
  return !stop.load(std::memory_order_relaxed);
}

}  // namespace

std::int32_t ParallelConfig::effective_workers() const {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<std::int32_t>(hw) : 1;
}

void evaluate_all_parallel(const Instance& inst, const Assignment& asg,
                           DeltaTables& tables, const ParallelConfig& cfg) {
  inst.validate();
  cfg.validate();
  if (asg.size() != inst.n) throw Error("assignment does not match instance");

  detail::SolverState st;
  st.init(inst, asg);
  detail::Deadline no_deadline;
  st.build_columns(no_deadline);

  detail::ThreadPool pool(cfg.effective_workers());
  eval_all(st, pool, cfg.chunk, cfg.improvement_epsilon, no_deadline);

  const std::int32_t n = inst.n;
  tables.agent_records.resize(n);
  tables.job_records.resize(n);
  for (std::int32_t i = 0; i < n; ++i)
    tables.agent_records[i] = {st.agent_partner[i], st.agent_delta[i],
                               st.agent_partner[i] >= 0};
  for (std::int32_t j = 0; j < n; ++j)
    tables.job_records[j] = {st.job_partner[j], st.job_delta[j], st.job_partner[j] >= 0};
}

ConflictSets check_conflicts(const DeltaTables& tables, const Assignment& asg) {
  const std::int32_t n = asg.size();
  if (tables.agent_records.size() != static_cast<std::size_t>(n) ||
      tables.job_records.size() != static_cast<std::size_t>(n))
    throw Error("delta tables do not match assignment size");

  std::vector<double> ad(n), jd(n);
  std::vector<std::int32_t> ap(n), jp(n);
  for (std::int32_t i = 0; i < n; ++i) {
    ad[i] = tables.agent_records[i].active ? tables.agent_records[i].delta : 0.0;
    ap[i] = tables.agent_records[i].partner;
  }
  for (std::int32_t j = 0; j < n; ++j) {
    jd[j] = tables.job_records[j].active ? tables.job_records[j].delta : 0.0;
    jp[j] = tables.job_records[j].partner;
  }

  ConflictSets out;
  CcScratch scratch;
  check_conflicts_impl(n, ad.data(), ap.data(), jd.data(), jp.data(), asg.sigma.data(),
                       out, scratch);
  return out;
}

std::pair<Assignment, std::vector<AppliedExchange>> apply_parallel_switches(
    const Instance& inst, const Assignment& asg, const DeltaTables& tables,
    const ConflictSets& sets, const ParallelConfig& cfg) {
  inst.validate();
  cfg.validate();
  const std::int32_t n = inst.n;
  if (asg.size() != n) throw Error("assignment does not match instance");
  const double eps = cfg.improvement_epsilon;

  Assignment out = asg;
  std::vector<AppliedExchange> applied;
  std::vector<std::uint8_t> touched_agent(n, 0), touched_job(n, 0);

  const auto commit = [&](std::int32_t agent, std::int32_t j_new, double delta) {
    const std::int32_t j_old = out.tau[agent];
    const std::int32_t displaced = out.sigma[j_new];
    if (touched_agent[agent] || touched_agent[displaced] || touched_job[j_new] ||
        touched_job[j_old])
      throw Error("internal: conflict check admitted overlapping exchanges");
    touched_agent[agent] = touched_agent[displaced] = 1;
    touched_job[j_new] = touched_job[j_old] = 1;
    out.sigma[j_new] = agent;
    out.sigma[j_old] = displaced;
    out.tau[agent] = j_new;
    out.tau[displaced] = j_old;
    out.value += delta;
    applied.push_back({agent, j_new, j_old, displaced, delta});
  };

  // Agent-side entries of the combined improvement vector, then job-side;
  // every improvement is recomputed against the frozen input assignment,
  // which disjointness makes exact.
  for (std::int32_t i = 0; i < n; ++i) {
    if (!sets.agent_accepted[i]) continue;
    const auto& rec = tables.agent_records[i];
    if (!rec.active || !(rec.delta > 0.0) || rec.partner < 0) continue;
    const double actual = agent_exchange_delta(inst, asg, i, rec.partner);
    if (actual > eps) commit(i, rec.partner, actual);
  }
  for (std::int32_t j = 0; j < n; ++j) {
    if (!sets.job_accepted[j]) continue;
    const auto& rec = tables.job_records[j];
    if (!rec.active || !(rec.delta > 0.0) || rec.partner < 0) continue;
    const double actual = job_exchange_delta(inst, asg, rec.partner, j);
    if (actual > eps) commit(rec.partner, j, actual);
  }
  return {std::move(out), std::move(applied)};
}

SolveReport dgs_parallel(const Instance& inst, const ParallelConfig& cfg) {
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

  detail::ThreadPool pool(cfg.effective_workers());
  bool expired = dl.expired() || !st.build_columns(dl);
  const auto argmax = kernels::active().argmax;

  ConflictSets cc;
  CcScratch cc_scratch;
  std::vector<AppliedExchange> batch;
  std::vector<std::uint8_t> touched_agent(n, 0), touched_job(n, 0);
  std::vector<std::int32_t> reeval_agents, reeval_jobs;

  while (!expired) {
    ++rep.outer_iterations;
    const double f_start = st.value;

    if (!eval_all(st, pool, cfg.chunk, eps, dl)) {
      expired = true;
      break;
    }

    while (true) {
      const auto best_agent = argmax(st.agent_delta.data(), n);
      const auto best_job = argmax(st.job_delta.data(), n);
      if (!(best_agent.value > 0.0) && !(best_job.value > 0.0)) break;

      check_conflicts_impl(n, st.agent_delta.data(), st.agent_partner.data(),
                           st.job_delta.data(), st.job_partner.data(), st.sigma.data(),
                           cc, cc_scratch);

      // Select: accepted proposals, improvement recomputed on the frozen
      // assignment. Records of accepted proposals are zeroed whether or not
      // they survive the guard, mirroring the sequential zero-before-test.
      batch.clear();
      for (std::int32_t i = 0; i < n; ++i) {
        if (!cc.agent_accepted[i]) continue;
        const std::int32_t j_new = st.agent_partner[i];
        st.agent_delta[i] = 0.0;
        st.agent_partner[i] = -1;
        const double actual = st.agent_proposal_delta(i, j_new);
        if (actual > eps) batch.push_back({i, j_new, st.tau[i], st.sigma[j_new], actual});
      }
      for (std::int32_t j = 0; j < n; ++j) {
        if (!cc.job_accepted[j]) continue;
        const std::int32_t i_new = st.job_partner[j];
        st.job_delta[j] = 0.0;
        st.job_partner[j] = -1;
        const double actual = st.job_proposal_delta(i_new, j);
        if (actual > eps) batch.push_back({i_new, j, st.tau[i_new], st.sigma[j], actual});
      }

      // Conflict-freeness: the batch must touch each agent and job at most
      // once, or applying it concurrently would be unsound.
      for (const auto& ex : batch) {
        if (touched_agent[ex.agent] || touched_agent[ex.displaced] ||
            touched_job[ex.new_job] || touched_job[ex.old_job])
          throw Error("internal: conflict check admitted overlapping exchanges");
        touched_agent[ex.agent] = touched_agent[ex.displaced] = 1;
        touched_job[ex.new_job] = touched_job[ex.old_job] = 1;
      }

      // Disjoint, so order-independent; applied ascending for a stable
      // value accumulation and trace.
      for (const auto& ex : batch) {
        st.apply_exchange(ex.agent, ex.new_job, ex.delta);
        ++rep.switches_applied;
        push_trace(rep, rep.switches_applied, st.value);
      }

      reeval_agents.clear();
      reeval_jobs.clear();
      for (const auto& ex : batch) {
        reeval_agents.push_back(ex.agent);
        reeval_agents.push_back(ex.displaced);
        reeval_jobs.push_back(ex.new_job);
        reeval_jobs.push_back(ex.old_job);
      }
      if (cfg.reeval == ParallelConfig::Reeval::touched_and_conflicted) {
        for (std::int32_t i : cc.conflicted)
          if (!touched_agent[i]) reeval_agents.push_back(i);
        for (std::int32_t j : cc.conflicted_jobs)
          if (!touched_job[j]) reeval_jobs.push_back(j);
      }

      for (const auto& ex : batch) {
        touched_agent[ex.agent] = touched_agent[ex.displaced] = 0;
        touched_job[ex.new_job] = touched_job[ex.old_job] = 0;
      }

      if (!reeval_lists(st, pool, cfg.chunk, eps, dl, reeval_agents, reeval_jobs)) {
        expired = true;
        break;
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
