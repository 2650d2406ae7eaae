#include <algorithm>
#include <limits>
#include <vector>

#include "lsap/baselines.hpp"
#include "lsap/core.hpp"
#include "lsap/kernels.hpp"
#include "solver_state.hpp"

namespace lsap {

namespace {

struct AuctionState {
  std::int32_t n;
  std::vector<double> prices;
  std::vector<std::int32_t> owner;         // job -> agent
  std::vector<std::int32_t> assigned_job;  // agent -> job
  std::int32_t unassigned = 0;

  explicit AuctionState(std::int32_t n_)
      : n(n_), prices(n_, 0.0), owner(n_, -1), assigned_job(n_, -1), unassigned(n_) {}

  void clear_assignment() {
    std::fill(owner.begin(), owner.end(), -1);
    std::fill(assigned_job.begin(), assigned_job.end(), -1);
    unassigned = n;
  }
};

// One pass of synchronous rounds at a fixed epsilon; prices persist across
// calls. Returns false when the deadline fired with agents still unassigned.
bool run_phase(const Instance& inst, AuctionState& st, double eps,
               const detail::Deadline& dl, SolveReport& rep,
               const std::function<void(const std::vector<double>&)>& on_round) {
  const std::int32_t n = st.n;
  const auto net_scan = kernels::active().net_scan;
  std::vector<double> bid_value(n);
  std::vector<std::int32_t> bid_winner(n);

  while (st.unassigned > 0) {
    if (dl.expired()) return false;
    ++rep.outer_iterations;
    std::fill(bid_value.begin(), bid_value.end(), -std::numeric_limits<double>::infinity());
    std::fill(bid_winner.begin(), bid_winner.end(), -1);

    for (std::int32_t i = 0; i < n; ++i) {
      if (st.assigned_job[i] >= 0) continue;
      const double* row = inst.row(i);
      const auto best = net_scan(row, st.prices.data(), n, -1);
      const double second =
          n > 1 ? net_scan(row, st.prices.data(), n, best.index).value : best.value;
      const double bid = st.prices[best.index] + (best.value - second) + eps;
      // Highest bid wins a job; ascending agent order makes ties go to the
      // smallest agent index.
      if (bid > bid_value[best.index]) {
        bid_value[best.index] = bid;
        bid_winner[best.index] = i;
      }
    }

    for (std::int32_t j = 0; j < n; ++j) {
      const std::int32_t w = bid_winner[j];
      if (w < 0) continue;
      const std::int32_t prev = st.owner[j];
      if (prev >= 0) {
        st.assigned_job[prev] = -1;
        ++st.unassigned;
      }
      st.owner[j] = w;
      st.assigned_job[w] = j;
      --st.unassigned;
      st.prices[j] = bid_value[j];
      ++rep.switches_applied;  // awards, including displacements
    }

    if (on_round) on_round(st.prices);
  }
  return true;
}

// Deadline path: hand every still-unassigned agent its best free job by raw
// benefit so the returned assignment is complete.
void complete_greedily(const Instance& inst, AuctionState& st) {
  const std::int32_t n = st.n;
  std::vector<std::int32_t> free_jobs;
  for (std::int32_t j = 0; j < n; ++j)
    if (st.owner[j] < 0) free_jobs.push_back(j);
  for (std::int32_t i = 0; i < n; ++i) {
    if (st.assigned_job[i] >= 0) continue;
    std::size_t best_slot = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < free_jobs.size(); ++s) {
      const double v = inst.at(i, free_jobs[s]);
      if (v > best) {
        best = v;
        best_slot = s;
      }
    }
    const std::int32_t j = free_jobs[best_slot];
    st.owner[j] = i;
    st.assigned_job[i] = j;
    free_jobs.erase(free_jobs.begin() + best_slot);
  }
  st.unassigned = 0;
}

}  // namespace

SolveReport auction_solve(const Instance& inst, const AuctionConfig& cfg,
                          const std::function<void(const std::vector<double>&)>& on_round) {
  inst.validate();
  cfg.validate();
  const auto start = Clock::now();
  const auto dl = detail::Deadline::starting(start, cfg.deadline);
  const std::int32_t n = inst.n;

  const auto [lo, hi] = std::minmax_element(inst.benefits.begin(), inst.benefits.end());
  const double range = *hi - *lo;
  const double eps_target =
      cfg.epsilon ? *cfg.epsilon : (range > 0.0 ? range / (2.0 * n) : 1.0);

  AuctionState st(n);
  SolveReport rep;
  bool finished = true;

  if (cfg.scaling) {
    double eps = std::max(eps_target, range > 0.0 ? range / 2.0 : eps_target);
    while (true) {
      st.clear_assignment();
      finished = run_phase(inst, st, eps, dl, rep, on_round);
      if (!finished || eps <= eps_target) break;
      eps = std::max(eps_target, eps / cfg.scale_factor);
    }
  } else {
    finished = run_phase(inst, st, eps_target, dl, rep, on_round);
  }

  if (!finished) {
    complete_greedily(inst, st);
    rep.terminated_by = Termination::deadline;
    rep.completed_greedily = true;
  } else {
    rep.terminated_by = Termination::converged;
  }

  Perm sigma(n);
  for (std::int32_t j = 0; j < n; ++j) sigma[j] = st.owner[j];
  rep.assignment = make_assignment(inst, std::move(sigma));
  rep.objective_trace.emplace_back(0, rep.assignment.value);
  rep.elapsed = std::chrono::duration_cast<Duration>(Clock::now() - start);
  return rep;
}

}  // namespace lsap
