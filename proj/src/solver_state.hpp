#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lsap/core.hpp"
#include "lsap/kernels.hpp"
#include "lsap/types.hpp"

namespace lsap::detail {

struct Deadline {
  Clock::time_point at{};
  bool enabled = false;

  static Deadline starting(Clock::time_point start, const std::optional<Duration>& budget) {
    Deadline d;
    if (budget) {
      d.enabled = true;
      d.at = start + *budget;
    }
    return d;
  }

  bool expired() const { return enabled && Clock::now() >= at; }
};

// Mutable solver view of an instance plus one assignment: the inverse
// mapping, the per-agent / per-job benefit of the current pairing, a
// column-major matrix copy for contiguous job-side scans, and the delta
// tables in SoA form for the kernels.
struct SolverState {
  const Instance* inst = nullptr;
  std::int32_t n = 0;
  const double* a = nullptr;       // row-major benefits
  std::vector<double> a_cols;      // column-major copy; see build_columns()
  Perm sigma, tau;
  std::vector<double> agent_current;  // a[i][tau[i]]
  std::vector<double> job_current;    // a[sigma[j]][j]
  double value = 0.0;

  std::vector<double> agent_delta, job_delta;
  std::vector<std::int32_t> agent_partner, job_partner;

  void init(const Instance& instance, const Assignment& initial) {
    inst = &instance;
    n = instance.n;
    a = instance.benefits.data();
    sigma = initial.sigma;
    tau = initial.tau;
    value = initial.value;
    agent_current.resize(n);
    job_current.resize(n);
    for (std::int32_t j = 0; j < n; ++j) {
      job_current[j] = inst->at(sigma[j], j);
      agent_current[sigma[j]] = job_current[j];
    }
    agent_delta.assign(n, 0.0);
    job_delta.assign(n, 0.0);
    agent_partner.assign(n, -1);
    job_partner.assign(n, -1);
  }

  // O(n^2); checked against the deadline so tight budgets still return
  // promptly. Returns false when aborted.
  bool build_columns(const Deadline& dl) {
    a_cols.resize(static_cast<std::size_t>(n) * n);
    for (std::int32_t i = 0; i < n; ++i) {
      const double* row = a + static_cast<std::size_t>(i) * n;
      for (std::int32_t j = 0; j < n; ++j)
        a_cols[static_cast<std::size_t>(j) * n + i] = row[j];
      if ((i & 63) == 0 && dl.expired()) return false;
    }
    return true;
  }

  kernels::ScanResult scan_agent(std::int32_t i, double eps) const {
    const auto scan = kernels::active().exchange_scan;
    const std::int32_t j_old = tau[i];
    return scan(a + static_cast<std::size_t>(i) * n,
                a_cols.data() + static_cast<std::size_t>(j_old) * n, sigma.data(),
                /*stride=*/1, job_current.data(), agent_current[i], j_old, n, eps);
  }

  kernels::ScanResult scan_job(std::int32_t j, double eps) const {
    const auto scan = kernels::active().exchange_scan;
    const std::int32_t holder = sigma[j];
    return scan(a_cols.data() + static_cast<std::size_t>(j) * n,
                a + static_cast<std::size_t>(holder) * n, tau.data(),
                /*stride=*/1, agent_current.data(), job_current[j], holder, n, eps);
  }

  void eval_agent(std::int32_t i, double eps) {
    const auto r = scan_agent(i, eps);
    agent_delta[i] = r.delta;
    agent_partner[i] = r.partner;
  }

  void eval_job(std::int32_t j, double eps) {
    const auto r = scan_job(j, eps);
    job_delta[j] = r.delta;
    job_partner[j] = r.partner;
  }

  double agent_proposal_delta(std::int32_t i, std::int32_t j_new) const {
    const std::int32_t j_old = tau[i];
    const std::int32_t displaced = sigma[j_new];
    const auto* A = a;
    const auto N = static_cast<std::size_t>(n);
    return (A[i * N + j_new] - A[i * N + j_old]) +
           (A[displaced * N + j_old] - A[displaced * N + j_new]);
  }

  double job_proposal_delta(std::int32_t i_new, std::int32_t j) const {
    const std::int32_t holder = sigma[j];
    const std::int32_t j_old = tau[i_new];
    const auto* A = a;
    const auto N = static_cast<std::size_t>(n);
    return (A[i_new * N + j] - A[holder * N + j]) +
           (A[holder * N + j_old] - A[i_new * N + j_old]);
  }

  // Commits agent i -> job j_new; the displaced holder takes i's old job.
  // delta must come from the matching *_proposal_delta call.
  void apply_exchange(std::int32_t i, std::int32_t j_new, double delta) {
    const std::int32_t j_old = tau[i];
    const std::int32_t displaced = sigma[j_new];
    sigma[j_new] = i;
    sigma[j_old] = displaced;
    tau[i] = j_new;
    tau[displaced] = j_old;
    const auto N = static_cast<std::size_t>(n);
    agent_current[i] = a[i * N + j_new];
    agent_current[displaced] = a[displaced * N + j_old];
    job_current[j_new] = agent_current[i];
    job_current[j_old] = agent_current[displaced];
    value += delta;
  }

  Assignment snapshot_assignment() const {
    Assignment out;
    out.sigma = sigma;
    out.tau = tau;
    out.value = 0.0;
    for (std::int32_t j = 0; j < n; ++j) out.value += inst->at(out.sigma[j], j);
    return out;
  }
};

}  // namespace lsap::detail
