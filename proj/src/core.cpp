#include "lsap/core.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace lsap {

void Instance::validate() const {
  if (n < 1) throw Error("instance size must be >= 1, got " + std::to_string(n));
  if (benefits.size() != static_cast<std::size_t>(n) * n)
    throw Error("benefit matrix is not " + std::to_string(n) + "x" + std::to_string(n));
  for (double v : benefits)
    if (!std::isfinite(v)) throw Error("benefit matrix contains a non-finite entry");
}

double objective(const Instance& inst, const Assignment& asg) {
  if (asg.size() != inst.n)
    throw Error("assignment size " + std::to_string(asg.size()) +
                " does not match instance size " + std::to_string(inst.n));
  double sum = 0.0;
  for (std::int32_t j = 0; j < inst.n; ++j) sum += inst.at(asg.sigma[j], j);
  return sum;
}

bool is_permutation(const Perm& p) {
  const std::int32_t n = static_cast<std::int32_t>(p.size());
  std::vector<bool> seen(n, false);
  for (std::int32_t v : p) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Perm make_tau(const Perm& sigma) {
  if (!is_permutation(sigma)) throw Error("invalid assignment: not a permutation");
  Perm tau(sigma.size());
  for (std::int32_t j = 0; j < static_cast<std::int32_t>(sigma.size()); ++j)
    tau[sigma[j]] = j;
  return tau;
}

Assignment make_assignment(const Instance& inst, Perm sigma) {
  Assignment asg;
  asg.sigma = std::move(sigma);
  asg.tau = make_tau(asg.sigma);
  asg.value = objective(inst, asg);
  return asg;
}

Assignment switch_exchange(std::int32_t i, std::int32_t j, const Assignment& asg,
                           const Instance& inst) {
  const std::int32_t n = inst.n;
  if (asg.size() != n) throw Error("assignment does not match instance");
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw Error("exchange indices out of range");
  if (asg.tau[i] == j)
    throw Error("no-op exchange: agent " + std::to_string(i) +
                " already holds job " + std::to_string(j));

  Assignment out = asg;
  const double delta = agent_exchange_delta(inst, asg, i, j);
  const std::int32_t j_old = asg.tau[i];
  const std::int32_t displaced = asg.sigma[j];
  out.sigma[j] = i;
  out.sigma[j_old] = displaced;
  out.tau[i] = j;
  out.tau[displaced] = j_old;
  out.value = asg.value + delta;
  return out;
}

void validate_assignment(const Instance& inst, const Assignment& asg) {
  if (asg.size() != inst.n || static_cast<std::int32_t>(asg.tau.size()) != inst.n)
    throw Error("assignment does not match instance size");
  if (!is_permutation(asg.sigma)) throw Error("sigma is not a permutation");
  for (std::int32_t j = 0; j < inst.n; ++j)
    if (asg.tau[asg.sigma[j]] != j) throw Error("tau is not the inverse of sigma");
  const double fresh = objective(inst, asg);
  if (std::abs(fresh - asg.value) > 1e-9)
    throw Error("cached value " + std::to_string(asg.value) +
                " drifted from objective " + std::to_string(fresh));
}

}  // namespace lsap
