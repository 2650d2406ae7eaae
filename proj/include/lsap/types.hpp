#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lsap {

using Perm = std::vector<std::int32_t>;
using Clock = std::chrono::steady_clock;
using Duration = std::chrono::nanoseconds;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed instance file. `line` is 1-based; 0 means "whole stream".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line(line) {}
  int line = 0;
};

// Square benefit matrix. benefits[i * n + j] is the benefit of giving
// agent i the job j. Entries must be finite.
struct Instance {
  std::int32_t n = 0;
  std::vector<double> benefits;  // row-major, n*n

  Instance() = default;
  Instance(std::int32_t n_, std::vector<double> b) : n(n_), benefits(std::move(b)) {}

  static Instance zeros(std::int32_t n) {
    return Instance(n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0));
  }

  double at(std::int32_t i, std::int32_t j) const {
    return benefits[static_cast<std::size_t>(i) * n + j];
  }
  double& at(std::int32_t i, std::int32_t j) {
    return benefits[static_cast<std::size_t>(i) * n + j];
  }
  const double* row(std::int32_t i) const {
    return benefits.data() + static_cast<std::size_t>(i) * n;
  }

  // Throws Error if n < 1, the matrix is not n*n, or an entry is non-finite.
  void validate() const;
};

// A full assignment: sigma maps job -> agent, tau is its inverse
// (agent -> job), value caches the objective.
struct Assignment {
  Perm sigma;
  Perm tau;
  double value = 0.0;

  std::int32_t size() const { return static_cast<std::int32_t>(sigma.size()); }
};

// Best candidate 2-exchange for one agent (partner = job) or one job
// (partner = agent). Inactive records carry delta 0 and partner -1.
struct ExchangeRecord {
  std::int32_t partner = -1;
  double delta = 0.0;
  bool active = false;
};

struct DeltaTables {
  std::vector<ExchangeRecord> agent_records;
  std::vector<ExchangeRecord> job_records;

  static DeltaTables sized(std::int32_t n) {
    DeltaTables t;
    t.agent_records.assign(n, {});
    t.job_records.assign(n, {});
    return t;
  }
};

enum class Termination { converged, deadline };

inline const char* to_string(Termination t) {
  return t == Termination::converged ? "converged" : "deadline";
}

struct SolveReport {
  Assignment assignment;
  // (switch count, objective value) after each committed switch; capped,
  // then one entry per outer pass.
  std::vector<std::pair<std::int64_t, double>> objective_trace;
  std::int64_t outer_iterations = 0;
  std::int64_t switches_applied = 0;
  Duration elapsed{0};
  Termination terminated_by = Termination::converged;
  std::optional<double> gap_vs_oracle;
  // Auction only: deadline hit before full assignment, remainder filled greedily.
  bool completed_greedily = false;
};

}  // namespace lsap
