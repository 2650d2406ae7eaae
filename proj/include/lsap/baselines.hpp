#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "lsap/types.hpp"

namespace lsap {

struct AuctionConfig {
  // Bid increment. Unset picks (max benefit - min benefit) / (2n), or 1.0
  // for a constant matrix. The final objective is within n * epsilon of
  // the optimum.
  std::optional<double> epsilon;
  bool scaling = false;        // start at a coarse epsilon and refine
  double scale_factor = 4.0;   // epsilon divisor between scaling phases
  std::optional<Duration> deadline;

  void validate() const {
    if (epsilon && !(*epsilon > 0.0)) throw Error("auction: epsilon must be > 0");
    if (!(scale_factor > 1.0)) throw Error("auction: scale_factor must be > 1");
  }
};

// Synchronous bidding rounds: every unassigned agent bids for its best job
// under net benefit (benefit - price) with increment best - second + eps;
// each job goes to its highest bidder, displacing any holder, until all
// agents are assigned. If the deadline fires first, the partial assignment
// is completed greedily and the report is flagged completed_greedily.
// on_round, when set, observes the price vector after every round.
SolveReport auction_solve(const Instance& inst, const AuctionConfig& cfg = {},
                          const std::function<void(const std::vector<double>&)>& on_round = {});

// Exact maximum-benefit assignment in O(n^3); the optimality oracle for
// everything else.
SolveReport hungarian_solve(const Instance& inst);

// Exhaustive enumeration of all n! assignments. Refuses n > 10.
SolveReport brute_force_solve(const Instance& inst);

}  // namespace lsap
