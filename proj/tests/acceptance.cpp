// Acceptance suite: every release gate in one binary. Each criterion prints
// a single [PASS]/[FAIL] line with the measured numbers; the process exits
// nonzero if any gate fails. Expected total runtime is a few minutes on a
// desktop machine.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lsap/baselines.hpp"
#include "lsap/bench.hpp"
#include "lsap/core.hpp"
#include "lsap/dgs.hpp"
#include "lsap/geom.hpp"
#include "lsap/parallel.hpp"
#include "lsap/rng.hpp"

using namespace lsap;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string pct(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f%%", x * 100.0);
  return buf;
}

Instance random_instance(std::int32_t n, std::uint64_t seed, double scale = 10.0) {
  SplitMix64 rng(seed);
  Instance inst = Instance::zeros(n);
  for (auto& v : inst.benefits) v = unit_double(rng.next()) * scale;
  return inst;
}

double ms(Duration d) {
  return std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(d).count();
}

// 1. Mean optimality gap of sequential DGS against the exact optimum on
//    GEOM instances: mean <= 0.6%, max <= 1.5%.
void criterion_gap() {
  const std::vector<std::int32_t> sizes{128, 256, 512};
  const int instances = 20, seeds = 3;
  double gap_sum = 0.0, gap_max = 0.0;
  int runs = 0;
  for (const std::int32_t n : sizes) {
    for (int ii = 0; ii < instances; ++ii) {
      const std::uint64_t iseed = derive_instance_seed(1001, n, ii);
      const Instance inst = generate_geom({n, 100.0, iseed});
      const double opt = hungarian_solve(inst).assignment.value;
      for (int s = 0; s < seeds; ++s) {
        DgsConfig cfg;
        cfg.seed = derive_run_seed(iseed, s);
        const auto rep = dgs_sequential(inst, cfg);
        const double gap = (opt - rep.assignment.value) / opt;
        gap_sum += gap;
        gap_max = std::max(gap_max, gap);
        ++runs;
      }
    }
  }
  const double mean = gap_sum / runs;
  report(1, "optimality gap (dgs-seq vs hungarian, GEOM 128/256/512)",
         mean <= 0.006 && gap_max <= 0.015,
         "mean " + pct(mean) + " (limit 0.600%), max " + pct(gap_max) +
             " (limit 1.500%), runs " + std::to_string(runs));
}

// 2. Hungarian equals brute force exactly on 200 random instances, n <= 8.
void criterion_exact_oracle() {
  int agree = 0;
  const int total = 200;
  double worst = 0.0;
  for (int k = 0; k < total; ++k) {
    const std::int32_t n = 1 + k % 8;
    const Instance inst = random_instance(n, 20000 + k);
    const double h = hungarian_solve(inst).assignment.value;
    const double b = brute_force_solve(inst).assignment.value;
    worst = std::max(worst, std::abs(h - b));
    if (std::abs(h - b) <= 1e-9) ++agree;
  }
  report(2, "exact-oracle agreement (hungarian vs brute force)", agree == total,
         std::to_string(agree) + "/" + std::to_string(total) +
             " agree, worst |diff| = " + std::to_string(worst));
}

// 3. Auction epsilon bound on the criterion-2 suite; exact optimum for
//    integer benefits with eps = 0.9/n.
void criterion_auction_bound() {
  bool bound_ok = true;
  int exact = 0;
  const int total = 200;
  for (int k = 0; k < total; ++k) {
    const std::int32_t n = 1 + k % 8;
    const Instance inst = random_instance(n, 20000 + k);
    const double opt = hungarian_solve(inst).assignment.value;
    AuctionConfig cfg;
    cfg.epsilon = 0.05;
    const auto rep = auction_solve(inst, cfg);
    if (rep.assignment.value < opt - n * 0.05 - 1e-9) bound_ok = false;
  }
  for (int k = 0; k < total; ++k) {
    const std::int32_t n = 1 + k % 8;
    SplitMix64 rng(30000 + k);
    Instance inst = Instance::zeros(n);
    for (auto& v : inst.benefits) v = static_cast<double>(rng.next() % 100);
    AuctionConfig cfg;
    cfg.epsilon = 0.9 / n;
    const auto rep = auction_solve(inst, cfg);
    const double opt = brute_force_solve(inst).assignment.value;
    if (std::abs(rep.assignment.value - opt) <= 1e-9) ++exact;
  }
  report(3, "auction epsilon bound and integer exactness", bound_ok && exact == total,
         std::string("bound ") + (bound_ok ? "held" : "VIOLATED") + ", integer exact " +
             std::to_string(exact) + "/" + std::to_string(total));
}

// 4. Identical results for workers in {1,2,4,8} on n in {64,256,1024}.
void criterion_parallel_fidelity() {
  bool ok = true;
  std::string note;
  try {
    for (const std::int32_t n : {64, 256, 1024}) {
      const Instance inst = generate_geom({n, 100.0, derive_instance_seed(7, n, 0)});
      ParallelConfig cfg;
      cfg.seed = 5;
      cfg.workers = 1;
      const auto reference = dgs_parallel(inst, cfg);
      for (const std::int32_t w : {2, 4, 8}) {
        cfg.workers = w;
        const auto rep = dgs_parallel(inst, cfg);
        if (rep.assignment.sigma != reference.assignment.sigma ||
            rep.assignment.value != reference.assignment.value) {
          ok = false;
          note = "divergence at n=" + std::to_string(n) + " workers=" + std::to_string(w);
        }
      }
    }
  } catch (const std::exception& ex) {
    ok = false;
    note = std::string("conflict-freeness assertion fired: ") + ex.what();
  }
  report(4, "parallel fidelity across worker counts", ok,
         ok ? "objectives identical for workers {1,2,4,8} at n {64,256,1024}" : note);
}

// 5. Mean objective of dgs-par within 0.5% of dgs-seq over 30 seeded runs
//    at n = 512.
void criterion_quality_parity() {
  const Instance inst = generate_geom({512, 100.0, derive_instance_seed(11, 512, 0)});
  double seq_sum = 0.0, par_sum = 0.0;
  for (int s = 0; s < 30; ++s) {
    DgsConfig scfg;
    scfg.seed = 100 + s;
    seq_sum += dgs_sequential(inst, scfg).assignment.value;
    ParallelConfig pcfg;
    pcfg.seed = 100 + s;
    par_sum += dgs_parallel(inst, pcfg).assignment.value;
  }
  const double seq_mean = seq_sum / 30, par_mean = par_sum / 30;
  const double rel = std::abs(par_mean - seq_mean) / seq_mean;
  report(5, "quality parity (dgs-par vs dgs-seq, 30 runs at n=512)", rel <= 0.005,
         "mean seq " + std::to_string(seq_mean) + ", mean par " + std::to_string(par_mean) +
             ", rel diff " + pct(rel) + " (limit 0.500%)");
}

// 6. Relative speed: dgs-par (4 workers) at least 2x faster than dgs-seq at
//    n = 4096, and dgs-seq at least 2x faster than the auction baseline at
//    n = 2048 (target from the evaluation setup: 5x).
void criterion_relative_speed() {
  const unsigned cores = std::thread::hardware_concurrency();

  const Instance big = generate_geom({4096, 100.0, derive_instance_seed(13, 4096, 0)});
  const auto best_of = [](auto&& fn) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < 2; ++r) best = std::min(best, fn());
    return best;
  };
  const double seq_ms = best_of([&] {
    DgsConfig cfg;
    cfg.seed = 2;
    return ms(dgs_sequential(big, cfg).elapsed);
  });
  const double par_ms = best_of([&] {
    ParallelConfig cfg;
    cfg.seed = 2;
    cfg.workers = 4;
    return ms(dgs_parallel(big, cfg).elapsed);
  });
  const double parallel_speedup = seq_ms / par_ms;

  const Instance mid = generate_geom({2048, 100.0, derive_instance_seed(13, 2048, 0)});
  DgsConfig scfg;
  scfg.seed = 2;
  const double dgs_ms = ms(dgs_sequential(mid, scfg).elapsed);
  const double auction_ms = ms(auction_solve(mid).elapsed);
  const double auction_ratio = auction_ms / dgs_ms;

  std::ostringstream detail;
  detail.precision(2);
  detail << std::fixed << "dgs-par(4w) vs dgs-seq at n=4096: " << parallel_speedup
         << "x (seq " << seq_ms << "ms, par " << par_ms << "ms, host cores " << cores
         << "); dgs-seq vs auction at n=2048: " << auction_ratio << "x (auction "
         << auction_ms << "ms, dgs " << dgs_ms << "ms, target 5x)";
  report(6, "relative speedups", parallel_speedup >= 2.0 && auction_ratio >= 2.0,
         detail.str());
}

// 7. Anytime contract: deadlines of 0/1/10/100 ms on n = 4096 always return
//    a complete valid permutation with objective non-decreasing in the
//    deadline, for both engines.
void criterion_anytime() {
  const Instance inst = generate_geom({4096, 100.0, derive_instance_seed(17, 4096, 0)});
  bool ok = true;
  std::string note = "objectives: ";
  for (const bool parallel : {false, true}) {
    double prev = -1.0;
    for (const int budget : {0, 1, 10, 100}) {
      SolveReport rep;
      if (parallel) {
        ParallelConfig cfg;
        cfg.seed = 4;
        cfg.deadline = std::chrono::milliseconds(budget);
        rep = dgs_parallel(inst, cfg);
      } else {
        DgsConfig cfg;
        cfg.seed = 4;
        cfg.deadline = std::chrono::milliseconds(budget);
        rep = dgs_sequential(inst, cfg);
      }
      try {
        validate_assignment(inst, rep.assignment);
      } catch (const std::exception& ex) {
        ok = false;
        note = std::string("invalid assignment at deadline ") + std::to_string(budget) +
               "ms: " + ex.what();
      }
      if (rep.assignment.value + 1e-9 < prev) {
        ok = false;
        note = "objective decreased with a longer deadline (" + std::to_string(budget) + "ms)";
      }
      prev = std::max(prev, rep.assignment.value);
      if (ok && budget == 100)
        note += (parallel ? "par " : "seq ") + std::to_string(prev) + " ";
    }
  }
  report(7, "anytime contract at n=4096", ok, note);
}

// 8. Property sweep: incremental deltas, permutation closure, monotone
//    traces, termination without deadline up to n = 2048, GEOM metric
//    properties, CSV round-trip.
void criterion_properties() {
  bool ok = true;
  std::string note = "all properties held";

  // Incremental delta + closure on random instances.
  for (std::uint64_t seed = 0; seed < 10 && ok; ++seed) {
    const std::int32_t n = 2 + static_cast<std::int32_t>(seed % 6);
    const Instance inst = random_instance(n, 40000 + seed);
    const auto asg = make_assignment(inst, random_perm(n, seed));
    for (std::int32_t i = 0; i < n && ok; ++i) {
      for (std::int32_t j = 0; j < n && ok; ++j) {
        if (asg.tau[i] == j) continue;
        const auto moved = switch_exchange(i, j, asg, inst);
        if (std::abs((moved.value - asg.value) - agent_exchange_delta(inst, asg, i, j)) >
            1e-9) {
          ok = false;
          note = "incremental delta mismatch";
        }
        try {
          validate_assignment(inst, moved);
        } catch (const std::exception&) {
          ok = false;
          note = "permutation closure violated";
        }
      }
    }
  }

  // Termination and monotone traces without deadline, n up to 2048.
  for (const std::int32_t n : {512, 1024, 2048}) {
    if (!ok) break;
    const Instance inst = generate_geom({n, 100.0, derive_instance_seed(19, n, 0)});
    DgsConfig scfg;
    scfg.seed = 8;
    const auto seq = dgs_sequential(inst, scfg);
    ParallelConfig pcfg;
    pcfg.seed = 8;
    const auto par = dgs_parallel(inst, pcfg);
    if (seq.terminated_by != Termination::converged ||
        par.terminated_by != Termination::converged) {
      ok = false;
      note = "engine failed to converge without a deadline at n=" + std::to_string(n);
    }
    for (const auto& rep : {seq, par}) {
      for (std::size_t k = 1; k < rep.objective_trace.size(); ++k) {
        if (rep.objective_trace[k].second < rep.objective_trace[k - 1].second) {
          ok = false;
          note = "objective trace decreased";
        }
      }
    }
  }

  // GEOM metric properties.
  if (ok) {
    const Instance g = generate_geom({64, 100.0, 23});
    const double limit = 100.0 * std::sqrt(2.0) * (1 + 1e-12);
    for (std::int32_t i = 0; i < g.n && ok; ++i) {
      if (g.at(i, i) != 0.0) ok = false;
      for (std::int32_t j = 0; j < g.n && ok; ++j) {
        if (g.at(i, j) != g.at(j, i) || g.at(i, j) < 0.0 || g.at(i, j) > limit) {
          ok = false;
          note = "GEOM metric property violated";
        }
      }
    }
  }

  // CSV round-trip.
  if (ok) {
    BenchRecord rec;
    rec.engine = "dgs-par:workers=8";
    rec.n = 512;
    rec.instance_seed = 17;
    rec.run_seed = 9;
    rec.objective = 12345.6789;
    rec.optimal = 12350.0;
    rec.gap = (12350.0 - 12345.6789) / 12350.0;
    rec.elapsed_ms = 1.25;
    rec.iterations = 3;
    rec.terminated_by = "converged";
    const auto back = parse_csv_row(to_csv_row(rec));
    if (back.engine != rec.engine || back.objective != rec.objective ||
        !back.gap || *back.gap != *rec.gap) {
      ok = false;
      note = "CSV round-trip mismatch";
    }
  }

  report(8, "property suites", ok, note);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_gap();
  criterion_exact_oracle();
  criterion_auction_bound();
  criterion_parallel_fidelity();
  criterion_quality_parity();
  criterion_relative_speed();
  criterion_anytime();
  criterion_properties();
  std::printf("%d/8 criteria passed in %.1fs\n", 8 - failures,
              ms(std::chrono::duration_cast<Duration>(Clock::now() - t0)) / 1000.0);
  return failures == 0 ? 0 : 1;
}
