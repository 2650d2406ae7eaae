#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lsap/types.hpp"

namespace lsap {

// An engine name with optional parameters, e.g. "dgs-par:workers=4". The
// original text is kept as the engine column in reports so differently
// configured runs of one engine stay distinguishable.
struct EngineSpec {
  std::string name;
  std::map<std::string, std::string> params;
  std::string display;
};

// Parses "name[:key=value[:key=value...]]". Known names: dgs-seq, dgs-par,
// auction, hungarian, brute.
EngineSpec parse_engine_spec(const std::string& text);

struct CampaignSpec {
  std::vector<std::int32_t> sizes;
  std::int32_t instances_per_size = 1;
  double bound = 100.0;
  std::uint64_t base_seed = 0;
  std::vector<EngineSpec> engines;
  std::int32_t repetitions = 1;
  std::optional<Duration> deadline;
  bool with_oracle = false;     // compute the exact optimum per instance
  std::int32_t parallel_cells = 1;

  void validate() const;
};

// Flat key=value campaign file ('#' starts a comment). Keys: sizes,
// instances, bound, base_seed, engines, repetitions, deadline_ms, oracle,
// parallel_cells.
CampaignSpec parse_campaign_file(std::istream& in);

struct BenchRecord {
  std::string engine;
  std::int32_t n = 0;
  std::uint64_t instance_seed = 0;
  std::uint64_t run_seed = 0;
  double objective = 0.0;
  std::optional<double> optimal;
  std::optional<double> gap;  // (optimal - objective) / optimal
  double elapsed_ms = 0.0;
  std::int64_t iterations = 0;
  std::string terminated_by;  // converged | deadline | error
};

// Fixed schema: engine,n,instance_seed,run_seed,objective,optimal,gap,
// elapsed_ms,iterations,terminated_by
std::string csv_header();
std::string to_csv_row(const BenchRecord& rec);
BenchRecord parse_csv_row(const std::string& line);

// Pinned seed derivation, so campaigns are reproducible and cells
// independent.
std::uint64_t derive_instance_seed(std::uint64_t base_seed, std::int32_t n,
                                   std::int32_t instance_index);
std::uint64_t derive_run_seed(std::uint64_t instance_seed, std::int32_t rep_index);

// One engine invocation on one instance; shared by the solve command and
// campaign cells. Timing covers solver work only.
SolveReport run_engine(const EngineSpec& engine, const Instance& inst,
                       std::uint64_t seed, const std::optional<Duration>& deadline);

// Runs the engine x size x instance x repetition cross product, streaming
// one CSV row per cell to `csv` and a per-(engine, size) mean/stddev table
// to `summary`. A failed cell becomes an error row and the campaign
// continues; returns false if any cell failed.
bool run_campaign(const CampaignSpec& spec, std::ostream& csv, std::ostream& summary);

}  // namespace lsap
