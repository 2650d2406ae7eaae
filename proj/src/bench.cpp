#include "lsap/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "lsap/baselines.hpp"
#include "lsap/core.hpp"
#include "lsap/dgs.hpp"
#include "lsap/geom.hpp"
#include "lsap/parallel.hpp"
#include "lsap/rng.hpp"

namespace lsap {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error("invalid " + what + ": '" + s + "'");
  return v;
}

std::int64_t to_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error("invalid " + what + ": '" + s + "'");
  return v;
}

std::uint64_t to_uint(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error("invalid " + what + ": '" + s + "'");
  return v;
}

bool to_bool(const std::string& s) { return s == "1" || s == "true" || s == "yes"; }

std::string fmt_double(double v) {
  char tmp[32];
  const auto res = std::to_chars(tmp, tmp + sizeof(tmp), v);
  return std::string(tmp, res.ptr);
}

const char* kKnownEngines[] = {"dgs-seq", "dgs-par", "auction", "hungarian", "brute"};

}  // namespace

EngineSpec parse_engine_spec(const std::string& text) {
  EngineSpec spec;
  spec.display = trim(text);
  const auto parts = split(spec.display, ':');
  spec.name = parts[0];
  bool known = false;
  for (const char* k : kKnownEngines) known |= spec.name == k;
  if (!known) throw Error("unknown engine '" + spec.name + "'");
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const auto kv = split(parts[p], '=');
    if (kv.size() != 2 || kv[0].empty())
      throw Error("bad engine parameter '" + parts[p] + "' in '" + text + "'");
    spec.params[kv[0]] = kv[1];
  }
  return spec;
}

void CampaignSpec::validate() const {
  if (sizes.empty()) throw Error("campaign: no sizes given");
  for (auto n : sizes)
    if (n < 1) throw Error("campaign: sizes must be >= 1");
  if (instances_per_size < 1) throw Error("campaign: instances_per_size must be >= 1");
  if (repetitions < 1) throw Error("campaign: repetitions must be >= 1");
  if (!(bound > 0.0)) throw Error("campaign: bound must be > 0");
  if (engines.empty()) throw Error("campaign: no engines given");
  if (parallel_cells < 1) throw Error("campaign: parallel_cells must be >= 1");
}

CampaignSpec parse_campaign_file(std::istream& in) {
  CampaignSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("campaign file line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "sizes") {
      spec.sizes.clear();
      for (const auto& tok : split(value, ','))
        spec.sizes.push_back(static_cast<std::int32_t>(to_int(trim(tok), "size")));
    } else if (key == "instances") {
      spec.instances_per_size = static_cast<std::int32_t>(to_int(value, "instances"));
    } else if (key == "bound") {
      spec.bound = to_double(value, "bound");
    } else if (key == "base_seed") {
      spec.base_seed = to_uint(value, "base_seed");
    } else if (key == "engines") {
      spec.engines.clear();
      for (const auto& tok : split(value, ','))
        spec.engines.push_back(parse_engine_spec(trim(tok)));
    } else if (key == "repetitions") {
      spec.repetitions = static_cast<std::int32_t>(to_int(value, "repetitions"));
    } else if (key == "deadline_ms") {
      spec.deadline = std::chrono::duration_cast<Duration>(
          std::chrono::duration<double, std::milli>(to_double(value, "deadline_ms")));
    } else if (key == "oracle") {
      spec.with_oracle = to_bool(value);
    } else if (key == "parallel_cells") {
      spec.parallel_cells = static_cast<std::int32_t>(to_int(value, "parallel_cells"));
    } else {
      throw Error("campaign file line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return spec;
}

std::string csv_header() {
  return "engine,n,instance_seed,run_seed,objective,optimal,gap,elapsed_ms,iterations,"
         "terminated_by";
}

std::string to_csv_row(const BenchRecord& rec) {
  std::string out;
  out += rec.engine;
  out += ',';
  out += std::to_string(rec.n);
  out += ',';
  out += std::to_string(rec.instance_seed);
  out += ',';
  out += std::to_string(rec.run_seed);
  out += ',';
  out += fmt_double(rec.objective);
  out += ',';
  if (rec.optimal) out += fmt_double(*rec.optimal);
  out += ',';
  if (rec.gap) out += fmt_double(*rec.gap);
  out += ',';
  out += fmt_double(rec.elapsed_ms);
  out += ',';
  out += std::to_string(rec.iterations);
  out += ',';
  out += rec.terminated_by;
  return out;
}

BenchRecord parse_csv_row(const std::string& line) {
  const auto f = split(line, ',');
  if (f.size() != 10) throw Error("csv row has " + std::to_string(f.size()) + " fields, expected 10");
  BenchRecord rec;
  rec.engine = f[0];
  rec.n = static_cast<std::int32_t>(to_int(f[1], "n"));
  rec.instance_seed = to_uint(f[2], "instance_seed");
  rec.run_seed = to_uint(f[3], "run_seed");
  rec.objective = to_double(f[4], "objective");
  if (!f[5].empty()) rec.optimal = to_double(f[5], "optimal");
  if (!f[6].empty()) rec.gap = to_double(f[6], "gap");
  rec.elapsed_ms = to_double(f[7], "elapsed_ms");
  rec.iterations = to_int(f[8], "iterations");
  rec.terminated_by = f[9];
  return rec;
}

std::uint64_t derive_instance_seed(std::uint64_t base_seed, std::int32_t n,
                                   std::int32_t instance_index) {
  return mix64(mix64(base_seed ^ static_cast<std::uint64_t>(n)) ^
               static_cast<std::uint64_t>(instance_index));
}

std::uint64_t derive_run_seed(std::uint64_t instance_seed, std::int32_t rep_index) {
  return mix64(instance_seed ^ static_cast<std::uint64_t>(rep_index + 1));
}

SolveReport run_engine(const EngineSpec& engine, const Instance& inst,
                       std::uint64_t seed, const std::optional<Duration>& deadline) {
  const auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = engine.params.find(key);
    if (it == engine.params.end()) return std::nullopt;
    return it->second;
  };

  if (engine.name == "dgs-seq") {
    DgsConfig cfg;
    cfg.seed = seed;
    cfg.deadline = deadline;
    if (auto v = get("eps")) cfg.improvement_epsilon = to_double(*v, "eps");
    return dgs_sequential(inst, cfg);
  }
  if (engine.name == "dgs-par") {
    ParallelConfig cfg;
    cfg.seed = seed;
    cfg.deadline = deadline;
    if (auto v = get("eps")) cfg.improvement_epsilon = to_double(*v, "eps");
    if (auto v = get("workers")) cfg.workers = static_cast<std::int32_t>(to_int(*v, "workers"));
    if (auto v = get("chunk")) cfg.chunk = static_cast<std::int32_t>(to_int(*v, "chunk"));
    if (auto v = get("reeval")) {
      if (*v == "touched")
        cfg.reeval = ParallelConfig::Reeval::touched_only;
      else if (*v == "conflicted")
        cfg.reeval = ParallelConfig::Reeval::touched_and_conflicted;
      else
        throw Error("unknown reeval policy '" + *v + "'");
    }
    return dgs_parallel(inst, cfg);
  }
  if (engine.name == "auction") {
    AuctionConfig cfg;
    cfg.deadline = deadline;
    if (auto v = get("epsilon")) cfg.epsilon = to_double(*v, "epsilon");
    if (auto v = get("scaling")) cfg.scaling = to_bool(*v);
    if (auto v = get("scale_factor")) cfg.scale_factor = to_double(*v, "scale_factor");
    return auction_solve(inst, cfg);
  }
  if (engine.name == "hungarian") return hungarian_solve(inst);
  if (engine.name == "brute") return brute_force_solve(inst);
  throw Error("unknown engine '" + engine.name + "'");
}

namespace {

struct CellResult {
  BenchRecord record;
  bool failed = false;
};

struct Moments {
  std::int64_t count = 0;
  double sum = 0.0, sum_sq = 0.0;

  void add(double v) {
    ++count;
    sum += v;
    sum_sq += v * v;
  }
  double mean() const { return count ? sum / count : 0.0; }
  double stddev() const {
    if (count < 2) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / count - m * m));
  }
};

}  // namespace

bool run_campaign(const CampaignSpec& spec, std::ostream& csv, std::ostream& summary) {
  spec.validate();

  struct Cell {
    std::int32_t size_idx, inst_idx, engine_idx, rep_idx;
  };
  std::vector<Cell> cells;
  for (std::int32_t s = 0; s < static_cast<std::int32_t>(spec.sizes.size()); ++s)
    for (std::int32_t ii = 0; ii < spec.instances_per_size; ++ii)
      for (std::int32_t e = 0; e < static_cast<std::int32_t>(spec.engines.size()); ++e)
        for (std::int32_t r = 0; r < spec.repetitions; ++r)
          cells.push_back({s, ii, e, r});

  // Instances (and oracle objectives) are shared across engines and reps.
  const std::int32_t inst_count =
      static_cast<std::int32_t>(spec.sizes.size()) * spec.instances_per_size;
  std::vector<Instance> instances(inst_count);
  std::vector<std::uint64_t> instance_seeds(inst_count);
  std::vector<std::optional<double>> optima(inst_count);
  for (std::int32_t s = 0; s < static_cast<std::int32_t>(spec.sizes.size()); ++s) {
    for (std::int32_t ii = 0; ii < spec.instances_per_size; ++ii) {
      const std::int32_t slot = s * spec.instances_per_size + ii;
      instance_seeds[slot] = derive_instance_seed(spec.base_seed, spec.sizes[s], ii);
      instances[slot] = generate_geom({spec.sizes[s], spec.bound, instance_seeds[slot]});
      if (spec.with_oracle) optima[slot] = hungarian_solve(instances[slot]).assignment.value;
    }
  }

  std::vector<CellResult> results(cells.size());
  const auto run_cell = [&](std::size_t c) {
    const Cell& cell = cells[c];
    const std::int32_t slot = cell.size_idx * spec.instances_per_size + cell.inst_idx;
    const Instance& inst = instances[slot];
    BenchRecord rec;
    rec.engine = spec.engines[cell.engine_idx].display;
    rec.n = spec.sizes[cell.size_idx];
    rec.instance_seed = instance_seeds[slot];
    rec.run_seed = derive_run_seed(instance_seeds[slot], cell.rep_idx);
    try {
      const SolveReport rep =
          run_engine(spec.engines[cell.engine_idx], inst, rec.run_seed, spec.deadline);
      rec.objective = rep.assignment.value;
      rec.elapsed_ms =
          std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(rep.elapsed)
              .count();
      rec.iterations = rep.outer_iterations;
      rec.terminated_by = to_string(rep.terminated_by);
      if (optima[slot]) {
        rec.optimal = optima[slot];
        if (*rec.optimal != 0.0) rec.gap = (*rec.optimal - rec.objective) / *rec.optimal;
      }
    } catch (const std::exception& ex) {
      rec.terminated_by = "error";
      results[c].failed = true;
      summary << "# cell failed: engine=" << rec.engine << " n=" << rec.n
              << " rep=" << cell.rep_idx << ": " << ex.what() << "\n";
    }
    results[c].record = std::move(rec);
  };

  if (spec.parallel_cells > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int k = static_cast<int>(
        std::min<std::int64_t>(spec.parallel_cells, static_cast<std::int64_t>(cells.size())));
    for (int t = 0; t < k; ++t)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t c = next.fetch_add(1);
          if (c >= cells.size()) return;
          run_cell(c);
        }
      });
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t c = 0; c < cells.size(); ++c) run_cell(c);
  }

  csv << csv_header() << "\n";
  bool all_ok = true;
  for (const auto& res : results) {
    csv << to_csv_row(res.record) << "\n";
    all_ok &= !res.failed;
  }

  // Per-(engine, size) aggregation in first-appearance order.
  std::vector<std::pair<std::string, std::int32_t>> keys;
  std::map<std::pair<std::string, std::int32_t>, std::pair<Moments, Moments>> agg;
  std::map<std::pair<std::string, std::int32_t>, Moments> gap_agg;
  for (const auto& res : results) {
    if (res.failed) continue;
    const auto key = std::make_pair(res.record.engine, res.record.n);
    if (agg.find(key) == agg.end()) keys.push_back(key);
    agg[key].first.add(res.record.objective);
    agg[key].second.add(res.record.elapsed_ms);
    if (res.record.gap) gap_agg[key].add(*res.record.gap);
  }

  summary << std::left << std::setw(28) << "engine" << std::right << std::setw(7) << "n"
          << std::setw(6) << "runs" << std::setw(16) << "mean_obj" << std::setw(13)
          << "sd_obj" << std::setw(13) << "mean_ms";
  if (spec.with_oracle) summary << std::setw(13) << "mean_gap";
  summary << "\n";
  for (const auto& key : keys) {
    const auto& [obj, ms] = agg[key];
    summary << std::left << std::setw(28) << key.first << std::right << std::setw(7)
            << key.second << std::setw(6) << obj.count << std::setw(16) << std::fixed
            << std::setprecision(3) << obj.mean() << std::setw(13) << obj.stddev()
            << std::setw(13) << ms.mean();
    if (spec.with_oracle) {
      const auto git = gap_agg.find(key);
      summary << std::setw(13) << std::setprecision(6)
              << (git == gap_agg.end() ? 0.0 : git->second.mean());
    }
    summary << "\n";
  }
  if (spec.parallel_cells > 1)
    summary << "# timings contended: cells ran " << spec.parallel_cells << "-way parallel\n";
  return all_ok;
}

}  // namespace lsap
