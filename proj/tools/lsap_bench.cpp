// Command-line front end: GEOM instance generation, single solves with any
// engine, and benchmark campaigns with CSV output.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsap/baselines.hpp"
#include "lsap/bench.hpp"
#include "lsap/core.hpp"
#include "lsap/dgs.hpp"
#include "lsap/geom.hpp"
#include "lsap/kernels.hpp"
#include "lsap/parallel.hpp"

namespace {

std::uint64_t fnv1a_file(const std::string& path, std::uint64_t& bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lsap::Error("cannot reopen '" + path + "'");
  std::uint64_t hash = 1469598103934665603ull;
  char buf[1 << 16];
  bytes = 0;
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    bytes += static_cast<std::uint64_t>(got);
    for (std::streamsize k = 0; k < got; ++k) {
      hash ^= static_cast<unsigned char>(buf[k]);
      hash *= 1099511628211ull;
    }
    if (got < static_cast<std::streamsize>(sizeof(buf))) break;
  }
  return hash;
}

std::optional<lsap::Duration> deadline_from_ms(double ms) {
  if (ms < 0) return std::nullopt;
  return std::chrono::duration_cast<lsap::Duration>(
      std::chrono::duration<double, std::milli>(ms));
}

struct GeomFlag {
  std::int32_t n = 0;
  double bound = 100.0;
  std::uint64_t seed = 0;
};

GeomFlag parse_geom_flag(const std::string& text) {
  GeomFlag g;
  std::istringstream ss(text);
  char c1 = 0, c2 = 0;
  if (!(ss >> g.n >> c1 >> g.bound >> c2 >> g.seed) || c1 != ',' || c2 != ',')
    throw lsap::Error("--geom expects n,bound,seed (got '" + text + "')");
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear sum assignment solver toolkit"};
  app.require_subcommand(1);

  std::string kernel = "auto";
  app.add_option("--kernel", kernel, "Scan kernel: " + lsap::kernels::available_names());

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a GEOM instance file");
  std::int32_t gen_n = 0;
  double gen_bound = 100.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Problem size")->required();
  gen->add_option("--bound", gen_bound, "Square side length")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output path")->required();

  // solve --------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Solve one instance, print a JSON report");
  std::string solve_engine = "dgs-seq";
  std::string solve_in, solve_geom, solve_oracle;
  std::uint64_t solve_seed = 0;
  double solve_deadline_ms = -1.0;
  std::int32_t solve_workers = 0, solve_chunk = 64;
  double solve_ieps = 0.0;
  double solve_epsilon = -1.0;
  bool solve_scaling = false;
  double solve_scale_factor = 4.0;
  std::string solve_reeval;
  solve->add_option("--engine", solve_engine, "dgs-seq|dgs-par|auction|hungarian|brute")
      ->capture_default_str();
  solve->add_option("--in", solve_in, "Instance file");
  solve->add_option("--geom", solve_geom, "Inline GEOM instance: n,bound,seed");
  solve->add_option("--seed", solve_seed, "Solver seed")->capture_default_str();
  solve->add_option("--deadline-ms", solve_deadline_ms, "Anytime budget (ms, <0 = none)");
  solve->add_option("--workers", solve_workers, "dgs-par worker count (0 = auto)");
  solve->add_option("--chunk", solve_chunk, "dgs-par records per work unit");
  solve->add_option("--improvement-epsilon", solve_ieps, "Strictness margin for improvements");
  solve->add_option("--epsilon", solve_epsilon, "Auction bid increment (<0 = auto)");
  solve->add_flag("--scaling", solve_scaling, "Auction epsilon scaling");
  solve->add_option("--scale-factor", solve_scale_factor, "Auction scaling divisor");
  solve->add_option("--reeval", solve_reeval, "dgs-par re-evaluation set: conflicted|touched");
  solve->add_option("--oracle", solve_oracle, "Compare against an exact solver: hungarian");

  // bench ----------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Run a benchmark campaign, write CSV");
  std::string bench_sizes = "128", bench_engines = "dgs-seq";
  std::string bench_out = "bench.csv", bench_spec_file;
  std::int32_t bench_instances = 1, bench_reps = 1, bench_parallel_cells = 1;
  double bench_bound = 100.0, bench_deadline_ms = -1.0;
  std::uint64_t bench_base_seed = 0;
  bool bench_oracle = false;
  bench->add_option("--spec", bench_spec_file, "Campaign spec file (key=value lines)");
  bench->add_option("--sizes", bench_sizes, "Comma-separated sizes")->capture_default_str();
  bench->add_option("--instances", bench_instances, "Instances per size")->capture_default_str();
  bench->add_option("--reps", bench_reps, "Repetitions per instance")->capture_default_str();
  bench->add_option("--engines", bench_engines, "Comma-separated engine specs")
      ->capture_default_str();
  bench->add_option("--bound", bench_bound, "GEOM square side")->capture_default_str();
  bench->add_option("--base-seed", bench_base_seed, "Campaign base seed")->capture_default_str();
  bench->add_option("--deadline-ms", bench_deadline_ms, "Per-run budget (ms, <0 = none)");
  bench->add_flag("--oracle", bench_oracle, "Compute exact optimum and gaps");
  bench->add_option("--parallel-cells", bench_parallel_cells,
                    "Run campaign cells concurrently (timings contended)");
  bench->add_option("--out", bench_out, "CSV output path")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    lsap::kernels::select(kernel);

    if (*gen) {
      lsap::GeomParams params{gen_n, gen_bound, gen_seed};
      const lsap::Instance inst = lsap::generate_geom(params);
      lsap::write_instance_file(inst, gen_out);
      std::uint64_t bytes = 0;
      const std::uint64_t hash = fnv1a_file(gen_out, bytes);
      std::printf("%s n=%d bytes=%llu fnv1a=%016llx\n", gen_out.c_str(), inst.n,
                  static_cast<unsigned long long>(bytes),
                  static_cast<unsigned long long>(hash));
      return 0;
    }

    if (*solve) {
      lsap::Instance inst;
      if (!solve_in.empty()) {
        inst = lsap::read_instance_file(solve_in);
      } else if (!solve_geom.empty()) {
        const GeomFlag g = parse_geom_flag(solve_geom);
        inst = lsap::generate_geom({g.n, g.bound, g.seed});
      } else {
        throw lsap::Error("solve needs --in or --geom");
      }

      lsap::EngineSpec engine = lsap::parse_engine_spec(solve_engine);
      if (solve_workers > 0) engine.params["workers"] = std::to_string(solve_workers);
      if (solve_chunk != 64) engine.params["chunk"] = std::to_string(solve_chunk);
      if (solve_ieps > 0) engine.params["eps"] = std::to_string(solve_ieps);
      if (solve_epsilon >= 0) engine.params["epsilon"] = std::to_string(solve_epsilon);
      if (solve_scaling) engine.params["scaling"] = "1";
      if (solve_scale_factor != 4.0)
        engine.params["scale_factor"] = std::to_string(solve_scale_factor);
      if (!solve_reeval.empty()) engine.params["reeval"] = solve_reeval;

      const auto deadline = deadline_from_ms(solve_deadline_ms);
      const lsap::SolveReport rep = lsap::run_engine(engine, inst, solve_seed, deadline);

      nlohmann::json out;
      out["engine"] = engine.display;
      out["n"] = inst.n;
      out["objective"] = rep.assignment.value;
      out["elapsed_ms"] =
          std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(rep.elapsed)
              .count();
      out["iterations"] = rep.outer_iterations;
      out["switches"] = rep.switches_applied;
      out["terminated_by"] = lsap::to_string(rep.terminated_by);
      out["kernel"] = lsap::kernels::active().name;
      if (rep.completed_greedily) out["completed_greedily"] = true;
      if (!solve_oracle.empty()) {
        if (solve_oracle != "hungarian")
          throw lsap::Error("unknown oracle '" + solve_oracle + "'");
        const double opt = lsap::hungarian_solve(inst).assignment.value;
        out["optimal"] = opt;
        if (opt != 0.0) out["gap"] = (opt - rep.assignment.value) / opt;
      }
      std::cout << out.dump() << "\n";
      return 0;
    }

    if (*bench) {
      lsap::CampaignSpec spec;
      if (!bench_spec_file.empty()) {
        std::ifstream in(bench_spec_file);
        if (!in) throw lsap::Error("cannot open spec file '" + bench_spec_file + "'");
        spec = lsap::parse_campaign_file(in);
      }
      const auto given = [&](const std::string& flag) { return bench->count(flag) > 0; };
      if (bench_spec_file.empty() || given("--sizes")) {
        spec.sizes.clear();
        std::istringstream ss(bench_sizes);
        std::string tok;
        while (std::getline(ss, tok, ',')) spec.sizes.push_back(std::stoi(tok));
      }
      if (bench_spec_file.empty() || given("--engines")) {
        spec.engines.clear();
        std::istringstream ss(bench_engines);
        std::string tok;
        while (std::getline(ss, tok, ',')) spec.engines.push_back(lsap::parse_engine_spec(tok));
      }
      if (bench_spec_file.empty() || given("--instances")) spec.instances_per_size = bench_instances;
      if (bench_spec_file.empty() || given("--reps")) spec.repetitions = bench_reps;
      if (bench_spec_file.empty() || given("--bound")) spec.bound = bench_bound;
      if (bench_spec_file.empty() || given("--base-seed")) spec.base_seed = bench_base_seed;
      if (given("--deadline-ms")) spec.deadline = deadline_from_ms(bench_deadline_ms);
      if (given("--oracle")) spec.with_oracle = bench_oracle;
      if (given("--parallel-cells")) spec.parallel_cells = bench_parallel_cells;

      std::ofstream csv(bench_out);
      if (!csv) throw lsap::Error("cannot open '" + bench_out + "' for writing");
      const bool ok = lsap::run_campaign(spec, csv, std::cout);
      std::cout << "csv written to " << bench_out << "\n";
      return ok ? 0 : 3;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
