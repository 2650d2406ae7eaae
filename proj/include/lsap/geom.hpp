#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "lsap/types.hpp"

namespace lsap {

// Parameters of a GEOM instance: n points drawn uniformly in the square
// [0, bound]^2, benefit = pairwise Euclidean distance.
struct GeomParams {
  std::int32_t n = 0;
  double bound = 100.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw Error("geom: n must be >= 1");
    if (!(bound > 0.0)) throw Error("geom: bound must be > 0");
  }
};

// Deterministic per seed: the splitmix64 stream yields x then y for each
// point, each draw mapped to [0, bound].
Instance generate_geom(const GeomParams& params);

// Text format: first line n, then n rows of n whitespace-separated reals
// (row i = agent i's benefits). Doubles are written in shortest
// round-trip form, so read(write(x)) reproduces x exactly.
void write_instance(const Instance& inst, std::ostream& out);
Instance read_instance(std::istream& in);

void write_instance_file(const Instance& inst, const std::string& path);
Instance read_instance_file(const std::string& path);

}  // namespace lsap
