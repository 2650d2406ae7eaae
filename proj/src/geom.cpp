#include "lsap/geom.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "lsap/rng.hpp"

namespace lsap {

Instance generate_geom(const GeomParams& params) {
  params.validate();
  const std::int32_t n = params.n;
  SplitMix64 rng(params.seed);
  std::vector<double> xs(n), ys(n);
  for (std::int32_t k = 0; k < n; ++k) {
    xs[k] = unit_double(rng.next()) * params.bound;
    ys[k] = unit_double(rng.next()) * params.bound;
  }
  Instance inst = Instance::zeros(n);
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = 0; j < n; ++j) {
      const double dx = xs[i] - xs[j];
      const double dy = ys[i] - ys[j];
      inst.at(i, j) = std::sqrt(dx * dx + dy * dy);
    }
  }
  return inst;
}

namespace {

void append_double(std::string& buf, double v) {
  char tmp[32];
  const auto res = std::to_chars(tmp, tmp + sizeof(tmp), v);
  buf.append(tmp, res.ptr);
}

}  // namespace

void write_instance(const Instance& inst, std::ostream& out) {
  inst.validate();
  std::string buf;
  buf.reserve(static_cast<std::size_t>(inst.n) * 16);
  buf += std::to_string(inst.n);
  buf += '\n';
  out << buf;
  for (std::int32_t i = 0; i < inst.n; ++i) {
    buf.clear();
    for (std::int32_t j = 0; j < inst.n; ++j) {
      if (j > 0) buf += ' ';
      append_double(buf, inst.at(i, j));
    }
    buf += '\n';
    out << buf;
  }
}

Instance read_instance(std::istream& in) {
  std::string line;
  int line_no = 0;

  // Header: skip blank lines, then a single positive integer.
  std::int64_t n = -1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), n);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
      throw ParseError("line " + std::to_string(line_no) + ": expected instance size, got '" + tok + "'",
                       line_no);
    std::string extra;
    if (ls >> extra)
      throw ParseError("line " + std::to_string(line_no) + ": unexpected token '" + extra +
                           "' after instance size",
                       line_no);
    break;
  }
  if (n < 0) throw ParseError("missing header: empty instance file", 0);
  if (n < 1 || n > (1 << 20))
    throw ParseError("line " + std::to_string(line_no) + ": invalid instance size " + std::to_string(n),
                     line_no);

  Instance inst = Instance::zeros(static_cast<std::int32_t>(n));
  std::int32_t row = 0;
  while (row < n) {
    if (!std::getline(in, line))
      throw ParseError("unexpected end of file: got " + std::to_string(row) + " of " +
                           std::to_string(n) + " rows",
                       line_no);
    ++line_no;
    const char* p = line.data();
    const char* end = p + line.size();
    std::int32_t col = 0;
    while (true) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p >= end) break;
      if (col >= n)
        throw ParseError("line " + std::to_string(line_no) + ": row " + std::to_string(row) +
                             " has more than " + std::to_string(n) + " entries",
                         line_no);
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc{})
        throw ParseError("line " + std::to_string(line_no) + ": malformed number in row " +
                             std::to_string(row),
                         line_no);
      if (!std::isfinite(v))
        throw ParseError("line " + std::to_string(line_no) + ": non-finite entry in row " +
                             std::to_string(row),
                         line_no);
      inst.at(row, col) = v;
      ++col;
      p = res.ptr;
      if (p < end && *p != ' ' && *p != '\t' && *p != '\r')
        throw ParseError("line " + std::to_string(line_no) + ": malformed number in row " +
                             std::to_string(row),
                         line_no);
    }
    if (col == 0) continue;  // blank line between rows
    if (col != n)
      throw ParseError("line " + std::to_string(line_no) + ": row " + std::to_string(row) + " has " +
                           std::to_string(col) + " entries, expected " + std::to_string(n),
                       line_no);
    ++row;
  }
  return inst;
}

void write_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_instance(inst, out);
  out.flush();
  if (!out) throw Error("failed writing '" + path + "'");
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return read_instance(in);
}

}  // namespace lsap
