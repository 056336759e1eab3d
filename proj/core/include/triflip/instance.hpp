#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "triflip/triangulation.hpp"

namespace triflip {

struct Instance {
  std::string name;
  PointSetPtr point_set;
  std::vector<Triangulation> inputs;  // at least 2
};

struct Solution {
  std::string instance_name;
  Triangulation center;
  std::vector<Path> paths;  // one per input, same order

  long objective() const {
    long o = 0;
    for (const Path& p : paths) o += p.length();
    return o;
  }
};

struct VerifyReport {
  bool valid = true;
  long objective = 0;
  std::string first_violation;
};

/// Instance JSON schema:
///   {"name": str, "points": [[x,y],...], "triangulations": [[[i,j],...],...]}
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

/// Solution JSON schema:
///   {"instance": str, "center": [[i,j],...],
///    "paths": [{"flips": [{"remove": [[i,j],...], "add": [[i,j],...]},...]},...]}
/// Edge lists are sorted, smaller index first. Stationary flips are dropped
/// when serializing.
Solution parse_solution(const std::string& text, const Instance& inst);
std::string serialize_solution(const Solution& sol);

/// Replays every path and checks flip validity, start triangulations and a
/// common center. strict additionally rejects stationary flips.
VerifyReport verify_solution(const Instance& inst, const Solution& sol,
                             bool strict = false);

/// n grid points without collinear triples; each of the m inputs is the
/// Delaunay triangulation mutated by k random valid unit flips.
Instance generate_random_instance(int n, int m, int k, std::uint64_t seed);

std::string export_svg(const Triangulation& t);

}  // namespace triflip
