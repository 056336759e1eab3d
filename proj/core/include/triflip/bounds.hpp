#pragma once

#include <optional>
#include <vector>

#include "triflip/cnf.hpp"
#include "triflip/rewrite.hpp"
#include "triflip/sat_backend.hpp"
#include "triflip/triangulation.hpp"

namespace triflip {

struct EncodeOptions;  // cnf_builder.hpp

/// Symmetric pairwise distances between input triangulations. Entries may be
/// upper bounds when a SAT backend could not certify exactness.
struct DistanceMatrix {
  int m = 0;
  std::vector<int> dist;    // row-major m*m
  std::vector<bool> exact;  // per entry

  int d(int i, int j) const { return dist[i * m + j]; }
  bool is_exact(int i, int j) const { return exact[i * m + j]; }
  bool all_exact() const;
  static DistanceMatrix make(int m);
  void set(int i, int j, int d, bool ex);
};

struct DistanceResult {
  int dist = 0;
  bool exact = false;
  Path path;  // witness
};

/// Shortest-path length between two triangulations: heuristic upper bound,
/// then SAT refutation downward until UNSAT or the insertion lower bound is
/// met. Inexact (upper bound) when the backend returns UNKNOWN.
DistanceResult pairwise_distance(const Triangulation& a, const Triangulation& b,
                                 const EncodeOptions& opts,
                                 const SolverConfig& cfg);

DistanceMatrix distance_matrix(const std::vector<Triangulation>& inputs,
                               const EncodeOptions& opts,
                               const SolverConfig& cfg, int jobs = 1);

/// Maximum weight over all permutations pi of sum d(i, pi(i)), computed by an
/// exact assignment algorithm (fixed points carry weight 0).
long max_cycle_packing_weight(const DistanceMatrix& d);

/// ceil(packing weight / 2). Requires exact entries to be a valid bound.
long cycle_packing_lb(const DistanceMatrix& d);

/// MaxSAT form of the cycle packing problem: arc variables with at-most-one
/// in/out degree and cycle closure; soft unit clause per positive-weight arc.
/// Optimal packing weight = total soft weight - optimal cost.
Cnf cycle_packing_cnf(const DistanceMatrix& d);
std::string cycle_packing_wcnf(const DistanceMatrix& d);

/// The triangles of T crossed by the segment uv, from u to v, encoded as a
/// TriString: L for the triangle at u, R at v, U/D for intermediate triangles
/// with the shared apex strictly left/right of directed uv.
TriString extract_crossing_string(const Edge& uv, const Triangulation& t);

/// Lower bound on the number of parallel flips needed before uv can appear,
/// starting from T. 0 when uv is already present.
int flip_insertion_lb(const Edge& uv, const Triangulation& t,
                      const BoundTable* table = nullptr);

}  // namespace triflip
