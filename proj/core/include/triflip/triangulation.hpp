#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "triflip/geometry.hpp"

namespace triflip {

/// Undirected edge, normalized a < b.
struct Edge {
  int a = -1;
  int b = -1;
  Edge() = default;
  Edge(int u, int v) : a(u < v ? u : v), b(u < v ? v : u) {}
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::string violation;  // first violated invariant, with a witness
};

using PointSetPtr = std::shared_ptr<const PointSet>;

/// Checks the full triangulation invariants: valid ids, pairwise non-crossing
/// edges, hull edges present, Euler edge count, face incidence counts.
ValidationReport validate_triangulation(const PointSet& s,
                                        const std::vector<Edge>& edges);

struct ParallelFlip {
  std::vector<Edge> removed;  // sorted
  std::vector<Edge> added;    // sorted
  bool empty() const { return removed.empty() && added.empty(); }
  ParallelFlip reversed() const { return ParallelFlip{added, removed}; }
  friend bool operator==(const ParallelFlip&, const ParallelFlip&) = default;
};

class Triangulation {
 public:
  /// Builds from an edge set. Throws Error when validation fails (skipped
  /// when validate = false, for callers that already know the set is valid).
  static Triangulation from_edges(PointSetPtr ps, std::vector<Edge> edges,
                                  bool validate = true);

  const PointSet& point_set() const { return *ps_; }
  const PointSetPtr& point_set_ptr() const { return ps_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::array<int, 3>>& triangles() const { return tris_; }
  bool has_edge(const Edge& e) const;
  /// Triangle ids incident to an edge; {-1,-1} entries unused.
  std::array<int, 2> edge_triangles(const Edge& e) const;
  bool is_hull_edge(const Edge& e) const;

  /// All flippable interior edges with the replacement diagonal.
  std::vector<std::pair<Edge, Edge>> unit_flip_candidates() const;

  /// Applies a parallel flip; throws Error when the flip is invalid relative
  /// to this triangulation. An empty flip returns an identical copy.
  Triangulation apply_parallel_flip(const ParallelFlip& pf) const;

  /// Edges of this triangulation properly crossed by the segment, ordered by
  /// crossing position from seg.a to seg.b.
  std::vector<Edge> crossing_edges(const Edge& seg) const;

  /// Number of edges crossed by the segment uv (0 when uv is an edge).
  int crossing_count(const Edge& seg) const;

  friend bool operator==(const Triangulation& x, const Triangulation& y) {
    return x.edges_ == y.edges_;
  }

 private:
  PointSetPtr ps_;
  std::vector<Edge> edges_;                   // sorted
  std::vector<std::array<int, 3>> tris_;      // sorted triples
  std::map<Edge, std::array<int, 2>> etris_;  // edge -> incident triangle ids
  void index_triangles();
};

std::vector<Edge> common_edges(const Triangulation& t, const Triangulation& t2);

/// A flip sequence from a start triangulation. Stationary (empty) flips are
/// legal internally and compressed out on serialization.
struct Path {
  Triangulation start;
  std::vector<ParallelFlip> flips;

  int length() const { return static_cast<int>(flips.size()); }
  /// All intermediate triangulations, start included; throws on an invalid
  /// flip.
  std::vector<Triangulation> layers() const;
  Triangulation end() const;
  /// Same path walked from the other end.
  Path reversed() const;
  /// Drops stationary steps.
  Path compressed() const;
};

/// Delaunay triangulation via incremental insertion plus Lawson flips.
/// Cocircular ties pick the diagonal with the lexicographically smaller
/// (min id, max id) pair. Throws for fewer than 3 points.
Triangulation delaunay(PointSetPtr ps);

}  // namespace triflip
