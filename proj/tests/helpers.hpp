#pragma once

#include <memory>
#include <vector>

#include "triflip/instance.hpp"
#include "triflip/triangulation.hpp"

namespace triflip::testing {

inline PointSetPtr make_points(std::vector<Point> pts) {
  return std::make_shared<PointSet>(std::move(pts));
}

/// Four points in convex position; diagonal (0,2) or (1,3).
inline PointSetPtr square_points() {
  return make_points({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
}

inline Triangulation square_tri(PointSetPtr ps, bool diag02 = true) {
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  edges.push_back(diag02 ? Edge{0, 2} : Edge{1, 3});
  return Triangulation::from_edges(std::move(ps), std::move(edges));
}

/// Nine convex points with a 6-edge fan from the bottom apex w = 8 crossing
/// the missing segment (0,7): u = 0, top chain 1..6, v = 7.
inline PointSetPtr fan_points() {
  return make_points({{0, 0},
                      {10, 20},
                      {20, 26},
                      {30, 29},
                      {40, 29},
                      {50, 26},
                      {60, 20},
                      {70, 0},
                      {35, -40}});
}

inline Triangulation fan_triangulation() {
  PointSetPtr ps = fan_points();
  std::vector<Edge> edges{{0, 8}, {7, 8}, {0, 1}, {6, 7}};
  for (int i = 1; i < 6; ++i) edges.push_back(Edge(i, i + 1));
  for (int i = 1; i <= 6; ++i) edges.push_back(Edge(i, 8));
  return Triangulation::from_edges(std::move(ps), std::move(edges));
}

}  // namespace triflip::testing
