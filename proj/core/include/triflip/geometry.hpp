#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace triflip {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

using Coord = std::int64_t;

struct Point {
  Coord x = 0;
  Coord y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Sign of (q-p) x (r-p): +1 if r lies strictly left of the directed line pq,
/// 0 if collinear. Exact for all 64-bit coordinates.
int orient(const Point& p, const Point& q, const Point& r);

/// Sign of the in-circle determinant for the ccw triangle abc: +1 if d lies
/// strictly inside the circumcircle, 0 if cocircular. Exact.
int incircle(const Point& a, const Point& b, const Point& c, const Point& d);

/// True iff the open segments ab and cd share a point. Segments that only
/// touch at an endpoint of either segment do not cross.
bool segments_cross(const Point& a, const Point& b, const Point& c,
                    const Point& d);

/// Shared vertex set. Vertex ids are indices into the point list.
/// Rejects duplicate points and collinear triples.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> points);

  int size() const { return static_cast<int>(points_.size()); }
  const Point& operator[](int id) const { return points_[id]; }
  const std::vector<Point>& points() const { return points_; }
  /// Convex hull vertex ids in ccw order.
  const std::vector<int>& hull() const { return hull_; }

 private:
  std::vector<Point> points_;
  std::vector<int> hull_;
};

/// Empty convex quadrilateral, vertices in convex order u, u2, v, v2.
/// The diagonals are (u,v) and (u2,v2). Canonical form: the diagonal through
/// the smallest vertex id of the quad is (u,v), with u < v and u2 < v2.
struct Quad {
  int u, u2, v, v2;
  friend bool operator==(const Quad&, const Quad&) = default;
  friend auto operator<=>(const Quad&, const Quad&) = default;
};

/// All empty convex quadrilaterals of S, each exactly once, in canonical form,
/// sorted. Empty means no point of S other than the four vertices lies inside.
std::vector<Quad> enumerate_empty_convex_quads(const PointSet& s);

/// Convex hull ids (ccw) of an arbitrary point list; helper shared with the
/// triangulation validator.
std::vector<int> convex_hull_ids(const std::vector<Point>& pts);

}  // namespace triflip
