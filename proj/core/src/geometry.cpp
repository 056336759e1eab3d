#include "triflip/geometry.hpp"

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_int.hpp>

namespace triflip {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using I128 = __int128;

int sign_of(I128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
int sign_of(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Differences below this magnitude keep the 3x3 in-circle determinant within
// __int128.
constexpr Coord kSmall = Coord(1) << 20;

bool small_diffs(std::initializer_list<Coord> vals) {
  for (Coord v : vals)
    if (v >= kSmall || v <= -kSmall) return false;
  return true;
}

}  // namespace

int orient(const Point& p, const Point& q, const Point& r) {
  // Differences of int64 fit in __int128; the 2x2 determinant needs care only
  // for huge coordinates.
  I128 ax = I128(q.x) - p.x, ay = I128(q.y) - p.y;
  I128 bx = I128(r.x) - p.x, by = I128(r.y) - p.y;
  constexpr I128 lim = I128(1) << 62;
  if (ax < lim && ax > -lim && ay < lim && ay > -lim && bx < lim &&
      bx > -lim && by < lim && by > -lim) {
    return sign_of(ax * by - ay * bx);
  }
  BigInt Ax = BigInt(q.x) - p.x, Ay = BigInt(q.y) - p.y;
  BigInt Bx = BigInt(r.x) - p.x, By = BigInt(r.y) - p.y;
  return sign_of(Ax * By - Ay * Bx);
}

int incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  Coord adx = a.x - d.x, ady = a.y - d.y;
  Coord bdx = b.x - d.x, bdy = b.y - d.y;
  Coord cdx = c.x - d.x, cdy = c.y - d.y;
  if (small_diffs({adx, ady, bdx, bdy, cdx, cdy})) {
    I128 al = I128(adx) * adx + I128(ady) * ady;
    I128 bl = I128(bdx) * bdx + I128(bdy) * bdy;
    I128 cl = I128(cdx) * cdx + I128(cdy) * cdy;
    I128 det = al * (I128(bdx) * cdy - I128(bdy) * cdx) -
               bl * (I128(adx) * cdy - I128(ady) * cdx) +
               cl * (I128(adx) * bdy - I128(ady) * bdx);
    return sign_of(det);
  }
  BigInt Adx = adx, Ady = ady, Bdx = bdx, Bdy = bdy, Cdx = cdx, Cdy = cdy;
  BigInt al = Adx * Adx + Ady * Ady;
  BigInt bl = Bdx * Bdx + Bdy * Bdy;
  BigInt cl = Cdx * Cdx + Cdy * Cdy;
  BigInt det = al * (Bdx * Cdy - Bdy * Cdx) - bl * (Adx * Cdy - Ady * Cdx) +
               cl * (Adx * Bdy - Ady * Bdx);
  return sign_of(det);
}

bool segments_cross(const Point& a, const Point& b, const Point& c,
                    const Point& d) {
  int d1 = orient(c, d, a);
  int d2 = orient(c, d, b);
  int d3 = orient(a, b, c);
  int d4 = orient(a, b, d);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
    // All collinear: the segments cross iff the open intervals overlap.
    auto key = [&](const Point& p) {
      // Order along the common line.
      return (a.x != b.x) ? p.x : p.y;
    };
    Coord lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
    Coord lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
    return std::max(lo1, lo2) < std::min(hi1, hi2);
  }
  return false;
}

std::vector<int> convex_hull_ids(const std::vector<Point>& pts) {
  int n = static_cast<int>(pts.size());
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  std::sort(ids.begin(), ids.end(),
            [&](int i, int j) { return pts[i] < pts[j]; });
  if (n < 3) return ids;
  auto build = [&](std::vector<int>& out, auto begin, auto end) {
    for (auto it = begin; it != end; ++it) {
      while (out.size() >= 2 &&
             orient(pts[out[out.size() - 2]], pts[out.back()], pts[*it]) <= 0)
        out.pop_back();
      out.push_back(*it);
    }
  };
  std::vector<int> lower, upper;
  build(lower, ids.begin(), ids.end());
  build(upper, ids.rbegin(), ids.rend());
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  int n = size();
  std::vector<Point> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i + 1 < n; ++i)
    if (sorted[i] == sorted[i + 1]) throw Error("duplicate point in point set");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (orient(points_[i], points_[j], points_[k]) == 0)
          throw Error("collinear points " + std::to_string(i) + "," +
                      std::to_string(j) + "," + std::to_string(k));
  hull_ = convex_hull_ids(points_);
}

namespace {

// Strictly inside the ccw triangle abc.
bool inside_triangle(const Point& p, const Point& a, const Point& b,
                     const Point& c) {
  return orient(a, b, p) > 0 && orient(b, c, p) > 0 && orient(c, a, p) > 0;
}

}  // namespace

std::vector<Quad> enumerate_empty_convex_quads(const PointSet& s) {
  int n = s.size();
  std::vector<Quad> out;
  std::array<int, 4> q{};
  for (q[0] = 0; q[0] < n; ++q[0])
    for (q[1] = q[0] + 1; q[1] < n; ++q[1])
      for (q[2] = q[1] + 1; q[2] < n; ++q[2])
        for (q[3] = q[2] + 1; q[3] < n; ++q[3]) {
          // Convex cyclic order: start from a ccw triangle and insert the
          // fourth point in the position that keeps every triple ccw.
          std::array<int, 3> t = {q[0], q[1], q[2]};
          if (orient(s[t[0]], s[t[1]], s[t[2]]) < 0) std::swap(t[1], t[2]);
          std::array<int, 4> order{};
          bool convex = false;
          for (int pos = 0; pos < 3 && !convex; ++pos) {
            int idx = 0;
            for (int i = 0; i <= pos; ++i) order[idx++] = t[i];
            order[idx++] = q[3];
            for (int i = pos + 1; i < 3; ++i) order[idx++] = t[i];
            convex = true;
            for (int i = 0; i < 4; ++i)
              if (orient(s[order[i]], s[order[(i + 1) % 4]],
                         s[order[(i + 2) % 4]]) <= 0)
                convex = false;
          }
          if (!convex) continue;
          bool empty = true;
          for (int p = 0; p < n && empty; ++p) {
            if (p == q[0] || p == q[1] || p == q[2] || p == q[3]) continue;
            bool in = true;
            for (int i = 0; i < 4; ++i)
              if (orient(s[order[i]], s[order[(i + 1) % 4]], s[p]) <= 0)
                in = false;
            if (in) empty = false;
          }
          if (!empty) continue;
          // Canonical labeling: diagonal through the smallest id first.
          int mn = q[0];  // ids are sorted, q[0] is the smallest
          int mpos = 0;
          while (order[mpos] != mn) ++mpos;
          int u = mn, v = order[(mpos + 2) % 4];
          int u2 = order[(mpos + 1) % 4], v2 = order[(mpos + 3) % 4];
          if (u2 > v2) std::swap(u2, v2);
          out.push_back(Quad{u, u2, v, v2});
        }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace triflip
