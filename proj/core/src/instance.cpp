#include "triflip/instance.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"

namespace triflip {

namespace {

using nlohmann::json;

std::vector<Edge> edges_from_json(const json& arr) {
  std::vector<Edge> edges;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2)
      throw Error("edge entry is not a pair");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

json edges_to_json(const std::vector<Edge>& edges) {
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  json arr = json::array();
  for (const Edge& e : sorted) arr.push_back({e.a, e.b});
  return arr;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  Instance inst;
  inst.name = j.value("name", "");
  std::vector<Point> pts;
  for (const auto& p : j.at("points"))
    pts.push_back(Point{p.at(0).get<Coord>(), p.at(1).get<Coord>()});
  inst.point_set = std::make_shared<PointSet>(std::move(pts));
  for (const auto& t : j.at("triangulations")) {
    std::vector<Edge> edges = edges_from_json(t);
    ValidationReport r = validate_triangulation(*inst.point_set, edges);
    if (!r.ok)
      throw Error("invalid triangulation " +
                  std::to_string(inst.inputs.size()) + ": " + r.violation);
    inst.inputs.push_back(Triangulation::from_edges(inst.point_set,
                                                    std::move(edges), false));
  }
  if (inst.inputs.size() < 2) throw Error("instance needs at least 2 inputs");
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  json j;
  j["name"] = inst.name;
  json pts = json::array();
  for (const Point& p : inst.point_set->points()) pts.push_back({p.x, p.y});
  j["points"] = pts;
  json tris = json::array();
  for (const Triangulation& t : inst.inputs) tris.push_back(edges_to_json(t.edges()));
  j["triangulations"] = tris;
  return j.dump(2) + "\n";
}

Solution parse_solution(const std::string& text, const Instance& inst) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  Solution sol{j.value("instance", ""),
               Triangulation::from_edges(inst.point_set,
                                         edges_from_json(j.at("center"))),
               {}};
  const auto& paths = j.at("paths");
  if (paths.size() != inst.inputs.size())
    throw Error("path count does not match input count");
  for (size_t i = 0; i < paths.size(); ++i) {
    Path p{inst.inputs[i], {}};
    for (const auto& f : paths[i].at("flips"))
      p.flips.push_back(ParallelFlip{edges_from_json(f.at("remove")),
                                     edges_from_json(f.at("add"))});
    sol.paths.push_back(std::move(p));
  }
  return sol;
}

std::string serialize_solution(const Solution& sol) {
  json j;
  j["instance"] = sol.instance_name;
  j["center"] = edges_to_json(sol.center.edges());
  json paths = json::array();
  for (const Path& p : sol.paths) {
    json flips = json::array();
    for (const ParallelFlip& f : p.flips) {
      if (f.empty()) continue;
      flips.push_back({{"remove", edges_to_json(f.removed)},
                       {"add", edges_to_json(f.added)}});
    }
    paths.push_back({{"flips", flips}});
  }
  j["paths"] = paths;
  return j.dump(2) + "\n";
}

VerifyReport verify_solution(const Instance& inst, const Solution& sol,
                             bool strict) {
  VerifyReport rep;
  auto fail = [&](const std::string& msg) {
    rep.valid = false;
    rep.first_violation = msg;
    return rep;
  };
  if (sol.paths.size() != inst.inputs.size())
    return fail("path count " + std::to_string(sol.paths.size()) +
                " != input count " + std::to_string(inst.inputs.size()));
  for (size_t i = 0; i < sol.paths.size(); ++i) {
    const Path& p = sol.paths[i];
    if (!(p.start == inst.inputs[i]))
      return fail("path " + std::to_string(i) + " does not start at input " +
                  std::to_string(i));
    Triangulation cur = p.start;
    for (size_t s = 0; s < p.flips.size(); ++s) {
      const ParallelFlip& f = p.flips[s];
      if (strict && f.empty())
        return fail("path " + std::to_string(i) + " step " + std::to_string(s) +
                    " is stationary (strict mode)");
      try {
        cur = cur.apply_parallel_flip(f);
      } catch (const Error& e) {
        return fail("path " + std::to_string(i) + " step " + std::to_string(s) +
                    ": " + e.what());
      }
    }
    if (!(cur == sol.center))
      return fail("path " + std::to_string(i) + " does not end at the center");
    rep.objective += p.length();
  }
  return rep;
}

Instance generate_random_instance(int n, int m, int k, std::uint64_t seed) {
  if (n < 4 || m < 2 || k < 0) throw Error("bad generator parameters");
  std::mt19937_64 rng(seed);
  Coord range = 10LL * n;
  std::uniform_int_distribution<Coord> coord(0, range);
  std::vector<Point> pts;
  int attempts = 0;
  while (static_cast<int>(pts.size()) < n) {
    if (++attempts > 100000) throw Error("point sampling failed");
    Point cand{coord(rng), coord(rng)};
    bool ok = true;
    for (const Point& p : pts)
      if (p == cand) ok = false;
    for (size_t i = 0; i < pts.size() && ok; ++i)
      for (size_t j = i + 1; j < pts.size() && ok; ++j)
        if (orient(pts[i], pts[j], cand) == 0) ok = false;
    if (ok) pts.push_back(cand);
  }
  Instance inst;
  inst.name = "random_n" + std::to_string(n) + "_m" + std::to_string(m) + "_k" +
              std::to_string(k) + "_s" + std::to_string(seed);
  inst.point_set = std::make_shared<PointSet>(std::move(pts));
  Triangulation del = delaunay(inst.point_set);
  for (int t = 0; t < m; ++t) {
    Triangulation cur = del;
    for (int f = 0; f < k; ++f) {
      auto cands = cur.unit_flip_candidates();
      if (cands.empty()) break;
      std::uniform_int_distribution<size_t> pick(0, cands.size() - 1);
      auto [rem, add] = cands[pick(rng)];
      cur = cur.apply_parallel_flip(ParallelFlip{{rem}, {add}});
    }
    inst.inputs.push_back(std::move(cur));
  }
  return inst;
}

std::string export_svg(const Triangulation& t) {
  const PointSet& s = t.point_set();
  Coord minx = s[0].x, maxx = s[0].x, miny = s[0].y, maxy = s[0].y;
  for (const Point& p : s.points()) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  double w = double(maxx - minx), h = double(maxy - miny);
  if (w <= 0) w = 1;
  if (h <= 0) h = 1;
  double mx = 0.05 * w, my = 0.05 * h;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
      << (minx - mx) << " " << (miny - my) << " " << (w + 2 * mx) << " "
      << (h + 2 * my) << "\">\n";
  double stroke = std::max(w, h) / 400.0;
  for (const Edge& e : t.edges())
    out << "  <line x1=\"" << s[e.a].x << "\" y1=\"" << s[e.a].y << "\" x2=\""
        << s[e.b].x << "\" y2=\"" << s[e.b].y
        << "\" stroke=\"black\" stroke-width=\"" << stroke << "\"/>\n";
  for (const Point& p : s.points())
    out << "  <circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\""
        << 2 * stroke << "\" fill=\"red\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace triflip
