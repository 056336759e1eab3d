#include "triflip/bounds.hpp"

#include <algorithm>
#include <future>
#include <limits>

#include "triflip/cnf_builder.hpp"
#include "triflip/path_heuristics.hpp"

namespace triflip {

bool DistanceMatrix::all_exact() const {
  return std::all_of(exact.begin(), exact.end(), [](bool b) { return b; });
}

DistanceMatrix DistanceMatrix::make(int m) {
  DistanceMatrix d;
  d.m = m;
  d.dist.assign(m * m, 0);
  d.exact.assign(m * m, true);
  return d;
}

void DistanceMatrix::set(int i, int j, int v, bool ex) {
  dist[i * m + j] = dist[j * m + i] = v;
  exact[i * m + j] = exact[j * m + i] = ex;
}

// ---------------------------------------------------------------------------
// Crossing string.

TriString extract_crossing_string(const Edge& uv, const Triangulation& t) {
  if (t.has_edge(uv)) throw Error("edge already present, no crossing string");
  const PointSet& s = t.point_set();
  std::vector<Edge> crossed = t.crossing_edges(uv);
  int chi = static_cast<int>(crossed.size());
  std::string str = "L";
  for (int k = 1; k < chi; ++k) {
    // Intermediate triangle k is entered through crossed[k-1] and left
    // through crossed[k]; the two edges share the apex vertex.
    const Edge &e1 = crossed[k - 1], &e2 = crossed[k];
    int apex = -1;
    for (int v : {e1.a, e1.b})
      if (v == e2.a || v == e2.b) apex = v;
    if (apex < 0) throw Error("consecutive crossed edges share no vertex");
    str += orient(s[uv.a], s[uv.b], s[apex]) > 0 ? 'U' : 'D';
  }
  str += 'R';
  return TriString(str);
}

int flip_insertion_lb(const Edge& uv, const Triangulation& t,
                      const BoundTable* table) {
  if (t.has_edge(uv)) return 0;
  return rewrite_bound_estimate(extract_crossing_string(uv, t), table);
}

// ---------------------------------------------------------------------------
// Maximum weight assignment (Hungarian algorithm, O(m^3) shortest augmenting
// paths on the cost matrix).

long max_cycle_packing_weight(const DistanceMatrix& d) {
  int m = d.m;
  if (m == 0) return 0;
  // Minimize cost = max_entry - weight.
  long maxw = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) maxw = std::max(maxw, (long)d.d(i, j));
  auto cost = [&](int i, int j) { return maxw - (i == j ? 0L : d.d(i, j)); };

  const long INF = std::numeric_limits<long>::max() / 4;
  std::vector<long> u(m + 1, 0), v(m + 1, 0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= m; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<long> minv(m + 1, INF);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = -1;
      long delta = INF;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        long cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  long weight = 0;
  for (int j = 1; j <= m; ++j) {
    int i = p[j];
    weight += (i == j) ? 0 : d.d(i - 1, j - 1);
  }
  return weight;
}

long cycle_packing_lb(const DistanceMatrix& d) {
  long w = max_cycle_packing_weight(d);
  return (w + 1) / 2;
}

Cnf cycle_packing_cnf(const DistanceMatrix& d) {
  int m = d.m;
  Cnf cnf;
  std::vector<std::vector<int>> arc(m, std::vector<int>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) arc[i][j] = ++cnf.num_vars;
  // At most one outgoing and one incoming arc per vertex.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        if (arc[i][j] && arc[i][k]) cnf.add_hard({-arc[i][j], -arc[i][k]});
        if (arc[j][i] && arc[k][i]) cnf.add_hard({-arc[j][i], -arc[k][i]});
      }
  // Cycle closure: a selected arc into j forces an arc out of j, so every
  // selected arc lies on a cycle.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!arc[i][j]) continue;
      Clause c{-arc[i][j]};
      for (int k = 0; k < m; ++k)
        if (arc[j][k]) c.push_back(arc[j][k]);
      cnf.add_hard(std::move(c));
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (arc[i][j] && d.d(i, j) > 0) cnf.add_soft(d.d(i, j), {arc[i][j]});
  return cnf;
}

std::string cycle_packing_wcnf(const DistanceMatrix& d) {
  return emit_wcnf(cycle_packing_cnf(d));
}

// ---------------------------------------------------------------------------
// Pairwise distance.

DistanceResult pairwise_distance(const Triangulation& a, const Triangulation& b,
                                 const EncodeOptions& opts,
                                 const SolverConfig& cfg) {
  if (a == b) return DistanceResult{0, true, Path{a, {}}};
  DistanceResult res;
  res.path = best_heuristic_path(a, b);
  res.dist = res.path.length();
  res.exact = false;

  // Insertion lower bound over missing edges, both directions.
  int lb = 1;
  for (const Edge& e : b.edges())
    if (!a.has_edge(e))
      lb = std::max(lb, flip_insertion_lb(e, a, opts.bound_table));
  for (const Edge& e : a.edges())
    if (!b.has_edge(e))
      lb = std::max(lb, flip_insertion_lb(e, b, opts.bound_table));

  while (res.dist > lb) {
    BuiltFormula f = build_path_formula(a, b, res.dist - 1, opts);
    SatResult r = solve_sat(f.cnf, cfg);
    if (r.status == SatStatus::SAT) {
      res.path = decode_path(r.model, f.vars, 0).compressed();
      res.dist -= 1;
      // Decoding may compress below the tested bound.
      res.dist = std::min(res.dist, res.path.length());
    } else if (r.status == SatStatus::UNSAT) {
      res.exact = true;
      return res;
    } else {
      res.exact = false;  // upper bound only
      return res;
    }
  }
  res.exact = true;  // met the insertion lower bound
  return res;
}

DistanceMatrix distance_matrix(const std::vector<Triangulation>& inputs,
                               const EncodeOptions& opts,
                               const SolverConfig& cfg, int jobs) {
  int m = static_cast<int>(inputs.size());
  DistanceMatrix d = DistanceMatrix::make(m);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  if (jobs <= 1) {
    for (auto [i, j] : pairs) {
      DistanceResult r = pairwise_distance(inputs[i], inputs[j], opts, cfg);
      d.set(i, j, r.dist, r.exact);
    }
    return d;
  }
  std::vector<std::future<DistanceResult>> futs;
  for (auto [i, j] : pairs)
    futs.push_back(std::async(std::launch::async | std::launch::deferred,
                              [&, i = i, j = j] {
                                return pairwise_distance(inputs[i], inputs[j],
                                                         opts, cfg);
                              }));
  for (size_t k = 0; k < pairs.size(); ++k) {
    DistanceResult r = futs[k].get();
    d.set(pairs[k].first, pairs[k].second, r.dist, r.exact);
  }
  return d;
}

}  // namespace triflip
