#include "triflip/cnf_builder.hpp"

#include <algorithm>
#include <set>

namespace triflip {

int insertion_bound(const Edge& uv, const Triangulation& t,
                    const EncodeOptions& opts) {
  if (t.has_edge(uv)) return 0;
  if (opts.insertion_bound == EncodeOptions::BoundMode::StringBound)
    return flip_insertion_lb(uv, t, opts.bound_table);
  return log2_bound(t.crossing_count(uv) + 1);
}

int VarMap::edge_var(int path, int layer, const Edge& e) const {
  if (solution_mode_ && path < num_paths() && layer == lengths_[path]) {
    path = num_paths();  // shared center family
    layer = 0;
  }
  auto it = edge_vars_.find(EdgeKey{path, layer, e});
  return it == edge_vars_.end() ? 0 : it->second;
}

int VarMap::flip_var(int path, int layer, const Edge& rem,
                     const Edge& add) const {
  auto it = flip_vars_.find(FlipKey{path, layer, rem, add});
  return it == flip_vars_.end() ? 0 : it->second;
}

namespace {

struct DirectedQuad {
  Edge rem, add;
  std::array<Edge, 4> sides;
};

std::vector<DirectedQuad> directed_quads(const PointSet& s) {
  std::vector<DirectedQuad> out;
  for (const Quad& q : enumerate_empty_convex_quads(s)) {
    std::array<Edge, 4> sides = {Edge(q.u, q.u2), Edge(q.u, q.v2),
                                 Edge(q.v, q.u2), Edge(q.v, q.v2)};
    out.push_back({Edge(q.u, q.v), Edge(q.u2, q.v2), sides});
    out.push_back({Edge(q.u2, q.v2), Edge(q.u, q.v), sides});
  }
  return out;
}

}  // namespace

class FormulaBuilder {
 public:
  FormulaBuilder(PointSetPtr ps, const EncodeOptions& opts)
      : ps_(std::move(ps)), opts_(opts), quads_(directed_quads(*ps_)) {
    int n = ps_->size();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) universe_.emplace_back(a, b);
  }

  // ---- path formula -------------------------------------------------------
  BuiltFormula path(const Triangulation& t0, const Triangulation& tt, int l) {
    starts_ = {&t0};
    target_ = &tt;
    vm_.lengths_ = {l};
    vm_.ps_ = ps_;
    vm_.solution_mode_ = false;

    std::vector<Edge> happy;
    if (opts_.happy_edges) happy = common_edges(t0, tt);
    compute_crossing_elimination(happy);

    // Per-edge bounds.
    std::map<Edge, int> ib0, ibt;
    for (const Edge& e : universe_) {
      ib0[e] = insertion_bound(e, t0, opts_);
      ibt[e] = insertion_bound(e, tt, opts_);
    }

    auto must_keep = [&](const Edge& e) {
      return t0.has_edge(e) || tt.has_edge(e);
    };
    for (int i = 0; i <= l; ++i) {
      std::vector<std::pair<int, Edge>> layer;  // (tightness, edge)
      for (const Edge& e : universe_) {
        if (ib0[e] > i || ibt[e] > l - i) continue;
        if (eliminated_crossing_.count(e)) continue;
        if (!must_keep(e) && !proximity_ok(0, i, e)) continue;
        layer.emplace_back(ib0[e] + ibt[e], e);
      }
      apply_budget(layer, must_keep);
      for (const auto& [tight, e] : layer)
        vm_.edge_vars_[{0, i, e}] = 0;  // ids assigned later
    }
    number_edge_vars();

    // Flip variables with full support; happy edges additionally drop flips
    // removing a target edge or inserting a start edge.
    for (int i = 0; i < l; ++i)
      for (const DirectedQuad& q : quads_) {
        if (opts_.happy_edges && (tt.has_edge(q.rem) || t0.has_edge(q.add)))
          continue;
        if (flip_supported(0, i, q)) vm_.flip_vars_[{0, i, q.rem, q.add}] = 0;
      }
    number_flip_vars();

    emit_flip_clauses();
    emit_change_clauses();

    // Start and target units; happy edges stay true at every layer.
    for (const Edge& e : universe_) {
      if (!fix_unit(0, 0, e, t0.has_edge(e), "start")) return fail();
      if (!fix_unit(0, l, e, tt.has_edge(e), "target")) return fail();
    }
    for (const Edge& e : happy)
      for (int i = 1; i < l; ++i)
        if (!fix_unit(0, i, e, true, "happy")) return fail();

    return BuiltFormula{std::move(cnf_), std::move(vm_)};
  }

  // ---- solution formula ---------------------------------------------------
  BuiltFormula solution(const Instance& inst, const std::vector<int>& lengths) {
    int m = static_cast<int>(inst.inputs.size());
    starts_.clear();
    for (const Triangulation& t : inst.inputs) starts_.push_back(&t);
    target_ = nullptr;
    vm_.lengths_ = lengths;
    vm_.ps_ = ps_;
    vm_.solution_mode_ = true;

    std::vector<Edge> happy;
    if (opts_.happy_edges) {
      happy = inst.inputs[0].edges();
      for (int p = 1; p < m; ++p) {
        std::vector<Edge> next;
        std::set_intersection(happy.begin(), happy.end(),
                              inst.inputs[p].edges().begin(),
                              inst.inputs[p].edges().end(),
                              std::back_inserter(next));
        happy = std::move(next);
      }
    }
    compute_crossing_elimination(happy);

    std::vector<std::map<Edge, int>> ib(m);
    for (int p = 0; p < m; ++p)
      for (const Edge& e : universe_)
        ib[p][e] = insertion_bound(e, inst.inputs[p], opts_);

    // Private layers per path.
    for (int p = 0; p < m; ++p) {
      auto must_keep = [&](const Edge& e) { return inst.inputs[p].has_edge(e); };
      for (int i = 0; i < lengths[p]; ++i) {
        std::vector<std::pair<int, Edge>> layer;
        for (const Edge& e : universe_) {
          if (ib[p][e] > i) continue;
          if (eliminated_crossing_.count(e)) continue;
          if (!must_keep(e) && !proximity_ok(p, i, e)) continue;
          layer.emplace_back(ib[p][e], e);
        }
        apply_budget(layer, must_keep);
        for (const auto& [tight, e] : layer) vm_.edge_vars_[{p, i, e}] = 0;
      }
    }
    // Shared center family, stored as path id m.
    {
      std::vector<std::pair<int, Edge>> layer;
      for (const Edge& e : universe_) {
        if (eliminated_crossing_.count(e)) continue;
        int tight = 0;
        bool ok = true;
        for (int p = 0; p < m; ++p) {
          if (ib[p][e] > lengths[p]) ok = false;
          tight += ib[p][e];
          if (!proximity_ok(p, lengths[p], e) && !inst.inputs[p].has_edge(e))
            ok = false;
        }
        if (ok) layer.emplace_back(tight, e);
      }
      auto none = [](const Edge&) { return false; };
      apply_budget(layer, none);
      for (const auto& [tight, e] : layer) vm_.edge_vars_[{m, 0, e}] = 0;
    }
    number_edge_vars();

    for (int p = 0; p < m; ++p)
      for (int i = 0; i < lengths[p]; ++i)
        for (const DirectedQuad& q : quads_) {
          if (opts_.happy_edges && inst.inputs[p].has_edge(q.add)) continue;
          if (flip_supported(p, i, q)) vm_.flip_vars_[{p, i, q.rem, q.add}] = 0;
        }
    number_flip_vars();

    emit_flip_clauses();
    emit_change_clauses();

    for (int p = 0; p < m; ++p)
      for (const Edge& e : universe_)
        if (!fix_unit(p, 0, e, inst.inputs[p].has_edge(e), "start")) return fail();
    for (const Edge& e : happy)
      for (int p = 0; p < m; ++p)
        for (int i = 1; i <= lengths[p]; ++i)
          if (!fix_unit(p, i, e, true, "happy")) return fail();

    return BuiltFormula{std::move(cnf_), std::move(vm_)};
  }

 private:
  void compute_crossing_elimination(const std::vector<Edge>& happy) {
    eliminated_crossing_.clear();
    if (happy.empty()) return;
    const PointSet& s = *ps_;
    for (const Edge& e : universe_)
      for (const Edge& h : happy) {
        if (e.a == h.a || e.a == h.b || e.b == h.a || e.b == h.b) continue;
        if (segments_cross(s[e.a], s[e.b], s[h.a], s[h.b])) {
          eliminated_crossing_.insert(e);
          break;
        }
      }
  }

  bool proximity_ok(int path, int layer, const Edge& e) const {
    if (!opts_.proximity) return true;
    const auto& layers = opts_.proximity->layers;
    if (path >= static_cast<int>(layers.size()) || layers[path].empty())
      return true;
    int idx = std::min(layer, static_cast<int>(layers[path].size()) - 1);
    return layers[path][idx].crossing_count(e) <= opts_.proximity->max_crossings;
  }

  template <class Keep>
  void apply_budget(std::vector<std::pair<int, Edge>>& layer, Keep must_keep) {
    if (!opts_.layer_var_budget) return;
    int budget = *opts_.layer_var_budget;
    if (static_cast<int>(layer.size()) <= budget) return;
    std::stable_sort(layer.begin(), layer.end());
    std::vector<std::pair<int, Edge>> kept;
    for (const auto& entry : layer)
      if (static_cast<int>(kept.size()) < budget || must_keep(entry.second))
        kept.push_back(entry);
    layer = std::move(kept);
  }

  bool flip_supported(int path, int layer, const DirectedQuad& q) const {
    if (!vm_.edge_var(path, layer, q.rem)) return false;
    if (!vm_.edge_var(path, layer + 1, q.add)) return false;
    for (const Edge& s : q.sides)
      if (!vm_.edge_var(path, layer, s) || !vm_.edge_var(path, layer + 1, s))
        return false;
    return true;
  }

  void number_edge_vars() {
    for (auto& [key, id] : vm_.edge_vars_) id = ++cnf_.num_vars;
  }
  void number_flip_vars() {
    for (auto& [key, id] : vm_.flip_vars_) id = ++cnf_.num_vars;
  }

  void emit_flip_clauses() {
    std::map<std::pair<Edge, Edge>, const DirectedQuad*> by_diag;
    for (const DirectedQuad& q : quads_) by_diag[{q.rem, q.add}] = &q;
    for (const auto& [key, f] : vm_.flip_vars_) {
      const auto& [p, i, rem, add] = key;
      const DirectedQuad* q = by_diag.at({rem, add});
      // Flips need edges (layer i), keep edges (layer i+1), flip the diagonal.
      cnf_.add_hard({-f, vm_.edge_var(p, i, rem)});
      for (const Edge& s : q->sides) cnf_.add_hard({-f, vm_.edge_var(p, i, s)});
      cnf_.add_hard({-f, vm_.edge_var(p, i + 1, add)});
      for (const Edge& s : q->sides)
        cnf_.add_hard({-f, vm_.edge_var(p, i + 1, s)});
      // An eliminated removed-edge variable at layer i+1 is forced absent, so
      // the "flip really removes its diagonal" clause is vacuous there.
      if (int rv = vm_.edge_var(p, i + 1, rem)) cnf_.add_hard({-f, -rv});
    }
  }

  void emit_change_clauses() {
    // Index flips by (path, layer, removed) and (path, layer, added).
    std::map<std::tuple<int, int, Edge>, std::vector<int>> removing, inserting;
    for (const auto& [key, f] : vm_.flip_vars_) {
      removing[{key.path, key.layer, key.rem}].push_back(f);
      inserting[{key.path, key.layer, key.add}].push_back(f);
    }
    for (int p = 0; p < vm_.num_paths(); ++p) {
      int l = vm_.lengths_[p];
      for (int i = 0; i < l; ++i)
        for (const Edge& e : universe_) {
          int vi = vm_.edge_var(p, i, e);
          int vi1 = vm_.edge_var(p, i + 1, e);
          if (vi) {
            Clause c{-vi};
            if (vi1) c.push_back(vi1);
            auto it = removing.find({p, i, e});
            if (it != removing.end())
              c.insert(c.end(), it->second.begin(), it->second.end());
            cnf_.add_hard(std::move(c));
          }
          if (vi1) {
            Clause c{-vi1};
            if (vi) c.push_back(vi);
            auto it = inserting.find({p, i, e});
            if (it != inserting.end())
              c.insert(c.end(), it->second.begin(), it->second.end());
            cnf_.add_hard(std::move(c));
          }
        }
    }
  }

  // Unit-fixes a variable; a required-true variable that was eliminated makes
  // the formula trivially false.
  bool fix_unit(int path, int layer, const Edge& e, bool value,
                const char* why) {
    int v = vm_.edge_var(path, layer, e);
    if (!v) {
      if (!value) return true;  // eliminated = false already
      cnf_.add_hard({});
      cnf_.witness = std::string(why) + " edge (" + std::to_string(e.a) + "," +
                     std::to_string(e.b) + ") has no variable at layer " +
                     std::to_string(layer) + " of path " + std::to_string(path);
      return false;
    }
    cnf_.add_hard({value ? v : -v});
    return true;
  }

  BuiltFormula fail() { return BuiltFormula{std::move(cnf_), std::move(vm_)}; }

  PointSetPtr ps_;
  const EncodeOptions& opts_;
  std::vector<DirectedQuad> quads_;
  std::vector<Edge> universe_;
  std::vector<const Triangulation*> starts_;
  const Triangulation* target_ = nullptr;
  std::set<Edge> eliminated_crossing_;
  VarMap vm_;
  Cnf cnf_;
};

BuiltFormula build_path_formula(const Triangulation& t0,
                                const Triangulation& tt, int l,
                                const EncodeOptions& opts) {
  if (l < 0) throw Error("negative path length");
  FormulaBuilder b(t0.point_set_ptr(), opts);
  return b.path(t0, tt, l);
}

BuiltFormula build_solution_formula(const Instance& inst,
                                    const std::vector<int>& lengths,
                                    const EncodeOptions& opts) {
  if (lengths.size() != inst.inputs.size())
    throw Error("lengths/input count mismatch");
  for (int l : lengths)
    if (l < 0) throw Error("negative path length");
  FormulaBuilder b(inst.point_set, opts);
  return b.solution(inst, lengths);
}

void add_last_step_minimization(Cnf& cnf, const VarMap& vm, int path_id,
                                int last_layer) {
  for (const auto& [key, f] : vm.flip_vars())
    if (key.path == path_id && key.layer == last_layer - 1)
      cnf.add_soft(1, {-f});
}

Path decode_path(const std::vector<bool>& model, const VarMap& vm,
                 int path_id) {
  int l = vm.lengths()[path_id];
  std::vector<std::vector<Edge>> layers(l + 1);
  for (int i = 0; i <= l; ++i) {
    const PointSet& s = *vm.point_set();
    int n = s.size();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        Edge e(a, b);
        int v = vm.edge_var(path_id, i, e);
        if (v && v <= static_cast<int>(model.size()) && model[v - 1])
          layers[i].push_back(e);
      }
  }
  Path path{Triangulation::from_edges(vm.point_set(), layers[0]), {}};
  Triangulation cur = path.start;
  for (int i = 0; i < l; ++i) {
    Triangulation next =
        Triangulation::from_edges(vm.point_set(), layers[i + 1]);
    ParallelFlip pf;
    std::set_difference(cur.edges().begin(), cur.edges().end(),
                        next.edges().begin(), next.edges().end(),
                        std::back_inserter(pf.removed));
    std::set_difference(next.edges().begin(), next.edges().end(),
                        cur.edges().begin(), cur.edges().end(),
                        std::back_inserter(pf.added));
    cur = cur.apply_parallel_flip(pf);  // throws on an encoder bug
    path.flips.push_back(std::move(pf));
  }
  return path;
}

}  // namespace triflip
