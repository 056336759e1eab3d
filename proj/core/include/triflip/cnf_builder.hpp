#pragma once

#include <map>
#include <optional>
#include <vector>

#include "triflip/bounds.hpp"
#include "triflip/cnf.hpp"
#include "triflip/instance.hpp"
#include "triflip/triangulation.hpp"

namespace triflip {

/// Restricts new edge variables to edges crossing at most max_crossings edges
/// of the matching triangulation of a reference solution. layers[p][i] is the
/// reference for path p at layer i (clamped to the last entry).
struct ProximityRestriction {
  std::vector<std::vector<Triangulation>> layers;
  int max_crossings = 3;
};

struct EncodeOptions {
  bool happy_edges = false;
  enum class BoundMode { Log2, StringBound };
  BoundMode insertion_bound = BoundMode::Log2;
  const BoundTable* bound_table = nullptr;
  int exact_string_limit = 22;
  std::optional<ProximityRestriction> proximity;
  /// Cap on edge variables per (path, layer); tightest insertion bounds win.
  std::optional<int> layer_var_budget;
};

/// Layers needed before the edge uv can exist, per the active bound mode.
int insertion_bound(const Edge& uv, const Triangulation& t,
                    const EncodeOptions& opts);

/// Bidirectional registry of edge variables e(uv, layer, path) and flip
/// variables f(rem -> add, layer, path). Variable ids are dense and assigned
/// in sorted key order, so formulas are byte-stable for fixed options.
class VarMap {
 public:
  struct EdgeKey {
    int path, layer;
    Edge e;
    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
  };
  struct FlipKey {
    int path, layer;
    Edge rem, add;
    friend auto operator<=>(const FlipKey&, const FlipKey&) = default;
  };

  /// 0 when the variable was eliminated (semantically false).
  int edge_var(int path, int layer, const Edge& e) const;
  int flip_var(int path, int layer, const Edge& rem, const Edge& add) const;

  const std::map<EdgeKey, int>& edge_vars() const { return edge_vars_; }
  const std::map<FlipKey, int>& flip_vars() const { return flip_vars_; }
  int num_paths() const { return static_cast<int>(lengths_.size()); }
  const std::vector<int>& lengths() const { return lengths_; }
  const PointSetPtr& point_set() const { return ps_; }
  bool solution_mode() const { return solution_mode_; }

 private:
  friend class FormulaBuilder;
  std::map<EdgeKey, int> edge_vars_;
  std::map<FlipKey, int> flip_vars_;
  std::vector<int> lengths_;
  PointSetPtr ps_;
  bool solution_mode_ = false;
};

struct BuiltFormula {
  Cnf cnf;
  VarMap vars;
};

/// SAT formula satisfiable iff a path of length <= l from t0 to tt exists
/// under the active options (stationary layers are permitted).
BuiltFormula build_path_formula(const Triangulation& t0,
                                const Triangulation& tt, int l,
                                const EncodeOptions& opts = {});

/// SAT formula satisfiable iff a solution with path i of length <= lengths[i]
/// exists; all paths share the edge variables of their final layer.
BuiltFormula build_solution_formula(const Instance& inst,
                                    const std::vector<int>& lengths,
                                    const EncodeOptions& opts = {});

/// Appends weight-1 soft clauses negating every flip variable on the
/// transition into layer last_layer of the given path.
void add_last_step_minimization(Cnf& cnf, const VarMap& vm, int path_id,
                                int last_layer);

/// Reads the edge variables layer by layer and groups differences into
/// parallel flips. Every layer must decode to a valid triangulation.
Path decode_path(const std::vector<bool>& model, const VarMap& vm,
                 int path_id);

}  // namespace triflip
