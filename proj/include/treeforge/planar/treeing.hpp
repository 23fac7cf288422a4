#pragma once

#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/gf2.hpp"
#include "treeforge/forest/extend.hpp"
#include "treeforge/planar/blocks.hpp"
#include "treeforge/planar/dual.hpp"
#include "treeforge/planar/embedding.hpp"
#include "treeforge/planar/two_basis.hpp"

namespace treeforge {

struct treeing_result {
  two_basis basis;            // bounded faces, per block
  dual_graph dual;            // basis dual with the virtual outer vertex
  parent_forest dual_forest;  // escape forest on the dual, oriented outward
  std::vector<eid> crossed;   // primal edges the dual forest crosses
  window tree;                // the window minus crossed edges
};

// Spanning-tree construction through the dual: split the window into
// 2-connected blocks, collect each block's bounded faces into one 2-basis,
// attach the virtual outer vertex, grow the canonical escape forest on the
// dual, and delete every primal edge that forest crosses.  Bridges have no
// dual edge, so they survive — as they must.  The result is checked to be
// acyclic and component-preserving (a spanning tree per component).
inline treeing_result planar_treeing(const window& w, const rotation_system& rot) {
  treeing_result out;

  for (const auto& block : biconnected_blocks(w)) {
    if (block.size() < 2) continue;  // bridges carry no facial cycles
    std::vector<char> keep(w.vertex_count(), 0);
    for (eid e : block) {
      const auto& ed = w.edge(e);
      keep[ed.u] = keep[ed.v] = 1;
    }
    window piece = w.induced_same_ids(keep);
    rotation_system sub;
    sub.order.resize(piece.vertex_count());
    for (vid v = 0; v < w.vertex_count(); ++v) {
      if (!keep[v]) continue;
      for (eid e : rot.order[v])
        if (piece.has_edge_id(e)) sub.order[v].push_back(e);
    }

    facial_basis fb = facial_cycles(piece, sub);
    for (int i = 0; i < static_cast<int>(fb.basis.cycles.size()); ++i)
      if (i != fb.outer_index) out.basis.cycles.push_back(fb.basis.cycles[i]);
  }

  basis_report rep = validate_two_basis(w, out.basis);
  require(rep.valid, errc::invalid_basis, "facial cycles are not a 2-basis: " + rep.reason);

  out.dual = build_dual(w, out.basis, /*attach_virtual_outer=*/true);

  parent_forest seed(out.dual.g.vertex_count());
  seed.declare_root(out.dual.virtual_vertex);
  out.dual_forest =
      extend_subforest(out.dual.g, {out.dual.virtual_vertex}, seed);
  out.crossed = out.dual_forest.edge_set();

  out.tree = ominus_star(w, out.dual, out.crossed);

  require(cycle_space_rank(out.tree) == 0, errc::precondition_violated,
          "treeing left a cycle");
  require(out.tree.component_count() == w.component_count(), errc::precondition_violated,
          "treeing disconnected a component");
  return out;
}

// Cost statistic of a treeing viewed as edges-per-vertex of the surviving
// window; trees per component give (|V| - c) / |V|, just under one.
inline double treeing_cost_stat(const window& tree) {
  require(tree.vertex_count() > 0, errc::bad_params, "empty window");
  return static_cast<double>(tree.edge_count()) / tree.vertex_count();
}

}  // namespace treeforge
