#pragma once

#include <map>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/gf2.hpp"
#include "treeforge/core/window.hpp"
#include "treeforge/planar/blocks.hpp"
#include "treeforge/planar/two_basis.hpp"

namespace treeforge {

// Dual over a 2-basis: one dual vertex per basis cycle, one dual edge e* per
// primal edge in exactly two cycles.  Dual edges reuse the primal edge id, so
// star is the identity on ids and subgraph handoff across the duality is
// lossless.  With attach_virtual_outer, edges lying in exactly one cycle run
// to a single boundary-flagged virtual vertex standing in for infinity (the
// unbounded face).
struct dual_graph {
  window g;
  int virtual_vertex = kNone;             // vid in g, or kNone
  std::vector<int> cycle_of_vertex;       // dual vid -> basis cycle index (kNone for virtual)
  std::map<eid, std::pair<int, int>> crossing;  // primal eid -> the 1-2 cycle indices it lies in
};

inline dual_graph build_dual(const window& w, const two_basis& b, bool attach_virtual_outer) {
  basis_report rep = validate_two_basis(w, b);
  require(rep.valid, errc::invalid_basis, rep.reason);

  dual_graph d;
  for (std::size_t i = 0; i < b.cycles.size(); ++i) {
    d.g.add_vertex(false);
    d.cycle_of_vertex.push_back(static_cast<int>(i));
  }
  std::map<eid, std::vector<int>> in_cycles;
  for (std::size_t i = 0; i < b.cycles.size(); ++i)
    for (eid e : b.cycles[i].edges) in_cycles[e].push_back(static_cast<int>(i));

  if (attach_virtual_outer) {
    d.virtual_vertex = d.g.add_vertex(true);
    d.cycle_of_vertex.push_back(kNone);
  }
  for (const auto& ed : w.edges()) {  // ascending insertion order keeps dual ids aligned
    auto it = in_cycles.find(ed.id);
    if (it == in_cycles.end()) continue;  // edge in no cycle: no dual edge
    const auto& cs = it->second;
    if (cs.size() == 2) {
      d.g.add_edge(cs[0], cs[1], ed.id);
      d.crossing[ed.id] = {cs[0], cs[1]};
    } else if (attach_virtual_outer) {
      d.g.add_edge(cs[0], d.virtual_vertex, ed.id);
      d.crossing[ed.id] = {cs[0], kNone};
    }
  }
  return d;
}

// G ⊖* S: removes from the primal every edge whose dual edge lies in `sub`.
inline window ominus_star(const window& w, const dual_graph& d, const std::vector<eid>& sub) {
  std::vector<eid> victims;
  for (eid e : sub) {
    require(d.g.has_edge_id(e), errc::unknown_dual_edge,
            "dual edge " + std::to_string(e) + " does not exist");
    victims.push_back(e);  // dual ids are primal ids
  }
  return w.remove_edges(victims);
}

// ── duality statement checks ──────────────────────────────────────────────

struct duality_report {
  bool h_acyclic = false;           // H = w ⊖* sub has no cycles
  bool sub_escaping = false;        // every sub-component meets virtual/boundary
  bool prop1_agree = false;         // the two sides of statement (1) coincide
  bool h_same_components = false;   // H has the same vertex partition as w
  bool sub_one_ended_spanning = false;
  bool prop3_agree = false;
  std::vector<vid> trapped_dual_component;  // witness: sub-component not reaching out
  std::vector<vid> h_cycle_vertices;        // witness: vertices on a cycle of H
};

// Desk-scale reading of the two duality equivalences: acyclicity of the carved
// primal vs escape ("aperiodicity") of the dual subgraph, and spanning-forest
// form when components are preserved.
inline duality_report duality_check(const window& w, const dual_graph& d, const std::vector<eid>& sub) {
  duality_report rep;
  window h = ominus_star(w, d, sub);
  rep.h_acyclic = cycle_space_rank(h) == 0;
  if (!rep.h_acyclic) {
    // witness: any vertex with positive degree in some cyclic part; report the
    // 2-core of h (repeatedly strip degree-<=1 vertices)
    std::vector<int> deg(h.vertex_count());
    std::vector<vid> strip;
    for (vid v = 0; v < h.vertex_count(); ++v) {
      deg[v] = h.degree(v);
      if (deg[v] <= 1) strip.push_back(v);
    }
    std::vector<char> gone(h.vertex_count(), 0);
    while (!strip.empty()) {
      vid v = strip.back();
      strip.pop_back();
      if (gone[v]) continue;
      gone[v] = 1;
      for (const auto& inc : h.incident(v))
        if (!gone[inc.other] && --deg[inc.other] <= 1) strip.push_back(inc.other);
    }
    for (vid v = 0; v < h.vertex_count(); ++v)
      if (!gone[v] && deg[v] >= 2) rep.h_cycle_vertices.push_back(v);
  }

  // The dual subgraph (all dual vertices, only the sub edges).  A component
  // not meeting the virtual/boundary side is "periodic": a finite trap.
  std::map<eid, char> in_sub;
  for (eid e : sub) in_sub[e] = 1;
  std::vector<eid> drop;
  for (const auto& ed : d.g.edges())
    if (!in_sub.count(ed.id)) drop.push_back(ed.id);
  window carrier = d.g.remove_edges(drop);

  rep.sub_escaping = true;
  for (const auto& comp : carrier.components()) {
    bool out = false;
    for (vid v : comp)
      if (d.g.boundary(v)) out = true;
    if (!out) {
      rep.sub_escaping = false;
      if (rep.trapped_dual_component.empty()) rep.trapped_dual_component = comp;
    }
  }
  rep.prop1_agree = rep.h_acyclic == rep.sub_escaping;

  rep.h_same_components = h.component_labels() == w.component_labels();
  bool sub_acyclic = cycle_space_rank(carrier) == 0;
  rep.sub_one_ended_spanning = sub_acyclic && rep.sub_escaping;
  rep.prop3_agree = (rep.h_acyclic && rep.h_same_components) == rep.sub_one_ended_spanning;
  return rep;
}

// ── double dual ───────────────────────────────────────────────────────────

struct double_dual_result {
  dual_graph dual;         // G*
  two_basis star_basis;    // X* = { x* : x in V(G) } over G*
  dual_graph dual2;        // G** built over X*
  bool isomorphic = false; // canonical map x -> x*, e -> e** verified
};

// Requires every edge in exactly two basis cycles and a 2-connected window;
// then x* = { e* : e incident with x } is a simple dual cycle, X* is a 2-basis
// of G*, and the dual over it reproduces G under the identity on ids.
inline double_dual_result double_dual(const window& w, const two_basis& b) {
  std::map<eid, int> mult;
  for (const auto& c : b.cycles)
    for (eid e : c.edges) ++mult[e];
  for (const auto& ed : w.edges())
    require(mult.count(ed.id) && mult[ed.id] == 2, errc::precondition_violated,
            "edge " + std::to_string(ed.id) + " is not in exactly 2 cycles");
  require(w.component_count() == 1, errc::precondition_violated, "window must be connected");
  if (w.vertex_count() >= 3) {
    auto blocks = biconnected_blocks(w);
    require(blocks.size() == 1, errc::precondition_violated, "window must be 2-connected");
  }

  double_dual_result out;
  out.dual = build_dual(w, b, /*attach_virtual_outer=*/false);

  for (vid x = 0; x < w.vertex_count(); ++x) {
    cycle_edges star;
    for (const auto& inc : w.incident(x)) star.edges.push_back(inc.e);
    std::string why;
    require(validate_cycle(out.dual.g, star, &why), errc::invalid_basis,
            "star of vertex " + std::to_string(x) + " is not a simple dual cycle: " + why);
    out.star_basis.cycles.push_back(std::move(star));
  }

  out.dual2 = build_dual(out.dual.g, out.star_basis, /*attach_virtual_outer=*/false);

  // dual2 vertex i corresponds to star of primal vertex i; verify G** == G.
  out.isomorphic = out.dual2.g.vertex_count() == w.vertex_count() &&
                   out.dual2.g.edge_count() == w.edge_count();
  if (out.isomorphic)
    for (const auto& ed : w.edges()) {
      if (!out.dual2.g.has_edge_id(ed.id)) {
        out.isomorphic = false;
        break;
      }
      const auto& dd = out.dual2.g.edge(ed.id);
      if (std::minmax(dd.u, dd.v) != std::minmax(ed.u, ed.v)) {
        out.isomorphic = false;
        break;
      }
    }
  return out;
}

}  // namespace treeforge
