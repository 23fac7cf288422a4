#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "treeforge/core/ends.hpp"
#include "treeforge/core/errors.hpp"
#include "treeforge/forest/layered.hpp"
#include "treeforge/forest/parent_forest.hpp"

namespace treeforge {

// Extends a forest living on the vertex set `a` to all of the window: every
// outside vertex adopts its least-id neighbor one step closer to `a`, so each
// new orbit walks a shortest path into `a` and continues there.  `a` must meet
// every component (AMissesComponent otherwise).
inline parent_forest extend_subforest(const window& w, const std::vector<vid>& a,
                                      const parent_forest& fa) {
  std::vector<char> in_a(w.vertex_count(), 0);
  for (vid v : a) {
    require(v >= 0 && v < w.vertex_count(), errc::bad_params, "vertex out of range");
    in_a[v] = 1;
  }
  for (int v = 0; v < w.vertex_count(); ++v)
    require(!fa.member(v) || in_a[v], errc::bad_params, "forest member outside its vertex set");

  std::vector<int> comp = w.component_labels();
  std::vector<char> hit(w.component_count(), 0);
  for (vid v : a) hit[comp[v]] = 1;
  for (int c = 0; c < w.component_count(); ++c)
    require(hit[c], errc::a_misses_component,
            "component " + std::to_string(c) + " carries no anchor vertex");

  std::vector<int> dist = w.bfs_distances(a);
  parent_forest f(w.vertex_count());
  for (vid v = 0; v < w.vertex_count(); ++v) {
    if (in_a[v]) {
      if (!fa.member(v)) continue;
      if (fa.has_parent(v))
        f.set_parent(v, fa.parent(v), fa.via(v), fa.layer(v));
      else
        f.declare_root(v, fa.layer(v));
      continue;
    }
    vid best = kNone;
    eid via = kNone;
    for (const auto& inc : w.incident(v))  // ascending eid
      if (dist[inc.other] == dist[v] - 1 && (best == kNone || inc.other < best)) {
        best = inc.other;
        via = inc.e;
      }
    require(best != kNone, errc::precondition_violated, "broken distance field");
    f.set_parent(v, best, via);
  }
  for (vid v = 0; v < w.vertex_count(); ++v)
    if (f.member(v) && !f.has_parent(v) && !fa.member(v)) f.declare_root(v);

  forest_check chk = validate_forest(w, f, /*require_spanning=*/false);
  require(chk.ok, errc::precondition_violated, "extended forest invalid: " + chk.reason);
  return f;
}

// ── two-ended obstruction gate ───────────────────────────────────────────────

struct obstruction_entry {
  int component = 0;
  vid center = kNone;        // interior probe vertex, or kNone if none exists
  end_class label = end_class::finite;
};

struct obstruction_report {
  bool blocked = false;  // some component looks two-ended
  std::vector<obstruction_entry> entries;
};

// Probes each component from a canonical interior center (minimum eccentricity,
// least id on ties) and classifies how many escape routes survive deleting
// balls around it.  Components reading as two-ended are obstructions: no
// one-ended spanning forest can exist there.
inline obstruction_report detect_obstruction(const window& w) {
  obstruction_report rep;
  std::vector<int> comp = w.component_labels();
  for (int c = 0; c < w.component_count(); ++c) {
    obstruction_entry entry;
    entry.component = c;
    vid center = kNone;
    int best_ecc = -1;
    for (vid v : w.interior_vertices()) {
      if (comp[v] != c) continue;
      int ecc = w.eccentricity(v);
      if (center == kNone || ecc < best_ecc) {
        center = v;
        best_ecc = ecc;
      }
    }
    entry.center = center;
    if (center != kNone) {
      entry.label = classify_ends(w, center).label;
      if (entry.label == end_class::two) rep.blocked = true;
    }
    rep.entries.push_back(entry);
  }
  return rep;
}

// One-shot pipeline: refuse windows with a two-ended component, then build the
// layered subforest.  The refusal is honest — when both escape directions
// persist no parent choice can merge them into one end.
inline parent_forest one_ended_forest(const window& w) {
  obstruction_report rep = detect_obstruction(w);
  if (rep.blocked) {
    std::string who;
    for (const auto& entry : rep.entries)
      if (entry.label == end_class::two) who += (who.empty() ? "" : ", ") + std::to_string(entry.component);
    fail(errc::two_ended_obstruction, "two-ended component(s): " + who);
  }
  return layered_subforest(w, layered_nets(w));
}

}  // namespace treeforge
