#pragma once

#include <map>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/forest/parent_forest.hpp"

namespace treeforge {

// One partial successor map: x -> f(x), both endpoints of a window edge.
using partial_map = std::map<vid, vid>;

// Glues a finite stack of partial maps into one forest:
//   f(x) = f_{n(x)}(x)  with  n(x) = max{ i : x in dom(f_i) }.
// Conditions checked: every pair is a window edge; each f_i is acyclic on its
// own domain (CyclicInput); and for each x in dom(f_i), f_i(x) either lies in
// dom(f_j) for some j >= i or escapes — boundary vertices are the escape
// hatch at window scale (Condition4Violated otherwise).  Escaped vertices are
// terminal: glue never assigns a parent to a boundary vertex, which keeps
// forward orbits finite even when a low level loops back onto the hatch.
inline parent_forest glue_functions(const window& w, const std::vector<partial_map>& fs) {
  const int levels = static_cast<int>(fs.size());

  auto least_edge_between = [&](vid a, vid b) -> eid {
    for (const auto& inc : w.incident(a))  // ascending eid
      if (inc.other == b) return inc.e;
    return kNone;
  };

  for (int i = 0; i < levels; ++i) {
    for (const auto& [x, y] : fs[i])
      require(least_edge_between(x, y) != kNone, errc::precondition_violated,
              "map " + std::to_string(i) + " sends " + std::to_string(x) + " to a non-neighbor");
    // cycle hunt inside level i
    std::map<vid, int> state;
    for (const auto& [sx, sy] : fs[i]) {
      if (state[sx]) continue;
      std::vector<vid> trail;
      vid at = sx;
      while (true) {
        auto st = state.find(at);
        if (st != state.end() && st->second == 2) break;
        if (st != state.end() && st->second == 1)
          fail(errc::cyclic_input, "map " + std::to_string(i) + " cycles through vertex " +
                                       std::to_string(at));
        state[at] = 1;
        trail.push_back(at);
        auto nx = fs[i].find(at);
        if (nx == fs[i].end()) break;
        at = nx->second;
      }
      for (vid v : trail) state[v] = 2;
    }
  }

  // n(x) = top level whose domain holds x
  std::map<vid, int> top;
  for (int i = 0; i < levels; ++i)
    for (const auto& [x, y] : fs[i]) top[x] = i;

  for (int i = 0; i < levels; ++i)
    for (const auto& [x, y] : fs[i]) {
      if (w.boundary(y)) continue;  // escape
      auto t = top.find(y);
      if (t == top.end() || t->second < i)
        fail(errc::condition4_violated, "f_" + std::to_string(i) + "(" + std::to_string(x) +
                                            ") = " + std::to_string(y) +
                                            " has no continuation at level >= " + std::to_string(i));
    }

  parent_forest f(w.vertex_count());
  for (const auto& [x, lvl] : top) {
    if (w.boundary(x)) continue;  // hatch vertices stay terminal
    vid y = fs[lvl].at(x);
    f.set_parent(x, y, least_edge_between(x, y), lvl);
  }
  for (vid v = 0; v < w.vertex_count(); ++v)
    if (f.member(v) && !f.has_parent(v)) f.declare_root(v);

  forest_check chk = validate_forest(w, f, /*require_spanning=*/false);
  require(chk.ok, errc::precondition_violated, "glued forest invalid: " + chk.reason);
  return f;
}

}  // namespace treeforge
