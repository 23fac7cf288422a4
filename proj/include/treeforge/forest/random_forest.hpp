#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/forest/parent_forest.hpp"

namespace treeforge {

// Wired minimal spanning forest at window scale: edges get i.i.d. weights
// drawn in ascending edge-id order from a seeded generator, the boundary is
// pre-merged into one blob, and Kruskal keeps every weight-minimal connector.
// Each resulting tree is oriented toward its least-id boundary vertex (or its
// least vertex when the component never meets the boundary).
inline parent_forest random_weight_forest(const window& w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  struct weighted {
    std::uint64_t weight;
    eid e;
    vid u, v;
  };
  std::vector<weighted> order;
  order.reserve(w.edges().size());
  for (const auto& ed : w.edges())  // ascending eid: draw order is part of the contract
    order.push_back({rng(), ed.id, ed.u, ed.v});
  std::sort(order.begin(), order.end(), [](const weighted& a, const weighted& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.e < b.e;
  });

  std::vector<int> up(w.vertex_count() + 1);
  for (int i = 0; i < static_cast<int>(up.size()); ++i) up[i] = i;
  auto find = [&](int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  const int blob = w.vertex_count();  // wired boundary super-node
  for (vid b : w.boundary_vertices()) up[find(b)] = find(blob);

  std::vector<std::vector<std::pair<vid, eid>>> kept(w.vertex_count());
  for (const auto& cand : order) {
    int ru = find(cand.u), rv = find(cand.v);
    if (ru == rv) continue;
    up[ru] = rv;
    kept[cand.u].push_back({cand.v, cand.e});
    kept[cand.v].push_back({cand.u, cand.e});
  }

  parent_forest f(w.vertex_count());
  std::vector<char> seen(w.vertex_count(), 0);

  auto orient_from = [&](vid root) {
    f.declare_root(root);
    seen[root] = 1;
    std::deque<vid> q{root};
    while (!q.empty()) {
      vid v = q.front();
      q.pop_front();
      for (const auto& [other, e] : kept[v])
        if (!seen[other]) {
          seen[other] = 1;
          f.set_parent(other, v, e);
          q.push_back(other);
        }
    }
  };

  for (vid b : w.boundary_vertices())
    if (!seen[b]) orient_from(b);  // ascending id: least boundary vertex roots its tree
  for (vid v = 0; v < w.vertex_count(); ++v)
    if (!seen[v]) orient_from(v);  // boundary-free leftovers

  forest_check chk = validate_forest(w, f, /*require_spanning=*/true);
  require(chk.ok, errc::precondition_violated, "random forest invalid: " + chk.reason);
  return f;
}

}  // namespace treeforge
