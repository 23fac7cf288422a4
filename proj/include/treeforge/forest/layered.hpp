#pragma once

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/forest/glue.hpp"
#include "treeforge/forest/parent_forest.hpp"

namespace treeforge {

// ── sparse nets ──────────────────────────────────────────────────────────────

struct layered_nets_t {
  // nets[k] holds level k+1 (level 0 is implicitly every interior vertex)
  std::vector<std::vector<vid>> nets;
  std::vector<int> radii;  // radii[k] = separation radius of nets[k]
};

namespace detail {

// Marks the ball of the given radius around src in `blocked`.
inline void block_ball(const window& w, vid src, int radius, std::vector<char>& blocked) {
  std::vector<int> dist(w.vertex_count(), -1);
  std::deque<vid> q{src};
  dist[src] = 0;
  blocked[src] = 1;
  while (!q.empty()) {
    vid v = q.front();
    q.pop_front();
    if (dist[v] == radius) continue;
    for (const auto& inc : w.incident(v))
      if (dist[inc.other] < 0) {
        dist[inc.other] = dist[v] + 1;
        blocked[inc.other] = 1;
        q.push_back(inc.other);
      }
  }
}

}  // namespace detail

// Builds maximal sparse nets of interior vertices, one per level: members of
// level n are pairwise farther than 2*r_n apart, chosen greedily in ascending
// vertex id so the construction is canonical.  Default radii are r_n = 2^n.
// Stops once a level is a single vertex per component, or every member sits
// within r_n of the boundary.
inline layered_nets_t layered_nets(const window& w, std::vector<int> radii = {}) {
  for (int r : radii) require(r >= 1, errc::bad_params, "net radii must be positive");

  layered_nets_t out;
  std::vector<int> comp = w.component_labels();
  std::vector<int> boundary_dist = w.bfs_distances(w.boundary_vertices());

  std::vector<vid> interior = w.interior_vertices();
  if (interior.empty()) return out;

  const bool user_radii = !radii.empty();
  for (int level = 1;; ++level) {
    int r;
    if (user_radii) {
      if (level > static_cast<int>(radii.size())) break;
      r = radii[level - 1];
    } else {
      require(level < 30, errc::bad_params, "net radius overflow; pass explicit radii");
      r = 1 << level;
    }

    std::vector<char> blocked(w.vertex_count(), 0);
    std::vector<vid> net;
    for (vid v : interior)
      if (!blocked[v]) {
        net.push_back(v);
        detail::block_ball(w, v, 2 * r, blocked);
      }

    out.nets.push_back(net);
    out.radii.push_back(r);

    // one survivor per component?
    std::vector<int> per_comp(w.component_count(), 0);
    bool singletons = true;
    for (vid v : net)
      if (++per_comp[comp[v]] > 1) singletons = false;
    bool hugging = true;
    for (vid v : net)
      if (boundary_dist[v] < 0 || boundary_dist[v] > r) hugging = false;
    if (singletons || hugging) break;
  }
  return out;
}

// ── layered subforest ────────────────────────────────────────────────────────

namespace detail {

// Multi-target BFS distances; -1 where unreachable.
inline std::vector<int> dist_to(const window& w, const std::vector<vid>& targets) {
  std::vector<int> dist(w.vertex_count(), -1);
  std::deque<vid> q;
  for (vid t : targets)
    if (dist[t] < 0) {
      dist[t] = 0;
      q.push_back(t);
    }
  while (!q.empty()) {
    vid v = q.front();
    q.pop_front();
    for (const auto& inc : w.incident(v))
      if (dist[inc.other] < 0) {
        dist[inc.other] = dist[v] + 1;
        q.push_back(inc.other);
      }
  }
  return dist;
}

// Walks the canonical shortest path from src downhill to distance zero,
// recording each step in `level`.  Ties pick the least-id neighbor, so shared
// suffixes agree across sources and the union of paths is a function.
inline void route(const window& w, vid src, const std::vector<int>& dist, partial_map& level) {
  vid at = src;
  while (dist[at] != 0) {
    vid next = kNone;
    for (const auto& inc : w.incident(at))
      if (dist[inc.other] == dist[at] - 1 && (next == kNone || inc.other < next))
        next = inc.other;
    require(next != kNone, errc::precondition_violated, "broken distance field");
    auto [it, fresh] = level.emplace(at, next);
    if (!fresh) {
      require(it->second == next, errc::precondition_violated, "route mismatch");
      return;  // suffix already laid down
    }
    at = next;
  }
}

}  // namespace detail

// Routes every interior vertex to the boundary through the nets: level k
// vertices walk a canonical shortest path to the level k+1 net, and the last
// net walks straight to the boundary.  The per-level maps are glued, so layer
// tags record the deepest net containing each vertex.  Path lengths into net
// k+1 stay within 2*r_{k+1} because the nets are maximal.
inline parent_forest layered_subforest(const window& w, const layered_nets_t& nets) {
  std::vector<int> comp = w.component_labels();
  std::vector<char> comp_escapes(w.component_count(), 0);
  for (vid b : w.boundary_vertices()) comp_escapes[comp[b]] = 1;
  for (vid v : w.interior_vertices())
    require(comp_escapes[comp[v]], errc::no_escape,
            "component " + std::to_string(comp[v]) + " never reaches the boundary");

  std::vector<vid> interior = w.interior_vertices();
  const int depth = static_cast<int>(nets.nets.size());
  std::vector<partial_map> maps(depth + 1);

  for (int k = 0; k <= depth; ++k) {
    const std::vector<vid>& sources = (k == 0) ? interior : nets.nets[k - 1];
    const std::vector<vid> targets = (k == depth) ? w.boundary_vertices() : nets.nets[k];
    if (sources.empty()) continue;
    std::vector<int> dist = detail::dist_to(w, targets);
    for (vid s : sources) {
      require(dist[s] >= 0, errc::no_escape, "vertex " + std::to_string(s) + " cannot reach its targets");
      if (k < depth)
        require(dist[s] <= 2 * nets.radii[k], errc::precondition_violated,
                "net spacing bound violated at vertex " + std::to_string(s));
      detail::route(w, s, dist, maps[k]);
    }
  }

  return glue_functions(w, maps);
}

}  // namespace treeforge
