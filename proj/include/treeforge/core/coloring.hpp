#pragma once

#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"

namespace treeforge {

// First-fit coloring over ascending vertex id on a plain adjacency list.
// Uses at most d+1 colors where d is the max degree; callers pass the degree
// bound they believe in and get DegreeBoundViolated if the graph exceeds it.
inline std::vector<int> greedy_coloring(const std::vector<std::vector<int>>& adj, int degree_bound) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> color(n, kNone);
  std::vector<char> used(degree_bound + 2, 0);
  for (int v = 0; v < n; ++v) {
    if (static_cast<int>(adj[v].size()) > degree_bound)
      fail(errc::degree_bound_violated,
           "vertex " + std::to_string(v) + " has degree " + std::to_string(adj[v].size()) +
               " > bound " + std::to_string(degree_bound));
    std::fill(used.begin(), used.end(), 0);
    for (int u : adj[v])
      if (color[u] != kNone) used[color[u]] = 1;
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
  }
  return color;
}

inline std::vector<int> greedy_coloring(const window& w, int degree_bound) {
  std::vector<std::vector<int>> adj(w.vertex_count());
  for (vid v = 0; v < w.vertex_count(); ++v)
    for (const auto& inc : w.incident(v)) adj[v].push_back(inc.other);
  return greedy_coloring(adj, degree_bound);
}

}  // namespace treeforge
