#pragma once

#include <algorithm>
#include <vector>

#include "treeforge/core/window.hpp"

namespace treeforge {

// Biconnected components as edge-id lists (bridges are single-edge blocks).
// Iterative lowlink DFS; deterministic through ascending-eid adjacency.
inline std::vector<std::vector<eid>> biconnected_blocks(const window& w) {
  const int n = w.vertex_count();
  std::vector<int> disc(n, kNone), low(n, 0);
  std::vector<std::vector<eid>> blocks;
  std::vector<eid> estack;
  int time = 0;

  struct frame {
    vid v;
    eid in_edge;
    std::size_t next = 0;
  };

  for (vid root = 0; root < n; ++root) {
    if (disc[root] != kNone) continue;
    std::vector<frame> stack = {{root, kNone}};
    disc[root] = low[root] = time++;
    while (!stack.empty()) {
      frame& f = stack.back();
      const auto& inc = w.incident(f.v);
      if (f.next < inc.size()) {
        auto [e, other] = inc[f.next++];
        if (e == f.in_edge) continue;
        if (disc[other] == kNone) {
          estack.push_back(e);
          disc[other] = low[other] = time++;
          stack.push_back({other, e});
        } else if (disc[other] < disc[f.v]) {
          estack.push_back(e);
          low[f.v] = std::min(low[f.v], disc[other]);
        }
      } else {
        stack.pop_back();
        if (stack.empty()) continue;
        frame& p = stack.back();
        low[p.v] = std::min(low[p.v], low[f.v]);
        if (low[f.v] >= disc[p.v]) {
          // p.v is a cut vertex (or the root): pop one block
          std::vector<eid> blk;
          while (!estack.empty()) {
            eid e = estack.back();
            estack.pop_back();
            blk.push_back(e);
            if (e == f.in_edge) break;
          }
          std::sort(blk.begin(), blk.end());
          blocks.push_back(std::move(blk));
        }
      }
    }
  }
  // Deterministic order: by least edge id.
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return blocks;
}

}  // namespace treeforge
