#pragma once

#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"

namespace treeforge {

enum class end_class { finite, one, two, many };

inline const char* end_class_name(end_class c) {
  switch (c) {
    case end_class::finite: return "finite";
    case end_class::one:    return "one";
    case end_class::two:    return "two";
    case end_class::many:   return "many";
  }
  return "?";
}

struct ends_report {
  end_class label;
  std::vector<int> escape_counts;  // boundary-touching components after deleting B_k, k = 1..k_max
};

// Desk-scale end counting: delete balls B_k(center) for k = 1..floor(ecc/3)
// and count components that still touch the window boundary.  The label is
// read off the last count; with >= 2 data points the last two must agree,
// otherwise the count is still growing and we refuse to certify (many).
// A component with no boundary vertex at all is finite.
inline ends_report classify_ends(const window& w, vid center) {
  require(center >= 0 && center < w.vertex_count(), errc::bad_params, "center out of range");
  require(!w.boundary(center), errc::center_on_boundary,
          "center " + std::to_string(center) + " is a boundary vertex");

  std::vector<int> dist = w.bfs_distances(center);
  bool any_boundary = false;
  for (vid v = 0; v < w.vertex_count(); ++v)
    if (dist[v] != kNone && w.boundary(v)) any_boundary = true;
  if (!any_boundary) return {end_class::finite, {}};

  int ecc = 0;
  for (int d : dist) ecc = std::max(ecc, d);
  int k_max = std::max(1, ecc / 3);

  ends_report rep;
  for (int k = 1; k <= k_max; ++k) {
    // Components of the graph minus B_k(center), counted when boundary-touching.
    std::vector<char> alive(w.vertex_count(), 0);
    for (vid v = 0; v < w.vertex_count(); ++v)
      if (dist[v] != kNone && dist[v] > k) alive[v] = 1;
    window rest = w.induced_same_ids(alive);
    int escapes = 0;
    for (const auto& comp : rest.components()) {
      if (!alive[comp.front()]) continue;  // isolated placeholder outside the ball
      bool touches = false;
      for (vid v : comp)
        if (w.boundary(v)) touches = true;
      if (touches) ++escapes;
    }
    rep.escape_counts.push_back(escapes);
  }

  int last = rep.escape_counts.back();
  bool stable = rep.escape_counts.size() < 2 ||
                rep.escape_counts[rep.escape_counts.size() - 2] == last;
  if (!stable) {
    rep.label = end_class::many;
  } else if (last == 1) {
    rep.label = end_class::one;
  } else if (last == 2) {
    rep.label = end_class::two;
  } else {
    rep.label = end_class::many;  // 0 or >= 3: no certified end count
  }
  return rep;
}

}  // namespace treeforge
