#pragma once

#include <string>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"
#include "treeforge/cx/cell_complex.hpp"

namespace treeforge {

// ── dual graph of a top-dimensional cell packing ────────────────────────────
//
// Vertex v < cells(d) stands for top cell v; one extra boundary-flagged
// vertex stands for infinity.  Every (d-1)-cell contributes exactly one edge:
// between the two top cells sharing it, or to the virtual vertex when it lies
// on only one.  Edge ids run in (d-1)-cell order, so the dual degree of a top
// cell equals its face count.

struct complex_dual {
  window g;
  int virtual_vertex = kNone;
  std::vector<int> edge_cell;  // dual edge id -> the (d-1)-cell it crosses
};

inline complex_dual build_complex_dual(const cell_complex& c) {
  check_complex(c);
  require(c.dim >= 1, errc::malformed_complex, "dual needs top dimension >= 1");
  const int d = c.dim;

  std::vector<std::vector<int>> above(c.cells(d - 1));
  for (int v = 0; v < c.cells(d); ++v)
    for (int s : c.faces[d][v]) above[s].push_back(v);

  complex_dual out;
  out.g = window(c.cells(d));
  out.virtual_vertex = out.g.add_vertex(/*boundary=*/true);
  for (int s = 0; s < c.cells(d - 1); ++s) {
    const auto& up = above[s];
    if (up.size() == 1) {
      out.g.add_edge(up[0], out.virtual_vertex);
    } else if (up.size() == 2) {
      require(up[0] != up[1], errc::malformed_complex,
              "cell " + std::to_string(s) + " glued twice to the same top cell");
      out.g.add_edge(up[0], up[1]);
    } else {
      fail(errc::malformed_complex, "cell " + std::to_string(s) + " bounds " +
                                        std::to_string(up.size()) + " top cells, want 1 or 2");
    }
    out.edge_cell.push_back(s);
  }
  return out;
}

}  // namespace treeforge
