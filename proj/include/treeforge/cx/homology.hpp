#pragma once

#include <algorithm>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/gf2.hpp"
#include "treeforge/cx/cell_complex.hpp"

namespace treeforge {

// ── reduced mod-2 homology ──────────────────────────────────────────────────
//
// Returns the reduced Betti numbers over GF(2), one per dimension 0..dim.
// Boundary maps read face incidences mod 2, so a face listed twice cancels.

inline std::vector<int> homology_gf2(const cell_complex& c) {
  check_complex(c);
  require(c.total_cells() <= 100000, errc::too_large,
          "homology supports at most 100000 cells");
  require(c.cells(0) >= 1, errc::bad_params, "empty complex has no reduced homology");

  std::vector<int> rank(c.dim + 2, 0);  // rank[k] = rank of the boundary map C_k -> C_{k-1}
  for (int k = 1; k <= c.dim; ++k) {
    std::vector<gf2_vec> rows;
    rows.reserve(c.cells(k));
    for (int i = 0; i < c.cells(k); ++i) {
      gf2_vec row(c.cells(k - 1));
      std::vector<int> fs = c.faces[k][i];
      std::sort(fs.begin(), fs.end());
      for (std::size_t a = 0; a < fs.size();) {
        std::size_t b = a;
        while (b < fs.size() && fs[b] == fs[a]) ++b;
        if ((b - a) % 2) row.set(fs[a]);
        a = b;
      }
      rows.push_back(std::move(row));
    }
    rank[k] = gf2_rank(std::move(rows));
  }

  std::vector<int> betti(c.dim + 1);
  for (int k = 0; k <= c.dim; ++k) {
    betti[k] = c.cells(k) - rank[k] - rank[k + 1];
    if (k == 0) --betti[k];
    require(betti[k] >= 0, errc::malformed_complex,
            "face incidences do not form a boundary operator");
  }
  return betti;
}

}  // namespace treeforge
