#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"

namespace treeforge {

// ── cell complexes ──────────────────────────────────────────────────────────
//
// A finite cell complex given purely combinatorially: cells of each dimension
// are numbered densely, and every k-cell (k >= 1) lists the (k-1)-cells in its
// boundary.  Incidences may repeat (boundaries are read mod 2), vertices list
// nothing.  This is the input shape for the dual/forest/collapse pipeline; it
// makes no smoothness or simpliciality promises.

struct cell_complex {
  int dim = 0;
  // faces[k][i] holds the (k-1)-cell ids bounding cell i of dimension k.
  std::vector<std::vector<std::vector<int>>> faces;

  int cells(int k) const {
    return (k >= 0 && k <= dim) ? static_cast<int>(faces[k].size()) : 0;
  }
  long long total_cells() const {
    long long t = 0;
    for (int k = 0; k <= dim; ++k) t += cells(k);
    return t;
  }
};

// A set of cells, one sorted id list per dimension.  Always sized dim+1 when
// produced by operations here; shorter vectors are accepted on input.
using cell_set = std::vector<std::vector<int>>;

inline void check_complex(const cell_complex& c) {
  require(c.dim >= 0, errc::malformed_complex, "negative dimension");
  require(static_cast<int>(c.faces.size()) == c.dim + 1, errc::malformed_complex,
          "face table does not cover dimensions 0.." + std::to_string(c.dim));
  for (const auto& v : c.faces[0])
    require(v.empty(), errc::malformed_complex, "vertex with a boundary list");
  for (int k = 1; k <= c.dim; ++k)
    for (int i = 0; i < c.cells(k); ++i) {
      require(!c.faces[k][i].empty(), errc::malformed_complex,
              "cell (" + std::to_string(k) + "," + std::to_string(i) + ") has no faces");
      for (int f : c.faces[k][i])
        require(f >= 0 && f < c.cells(k - 1), errc::malformed_complex,
                "cell (" + std::to_string(k) + "," + std::to_string(i) + ") lists face " +
                    std::to_string(f) + " outside dimension " + std::to_string(k - 1));
    }
}

// Normalizes a cell set against a complex: pads to dim+1 lists, sorts,
// deduplicates, and range-checks the ids.
inline cell_set normalize_cell_set(const cell_complex& c, const cell_set& s) {
  require(static_cast<int>(s.size()) <= c.dim + 1, errc::bad_params,
          "cell set mentions dimensions above the complex");
  cell_set out(c.dim + 1);
  for (int k = 0; k < static_cast<int>(s.size()); ++k) {
    out[k] = s[k];
    std::sort(out[k].begin(), out[k].end());
    out[k].erase(std::unique(out[k].begin(), out[k].end()), out[k].end());
    for (int i : out[k])
      require(i >= 0 && i < c.cells(k), errc::bad_params,
              "cell set id " + std::to_string(i) + " outside dimension " + std::to_string(k));
  }
  return out;
}

// Extracts a face-closed cell set as its own complex.  Ids are renumbered
// densely per dimension (in ascending order of the old ids) and trailing empty
// dimensions are dropped, so the result's top cells are the set's top cells.
inline cell_complex subcomplex_of(const cell_complex& c, const cell_set& s) {
  check_complex(c);
  cell_set keep = normalize_cell_set(c, s);
  std::vector<std::vector<int>> new_id(c.dim + 1);
  for (int k = 0; k <= c.dim; ++k) {
    new_id[k].assign(c.cells(k), kNone);
    for (int i = 0; i < static_cast<int>(keep[k].size()); ++i) new_id[k][keep[k][i]] = i;
  }
  cell_complex out;
  out.dim = 0;
  for (int k = c.dim; k >= 1; --k)
    if (!keep[k].empty()) {
      out.dim = k;
      break;
    }
  out.faces.resize(out.dim + 1);
  for (int k = 0; k <= out.dim; ++k)
    for (int i : keep[k]) {
      std::vector<int> fs;
      fs.reserve(c.faces[k][i].size());
      for (int f : c.faces[k][i]) {  // empty for k == 0
        require(new_id[k - 1][f] != kNone, errc::bad_params, "cell set is not closed under faces");
        fs.push_back(new_id[k - 1][f]);
      }
      out.faces[k].push_back(std::move(fs));
    }
  return out;
}

// ── simplicial builders ─────────────────────────────────────────────────────

// 2-complex from triangle vertex triples; edges are derived and numbered in
// lexicographic order of their sorted endpoint pairs.
inline cell_complex complex_from_triangles(int nverts, const std::vector<std::array<int, 3>>& tris) {
  require(nverts >= 0, errc::bad_params, "negative vertex count");
  std::map<std::pair<int, int>, int> edge_id;
  for (const auto& t : tris) {
    for (int v : t) require(v >= 0 && v < nverts, errc::bad_params, "triangle vertex out of range");
    require(t[0] != t[1] && t[0] != t[2] && t[1] != t[2], errc::bad_params,
            "degenerate triangle");
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        edge_id.emplace(std::pair<int, int>{std::min(t[a], t[b]), std::max(t[a], t[b])}, 0);
  }
  int next = 0;
  for (auto& [pr, id] : edge_id) id = next++;

  cell_complex c;
  c.dim = 2;
  c.faces.resize(3);
  c.faces[0].resize(nverts);
  c.faces[1].resize(edge_id.size());
  for (const auto& [pr, id] : edge_id) c.faces[1][id] = {pr.first, pr.second};
  for (const auto& t : tris) {
    std::vector<int> es;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        es.push_back(edge_id.at({std::min(t[a], t[b]), std::max(t[a], t[b])}));
    std::sort(es.begin(), es.end());
    c.faces[2].push_back(std::move(es));
  }
  return c;
}

// 3-complex from tetrahedron vertex quadruples; triangles and edges are
// derived the same way.
inline cell_complex complex_from_tetrahedra(int nverts, const std::vector<std::array<int, 4>>& tets) {
  require(nverts >= 0, errc::bad_params, "negative vertex count");
  std::map<std::pair<int, int>, int> edge_id;
  std::map<std::array<int, 3>, int> tri_id;
  for (const auto& t : tets) {
    for (int v : t) require(v >= 0 && v < nverts, errc::bad_params, "tetrahedron vertex out of range");
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        require(t[a] != t[b], errc::bad_params, "degenerate tetrahedron");
        edge_id.emplace(std::pair<int, int>{std::min(t[a], t[b]), std::max(t[a], t[b])}, 0);
      }
    for (int skip = 0; skip < 4; ++skip) {
      std::array<int, 3> tri{};
      int at = 0;
      for (int a = 0; a < 4; ++a)
        if (a != skip) tri[at++] = t[a];
      std::sort(tri.begin(), tri.end());
      tri_id.emplace(tri, 0);
    }
  }
  int next = 0;
  for (auto& [pr, id] : edge_id) id = next++;
  next = 0;
  for (auto& [tr, id] : tri_id) id = next++;

  cell_complex c;
  c.dim = 3;
  c.faces.resize(4);
  c.faces[0].resize(nverts);
  c.faces[1].resize(edge_id.size());
  for (const auto& [pr, id] : edge_id) c.faces[1][id] = {pr.first, pr.second};
  c.faces[2].resize(tri_id.size());
  for (const auto& [tr, id] : tri_id) {
    std::vector<int> es;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        es.push_back(edge_id.at({std::min(tr[a], tr[b]), std::max(tr[a], tr[b])}));
    std::sort(es.begin(), es.end());
    c.faces[2][id] = std::move(es);
  }
  for (const auto& t : tets) {
    std::vector<int> ts;
    for (int skip = 0; skip < 4; ++skip) {
      std::array<int, 3> tri{};
      int at = 0;
      for (int a = 0; a < 4; ++a)
        if (a != skip) tri[at++] = t[a];
      std::sort(tri.begin(), tri.end());
      ts.push_back(tri_id.at(tri));
    }
    std::sort(ts.begin(), ts.end());
    c.faces[3].push_back(std::move(ts));
  }
  return c;
}

}  // namespace treeforge
