#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/cx/cell_complex.hpp"
#include "treeforge/cx/complex_dual.hpp"
#include "treeforge/forest/extend.hpp"
#include "treeforge/forest/parent_forest.hpp"

namespace treeforge {

// ── oriented forests on the complex dual ────────────────────────────────────
//
// An escape forest assigns each top cell one outgoing dual edge so that every
// forward orbit ends at the virtual vertex.  That is a spanning parent forest
// on the dual whose only admissible root is the virtual vertex, so the usual
// forest invariant suite applies verbatim.

inline void check_escape_forest(const complex_dual& d, const parent_forest& f) {
  forest_check chk = validate_forest(d.g, f, /*require_spanning=*/true);
  require(chk.ok, errc::forest_not_spanning, chk.reason);
}

// Canonical escape forest: every top cell adopts its least-id neighbor one
// step closer to the virtual vertex.
inline parent_forest escape_forest(const complex_dual& d) {
  parent_forest seed(d.g.vertex_count());
  seed.declare_root(d.virtual_vertex);
  return extend_subforest(d.g, {d.virtual_vertex}, seed);
}

// ── carving the forest out of the complex ───────────────────────────────────

// Removes every top cell together with the (d-1)-cell its forest edge
// crosses.  The skeleta of dimension <= d-2 come through untouched; the
// surviving (d-1)-cells are renumbered in ascending order.
inline cell_complex ominus_star_complex(const cell_complex& c, const parent_forest& f) {
  complex_dual d = build_complex_dual(c);
  check_escape_forest(d, f);

  std::vector<char> crossed(c.cells(c.dim - 1), 0);
  for (int v = 0; v < c.cells(c.dim); ++v) crossed[d.edge_cell[f.via(v)]] = 1;

  cell_set keep(c.dim + 1);
  for (int k = 0; k + 2 <= c.dim; ++k) {
    keep[k].resize(c.cells(k));
    for (int i = 0; i < c.cells(k); ++i) keep[k][i] = i;
  }
  for (int s = 0; s < c.cells(c.dim - 1); ++s)
    if (!crossed[s]) keep[c.dim - 1].push_back(s);
  return subcomplex_of(c, keep);
}

// ── back-orbit saturation ───────────────────────────────────────────────────

// Smallest cell set containing `seed` that is closed under taking faces and
// under the forest's back-orbits: a crossed (d-1)-cell pulls in the top cell
// whose outgoing edge crosses it, and a top cell pulls in the crossed cells of
// all forest edges pointing into it.  Monotone and idempotent by construction.
inline cell_set back_orbit_saturate(const cell_complex& c, const parent_forest& f,
                                    const cell_set& seed) {
  complex_dual d = build_complex_dual(c);
  check_escape_forest(d, f);
  const int dd = c.dim;

  std::vector<int> source_of(c.cells(dd - 1), kNone);  // crossed cell -> forest edge source
  std::vector<std::vector<int>> kids(c.cells(dd));     // top cell -> forest children
  for (int v = 0; v < c.cells(dd); ++v) {
    source_of[d.edge_cell[f.via(v)]] = v;
    int p = f.parent(v);
    if (p != d.virtual_vertex) kids[p].push_back(v);
  }

  std::vector<std::vector<char>> in(dd + 1);
  for (int k = 0; k <= dd; ++k) in[k].assign(c.cells(k), 0);
  std::vector<std::pair<int, int>> todo;
  cell_set norm = normalize_cell_set(c, seed);
  for (int k = 0; k <= dd; ++k)
    for (int i : norm[k]) {
      in[k][i] = 1;
      todo.emplace_back(k, i);
    }
  auto push = [&](int k, int i) {
    if (!in[k][i]) {
      in[k][i] = 1;
      todo.emplace_back(k, i);
    }
  };
  while (!todo.empty()) {
    auto [k, i] = todo.back();
    todo.pop_back();
    for (int fc : c.faces[k][i]) push(k - 1, fc);
    if (k == dd - 1 && source_of[i] != kNone) push(dd, source_of[i]);
    if (k == dd)
      for (int u : kids[i]) push(dd - 1, d.edge_cell[f.via(u)]);
  }

  cell_set out(dd + 1);
  for (int k = 0; k <= dd; ++k)
    for (int i = 0; i < c.cells(k); ++i)
      if (in[k][i]) out[k].push_back(i);
  return out;
}

// ── collapse along the forest ───────────────────────────────────────────────

struct collapse_step {
  int top_cell;   // the top cell removed
  int free_face;  // the crossed (d-1)-cell removed with it
};

struct collapse_result {
  std::vector<collapse_step> steps;
  cell_set remainder;
};

// Retracts a saturated cell set by elementary collapses: each step removes a
// top cell together with the (d-1)-cell its forest edge crosses, and that
// cell must be free (no other surviving top cell on it) at removal time.
// Steps pick the least eligible top cell, so the order is deterministic.
// Ends in the set minus all its top cells and crossed cells.
inline collapse_result collapse_retract(const cell_complex& c, const parent_forest& f,
                                        const cell_set& k) {
  complex_dual d = build_complex_dual(c);
  check_escape_forest(d, f);
  const int dd = c.dim;

  cell_set live = normalize_cell_set(c, k);
  require(back_orbit_saturate(c, f, k) == live, errc::not_saturated,
          "cell set is not back-orbit saturated");

  std::vector<std::vector<char>> in(dd + 1);
  for (int kk = 0; kk <= dd; ++kk) {
    in[kk].assign(c.cells(kk), 0);
    for (int i : live[kk]) in[kk][i] = 1;
  }
  std::vector<int> cofaces(c.cells(dd - 1), 0);  // surviving top cells on each (d-1)-cell
  for (int v = 0; v < c.cells(dd); ++v)
    if (in[dd][v])
      for (int s : c.faces[dd][v]) ++cofaces[s];

  collapse_result out;
  int remaining = static_cast<int>(live[dd].size());
  while (remaining > 0) {
    int pick = kNone;
    for (int v : live[dd]) {
      if (!in[dd][v]) continue;
      if (cofaces[d.edge_cell[f.via(v)]] == 1) {
        pick = v;
        break;
      }
    }
    if (pick == kNone) {
      int least = kNone;
      for (int v : live[dd])
        if (in[dd][v]) {
          least = v;
          break;
        }
      fail(errc::stuck_no_free_pair, std::to_string(remaining) +
                                         " top cells remain with no free pair; least is " +
                                         std::to_string(least));
    }
    int s = d.edge_cell[f.via(pick)];
    require(in[dd - 1][s], errc::precondition_violated, "free face already removed");
    require(std::count(c.faces[dd][pick].begin(), c.faces[dd][pick].end(), s) == 1,
            errc::precondition_violated, "free face is not a simple face of its top cell");
    out.steps.push_back({pick, s});
    in[dd][pick] = 0;
    in[dd - 1][s] = 0;
    for (int t : c.faces[dd][pick]) --cofaces[t];
    --remaining;
  }

  out.remainder.assign(dd + 1, {});
  for (int kk = 0; kk <= dd; ++kk)
    for (int i : live[kk])
      if (in[kk][i]) out.remainder[kk].push_back(i);
  return out;
}

}  // namespace treeforge
