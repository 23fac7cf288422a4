#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "treeforge/core/coloring.hpp"
#include "treeforge/core/ends.hpp"
#include "treeforge/core/errors.hpp"
#include "treeforge/forest/parent_forest.hpp"

namespace treeforge {

namespace detail {

struct line_layout {
  std::vector<int> lid;        // line id per alive vertex, -1 for dead
  std::vector<int> pos;        // position along the line
  std::vector<std::vector<vid>> verts;  // verts[l][p] = vertex at position p
};

}  // namespace detail

// Turns a spanning family of lines into a single one-ended spanning forest per
// component.  Rounds of chord contraction: pick shortcut edges whose skipped
// stretch is short on the scale of nearby shortcuts, drain each stretch toward
// the least-id endpoint, and splice the shortcut into the line.  When no round
// can retire a quarter of the remaining line-interior mass, route the leftover
// lines to their least boundary extremity and stitch lines together along
// least-id cross edges.
//
// Preconditions: the edges form vertex-disjoint paths covering every interior
// vertex, each path keeps at least one endpoint on the boundary
// (NotLineForest), and every component with interior reads as one-ended from
// its central probe (NotOneEnded).
inline parent_forest merge_lines(const window& w, const std::vector<eid>& t_edges) {
  const int n = w.vertex_count();

  // ── validate the line family ──
  std::set<eid> tset(t_edges.begin(), t_edges.end());
  require(tset.size() == t_edges.size(), errc::bad_params, "duplicate line edge");
  std::vector<std::vector<std::pair<vid, eid>>> nbr(n);
  for (eid e : t_edges) {
    require(w.has_edge_id(e), errc::bad_params, "unknown edge " + std::to_string(e));
    const auto& ed = w.edge(e);
    nbr[ed.u].push_back({ed.v, e});
    nbr[ed.v].push_back({ed.u, e});
    require(nbr[ed.u].size() <= 2 && nbr[ed.v].size() <= 2, errc::not_line_forest,
            "vertex of line degree three");
  }
  {
    std::vector<int> up(n);
    for (int i = 0; i < n; ++i) up[i] = i;
    auto find = [&](int x) {
      while (up[x] != x) x = up[x] = up[up[x]];
      return x;
    };
    for (eid e : t_edges) {
      const auto& ed = w.edge(e);
      int ru = find(ed.u), rv = find(ed.v);
      require(ru != rv, errc::not_line_forest, "lines contain a cycle");
      up[ru] = rv;
    }
  }
  for (vid v = 0; v < n; ++v)
    require(!nbr[v].empty() || w.boundary(v), errc::not_line_forest,
            "interior vertex " + std::to_string(v) + " lies on no line");

  // ── one-ended gate per component ──
  std::vector<int> comp = w.component_labels();
  for (int c = 0; c < w.component_count(); ++c) {
    vid center = kNone;
    int best_ecc = -1;
    for (vid v : w.interior_vertices()) {
      if (comp[v] != c) continue;
      int ecc = w.eccentricity(v);
      if (center == kNone || ecc < best_ecc) {
        center = v;
        best_ecc = ecc;
      }
    }
    if (center == kNone) continue;  // all-boundary component
    end_class label = classify_ends(w, center).label;
    require(label == end_class::one, errc::not_one_ended,
            "component " + std::to_string(c) + " is not one-ended from its center");
  }

  std::vector<char> alive(n, 1);

  // Lays out the alive lines, walking each from its least-id extremity.
  auto layout_lines = [&]() {
    detail::line_layout lay;
    lay.lid.assign(n, -1);
    lay.pos.assign(n, 0);
    for (vid v = 0; v < n; ++v) {
      if (!alive[v] || lay.lid[v] >= 0 || nbr[v].size() == 2) continue;
      int l = static_cast<int>(lay.verts.size());
      lay.verts.push_back({});
      vid prev = kNone, cur = v;
      while (cur != kNone) {
        lay.lid[cur] = l;
        lay.pos[cur] = static_cast<int>(lay.verts[l].size());
        lay.verts[l].push_back(cur);
        vid next = kNone;
        for (const auto& [other, via] : nbr[cur])
          if (other != prev) next = other;
        prev = cur;
        cur = next;
      }
    }
    return lay;
  };

  auto via_between = [&](vid a, vid b) -> eid {
    for (const auto& [other, via] : nbr[a])
      if (other == b) return via;
    fail(errc::precondition_violated, "line structure lost an edge");
  };

  parent_forest f(n);
  int round = 0;

  // ── contraction rounds ──
  while (true) {
    detail::line_layout lay = layout_lines();

    int line_interior = 0;
    for (vid v = 0; v < n; ++v)
      if (alive[v] && nbr[v].size() == 2) ++line_interior;
    if (line_interior == 0) break;

    struct chord {
      eid e;
      int lid, lo, hi, span;  // span = hi - lo - 1 skipped vertices
      int threshold = 0;      // max(span, busiest nearby span)
    };
    std::vector<chord> chords;
    std::vector<int> busiest(n, 0);  // per vertex, widest chord span touching it
    for (const auto& ed : w.edges()) {
      if (!alive[ed.u] || !alive[ed.v] || lay.lid[ed.u] != lay.lid[ed.v]) continue;
      int lo = std::min(lay.pos[ed.u], lay.pos[ed.v]);
      int hi = std::max(lay.pos[ed.u], lay.pos[ed.v]);
      if (hi - lo < 2) continue;  // line edge, splice copy, or empty stretch
      chords.push_back({ed.id, lay.lid[ed.u], lo, hi, hi - lo - 1, 0});
      busiest[ed.u] = std::max(busiest[ed.u], hi - lo - 1);
      busiest[ed.v] = std::max(busiest[ed.v], hi - lo - 1);
    }
    if (chords.empty()) break;
    for (auto& ch : chords) {
      ch.threshold = ch.span;
      for (int p = ch.lo + 1; p < ch.hi; ++p)
        ch.threshold = std::max(ch.threshold, busiest[lay.verts[ch.lid][p]]);
    }

    // smallest level whose chords blanket a quarter of the line interior
    std::vector<int> levels;
    for (const auto& ch : chords) levels.push_back(ch.threshold);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<char> covered(n, 0);
    int coverage = 0, picked_level = -1;
    std::vector<int> order(chords.size());
    for (size_t i = 0; i < chords.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return chords[a].threshold < chords[b].threshold; });
    size_t consumed = 0;
    for (int lv : levels) {
      while (consumed < order.size() && chords[order[consumed]].threshold <= lv) {
        const chord& ch = chords[order[consumed]];
        for (int p = ch.lo + 1; p < ch.hi; ++p) {
          vid x = lay.verts[ch.lid][p];
          if (!covered[x]) {
            covered[x] = 1;
            ++coverage;
          }
        }
        ++consumed;
      }
      if (4 * coverage >= line_interior) {
        picked_level = lv;
        break;
      }
    }
    if (picked_level < 0) break;  // no level blankets enough: stop contracting

    std::vector<int> sel;
    for (size_t i = 0; i < chords.size(); ++i)
      if (chords[i].threshold <= picked_level) sel.push_back(static_cast<int>(i));

    // conflict graph on closed stretches, greedy-colored in edge-id order
    std::vector<std::vector<int>> conflict(sel.size());
    for (size_t i = 0; i < sel.size(); ++i)
      for (size_t j = i + 1; j < sel.size(); ++j) {
        const chord &a = chords[sel[i]], &b = chords[sel[j]];
        if (a.lid == b.lid && std::max(a.lo, b.lo) <= std::min(a.hi, b.hi)) {
          conflict[i].push_back(static_cast<int>(j));
          conflict[j].push_back(static_cast<int>(i));
        }
      }
    int max_deg = 0;
    for (const auto& row : conflict) max_deg = std::max(max_deg, static_cast<int>(row.size()));
    std::vector<int> color = greedy_coloring(conflict, max_deg);

    std::map<int, long long> mass;
    for (size_t i = 0; i < sel.size(); ++i) mass[color[i]] += chords[sel[i]].span;
    int best_color = 0;
    long long best_mass = -1;
    for (const auto& [c, m] : mass)
      if (m > best_mass) {
        best_color = c;
        best_mass = m;
      }

    // drain each chosen stretch toward the least-id chord endpoint, splice
    for (size_t i = 0; i < sel.size(); ++i) {
      if (color[i] != best_color) continue;
      const chord& ch = chords[sel[i]];
      const std::vector<vid>& line = lay.verts[ch.lid];
      vid u = line[ch.lo], v = line[ch.hi];
      bool toward_lo = u < v;
      for (int p = ch.lo + 1; p < ch.hi; ++p) {
        vid x = line[p];
        vid par = toward_lo ? line[p - 1] : line[p + 1];
        f.set_parent(x, par, via_between(x, par), round);
        alive[x] = 0;
      }
      auto splice = [&](vid endpoint, vid dead_side, vid other_end) {
        for (auto& entry : nbr[endpoint])
          if (entry.first == dead_side) {
            entry = {other_end, ch.e};
            return;
          }
        fail(errc::precondition_violated, "splice lost its seam");
      };
      splice(u, line[ch.lo + 1], v);
      splice(v, line[ch.hi - 1], u);
    }
    ++round;
  }

  // ── route leftover lines to their least boundary extremity ──
  detail::line_layout lay = layout_lines();
  for (const auto& line : lay.verts) {
    std::vector<vid> bdry_ext;
    if (line.size() == 1) {
      require(w.boundary(line[0]), errc::not_line_forest, "stranded interior vertex");
      f.declare_root(line[0]);
      continue;
    }
    if (w.boundary(line.front())) bdry_ext.push_back(line.front());
    if (w.boundary(line.back())) bdry_ext.push_back(line.back());
    require(!bdry_ext.empty(), errc::not_line_forest,
            "line never touches the boundary");
    vid root = *std::min_element(bdry_ext.begin(), bdry_ext.end());
    bool root_front = (root == line.front());
    f.declare_root(root);
    for (size_t p = 0; p < line.size(); ++p) {
      vid x = line[p];
      if (x == root) continue;
      vid par = root_front ? line[p - 1] : line[p + 1];
      f.set_parent(x, par, via_between(x, par), round);
    }
  }

  // ── stitch the line trees together along least-id cross edges ──
  std::vector<int> up(n);
  std::vector<vid> tree_root(n);
  for (int i = 0; i < n; ++i) up[i] = i;
  auto find = [&](int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  for (vid v = 0; v < n; ++v)
    if (f.member(v) && f.has_parent(v)) {
      int rv = find(v), rp = find(f.parent(v));
      if (rv != rp) up[rv] = rp;
    }
  for (vid v = 0; v < n; ++v)
    if (f.member(v) && !f.has_parent(v)) tree_root[find(v)] = v;

  auto reroot = [&](vid x) {
    // reverse the parent chain above x; tags along it are no longer layered
    vid cur = x;
    vid prev = kNone;
    eid prev_via = kNone;
    while (true) {
      bool had = f.has_parent(cur);
      vid nxt = had ? f.parent(cur) : kNone;
      eid nxt_via = had ? f.via(cur) : kNone;
      if (prev == kNone)
        f.clear_parent(cur);
      else
        f.set_parent(cur, prev, prev_via, kNone);
      f.set_layer(cur, kNone);
      if (!had) break;
      prev = cur;
      prev_via = nxt_via;
      cur = nxt;
    }
  };

  for (const auto& ed : w.edges()) {
    int ru = find(ed.u), rv = find(ed.v);
    if (ru == rv) continue;
    vid root_u = tree_root[ru], root_v = tree_root[rv];
    vid graft = (root_u < root_v) ? ed.v : ed.u;   // larger-rooted tree hooks under
    vid anchor = (root_u < root_v) ? ed.u : ed.v;
    reroot(graft);
    f.set_parent(graft, anchor, ed.id, kNone);
    int keep = (root_u < root_v) ? ru : rv;
    int lose = (root_u < root_v) ? rv : ru;
    up[lose] = keep;
    tree_root[find(keep)] = (root_u < root_v) ? root_u : root_v;
  }

  forest_check chk = validate_forest(w, f, /*require_spanning=*/true);
  require(chk.ok, errc::precondition_violated, "merged forest invalid: " + chk.reason);
  return f;
}

}  // namespace treeforge
