#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"
#include "treeforge/cx/cell_complex.hpp"
#include "treeforge/cx/complex_dual.hpp"

namespace treeforge {

// ── growth comparison between a complex dual and a group window ─────────────
//
// Compares cumulative BFS ball sizes of the complex's dual graph (virtual
// vertex removed) against a reference window.  The two growth sequences are
// declared sandwiched when some integer radius rescaling lambda makes
//   g1(r) <= C * g2(lambda*r + lambda)   and   g2(r) <= C * g1(lambda*r + lambda)
// hold over the whole comparable range with a modest C.  Graphs of genuinely
// different growth type drive C up with the radius, so no small lambda saves
// them once the balls are deep enough.

struct qi_params {
  int dual_center = 0;    // top cell the dual ball grows from
  int window_center = 0;  // window vertex the reference ball grows from
  double c_max = 8.0;     // largest constant still counted as a sandwich
  int lambda_max = 4;     // radius rescalings tried, 1..lambda_max
};

struct qi_report {
  std::vector<long long> dual_growth;
  std::vector<long long> window_growth;
  int lambda = 0;      // rescaling with the best fit, 0 when none is feasible
  double c_fit = 0;    // smallest constant over the tried rescalings
  bool sandwiched = false;
};

namespace detail {

inline std::vector<long long> ball_growth(const window& w, int center) {
  require(center >= 0 && center < w.vertex_count(), errc::bad_params, "center out of range");
  require(w.component_count() == 1, errc::bad_params, "growth needs a connected graph");
  std::vector<int> dist = w.bfs_distances(center);
  int radius = *std::max_element(dist.begin(), dist.end());
  std::vector<long long> g(radius + 1, 0);
  for (int dv : dist) ++g[dv];
  for (int r = 1; r <= radius; ++r) g[r] += g[r - 1];
  return g;
}

// Largest ratio g1(r) / g2(lambda*r + lambda) over the comparable range, or
// infinity when the range is empty.
inline double growth_ratio(const std::vector<long long>& g1, const std::vector<long long>& g2,
                           int lambda) {
  int r1 = static_cast<int>(g1.size()) - 1;
  int r2 = static_cast<int>(g2.size()) - 1;
  int top = std::min(r1, (r2 - lambda) / lambda);
  if (top < 0) return std::numeric_limits<double>::infinity();
  double worst = 0;
  for (int r = 0; r <= top; ++r)
    worst = std::max(worst, static_cast<double>(g1[r]) / static_cast<double>(g2[lambda * r + lambda]));
  return worst;
}

}  // namespace detail

inline qi_report dual_qi_check(const cell_complex& c, const window& w, const qi_params& p = {}) {
  complex_dual d = build_complex_dual(c);
  require(p.dual_center >= 0 && p.dual_center < c.cells(c.dim), errc::bad_params,
          "dual center is not a top cell");
  window real(c.cells(c.dim));
  for (int e = 0; e < d.g.edge_count(); ++e) {
    const auto& ed = d.g.edge(e);
    if (ed.u != d.virtual_vertex && ed.v != d.virtual_vertex) real.add_edge(ed.u, ed.v);
  }

  qi_report rep;
  rep.dual_growth = detail::ball_growth(real, p.dual_center);
  rep.window_growth = detail::ball_growth(w, p.window_center);
  rep.c_fit = std::numeric_limits<double>::infinity();
  require(p.lambda_max >= 1, errc::bad_params, "need at least one rescaling");
  for (int lam = 1; lam <= p.lambda_max; ++lam) {
    double c = std::max(detail::growth_ratio(rep.dual_growth, rep.window_growth, lam),
                        detail::growth_ratio(rep.window_growth, rep.dual_growth, lam));
    c = std::max(c, 1.0);
    if (c < rep.c_fit) {
      rep.c_fit = c;
      rep.lambda = lam;
    }
  }
  rep.sandwiched = rep.c_fit <= p.c_max;
  return rep;
}

}  // namespace treeforge
