#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/gf2.hpp"
#include "treeforge/core/window.hpp"
#include "treeforge/hyp/geometry.hpp"
#include "treeforge/planar/embedding.hpp"
#include "treeforge/planar/treeing.hpp"
#include "treeforge/planar/two_basis.hpp"

namespace treeforge {

// One Dirichlet cell, clipped to the R-window.  Corners are in Klein
// coordinates (where the cell is the intersection of bisector halfplanes and
// hence convex); side i runs from corners[i] to corners[i + 1], and
// arc_after[i] marks the sides that follow the window circle instead of a
// bisector chord.
struct hcell {
  std::vector<vec2> corners;
  std::vector<char> arc_after;
  bool rim = false;
  double area = 0.0;
};

// Dirichlet tessellation of a site set inside the hyperbolic R-disk: the cell
// polygons, the Delaunay dual window (one vertex per site, rim cells
// boundary-flagged), and the tessellation corners with their dual 3-cycles.
struct htiling {
  double R = 0.0;
  std::vector<hpoint> sites;
  window dual;
  std::vector<std::array<int, 3>> corner_sites;  // ascending site triples
  std::vector<cycle_edges> corner_basis;         // dual edges around each corner
  std::vector<hcell> cells;
  double window_area = 0.0;
};

namespace detail {

// ── exact predicates on grid-snapped coordinates ────────────────────────────
//
// Poincaré coordinates are snapped to a 2^20 grid before any incidence
// decision.  On grid points, orientation and in-circle determinants fit
// __int128 exactly (coordinates stay below 2^26 including the bounding
// triangle, so in-circle terms stay below 2^106), which removes every
// floating-point tie at the source.  Remaining exact ties are broken by a
// first-order symbolic perturbation of the paraboloid lift, ordered by site
// index, so the triangulation is a deterministic function of the input order.

using i128 = __int128;

struct ipt {
  long long x = 0, y = 0;
  int idx = 0;  // perturbation rank; bounding-triangle corners sit below all sites
};

inline long long snap_coord(double v) { return std::llround(v * 1048576.0); }

inline i128 orient_det(const ipt& a, const ipt& b, const ipt& c) {
  const i128 ux = b.x - a.x, uy = b.y - a.y;
  const i128 vx = c.x - a.x, vy = c.y - a.y;
  return ux * vy - uy * vx;
}

inline int sign_of(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Sign of the in-circle determinant with rows (a, b, c, p): positive exactly
// when p lies inside the circumcircle of the counterclockwise triangle
// (a, b, c).  Never returns 0: on exact ties the lift of the lowest-index
// point is lowered first, and the first nonzero cofactor decides.
inline int incircle_sign(const ipt& a, const ipt& b, const ipt& c, const ipt& p) {
  const i128 ax = a.x - p.x, ay = a.y - p.y;
  const i128 bx = b.x - p.x, by = b.y - p.y;
  const i128 cx = c.x - p.x, cy = c.y - p.y;
  const i128 la = ax * ax + ay * ay;
  const i128 lb = bx * bx + by * by;
  const i128 lc = cx * cx + cy * cy;
  const i128 det = ax * (by * lc - cy * lb) - ay * (bx * lc - cx * lb) +
                   la * (bx * cy - by * cx);
  if (det != 0) return sign_of(det);

  const ipt* rows[4] = {&a, &b, &c, &p};
  int order[4] = {0, 1, 2, 3};
  std::sort(order, order + 4, [&](int i, int j) { return rows[i]->idx < rows[j]->idx; });
  for (int r : order) {
    const ipt* rest[3];
    for (int i = 0, k = 0; i < 4; ++i)
      if (i != r) rest[k++] = rows[i];
    const i128 minor = orient_det(*rest[0], *rest[1], *rest[2]);
    if (minor == 0) continue;
    const int cofactor_sign = ((r + 1) + 3) % 2 == 0 ? 1 : -1;  // (-1)^(row+col), 1-based
    return -cofactor_sign * sign_of(minor);
  }
  fail(errc::degenerate_sites, "four-fold collinear degeneracy in the in-circle test");
}

// ── incremental Delaunay on the snapped sites ───────────────────────────────

// Bowyer-Watson with a bounding triangle far outside the unit disk.  For each
// site the "cavity" of triangles whose circumcircle contains it is carved out
// and re-fanned; with exact never-zero predicates the cavity is well defined
// and the result is the Delaunay triangulation of the perturbed sites.
// Returns ascending site triples in lexicographic order.
inline std::vector<std::array<int, 3>> delaunay_triangles(const std::vector<ipt>& sites) {
  const int n = static_cast<int>(sites.size());
  std::vector<ipt> pts = sites;
  const long long g = 1 << 20;
  pts.push_back({-24 * g, -17 * g, -3});
  pts.push_back({24 * g, -17 * g, -2});
  pts.push_back({0, 24 * g, -1});

  struct tri {
    int v[3];
    bool alive = true;
  };
  std::vector<tri> tris;
  tris.push_back({{n, n + 1, n + 2}, true});

  for (int s = 0; s < n; ++s) {
    std::vector<int> bad;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t)
      if (tris[t].alive &&
          incircle_sign(pts[tris[t].v[0]], pts[tris[t].v[1]], pts[tris[t].v[2]],
                        pts[s]) > 0)
        bad.push_back(t);
    require(!bad.empty(), errc::degenerate_sites, "site escaped the bounding triangle");

    std::set<std::pair<int, int>> walls;
    for (int t : bad)
      for (int i = 0; i < 3; ++i)
        walls.emplace(tris[t].v[i], tris[t].v[(i + 1) % 3]);
    for (int t : bad) tris[t].alive = false;
    for (const auto& [u, v] : walls) {
      if (walls.count({v, u})) continue;  // interior wall of the cavity
      tris.push_back({{u, v, s}, true});
    }
  }

  std::vector<std::array<int, 3>> out;
  for (const tri& t : tris) {
    if (!t.alive || t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
    std::array<int, 3> f{t.v[0], t.v[1], t.v[2]};
    std::sort(f.begin(), f.end());
    out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ── convex clipping in the Klein disk ───────────────────────────────────────

inline double kdot(cplx u, cplx v) { return u.real() * v.real() + u.imag() * v.imag(); }

// Sutherland-Hodgman halfplane clip, keeping kdot(x, nrm) >= c.
inline void clip_halfplane(std::vector<cplx>& poly, cplx nrm, double c) {
  if (poly.empty()) return;
  std::vector<cplx> out;
  const int m = static_cast<int>(poly.size());
  for (int i = 0; i < m; ++i) {
    const cplx a = poly[i], b = poly[(i + 1) % m];
    const double sa = kdot(a, nrm) - c, sb = kdot(b, nrm) - c;
    if (sa >= -1e-13) out.push_back(a);
    if ((sa > 1e-13 && sb < -1e-13) || (sa < -1e-13 && sb > 1e-13))
      out.push_back(a + (sa / (sa - sb)) * (b - a));
  }
  poly = std::move(out);
}

struct circle_clip {
  std::vector<cplx> pts;
  std::vector<char> arc_after;
  bool clipped_any = false;
};

// Intersection of a convex counterclockwise polygon with the disk of the
// given radius about the origin.  Output sides alternate between polygon
// chords and counterclockwise circle arcs; a polygon strictly containing the
// disk comes back as a four-point full circle.
inline circle_clip clip_to_circle(const std::vector<cplx>& poly, double rad) {
  circle_clip out;
  const int m = static_cast<int>(poly.size());
  if (m == 0) return out;
  const double r2 = rad * rad * (1.0 + 1e-12);

  enum class kind { corner, enter, leave };
  std::vector<std::pair<cplx, kind>> seq;
  bool any_inside = false;
  for (int i = 0; i < m; ++i) {
    const cplx a = poly[i], b = poly[(i + 1) % m];
    const bool ina = std::norm(a) <= r2, inb = std::norm(b) <= r2;
    any_inside = any_inside || ina;
    if (ina) seq.emplace_back(a, kind::corner);
    if (ina && inb) continue;  // chord fully inside the disk
    const cplx d = b - a;
    const double qa = std::norm(d), qb = kdot(a, d), qc = std::norm(a) - rad * rad;
    const double disc = qb * qb - qa * qc;
    if (disc <= 1e-18 || qa == 0.0) continue;
    const double root = std::sqrt(disc);
    const double t_in = (-qb - root) / qa, t_out = (-qb + root) / qa;
    if (ina && !inb) {
      seq.emplace_back(a + t_out * d, kind::leave);
    } else if (!ina && inb) {
      seq.emplace_back(a + t_in * d, kind::enter);
    } else if (t_in > 1e-12 && t_out < 1.0 - 1e-12 && t_in < t_out) {
      seq.emplace_back(a + t_in * d, kind::enter);
      seq.emplace_back(a + t_out * d, kind::leave);
    }
  }

  if (seq.empty()) {
    out.clipped_any = true;
    if (!any_inside) {  // polygon strictly contains the disk: the cell is the full window
      for (int k = 0; k < 4; ++k) {
        out.pts.push_back(std::polar(rad, k * pi / 2.0));
        out.arc_after.push_back(1);
      }
    }
    return out;
  }

  for (const auto& [p, what] : seq) {
    out.pts.push_back(p);
    out.arc_after.push_back(what == kind::leave);
    out.clipped_any = out.clipped_any || what != kind::corner;
  }

  // A corner exactly on the circle duplicates its crossing point; drop the
  // zero-length chords that would poison the angle bookkeeping downstream.
  std::vector<cplx> pts;
  std::vector<char> arcs;
  const int s = static_cast<int>(out.pts.size());
  for (int i = 0; i < s; ++i) {
    if (!pts.empty() && std::abs(out.pts[i] - pts.back()) < 1e-12) {
      arcs.back() = out.arc_after[i];
      continue;
    }
    pts.push_back(out.pts[i]);
    arcs.push_back(out.arc_after[i]);
  }
  while (pts.size() > 1 && std::abs(pts.front() - pts.back()) < 1e-12) {
    pts.pop_back();
    arcs.pop_back();
  }
  out.pts = std::move(pts);
  out.arc_after = std::move(arcs);
  return out;
}

// ── hyperbolic polygon area ─────────────────────────────────────────────────

// Area by the Gauss-Bonnet theorem: for a counterclockwise cell bounded by
// geodesic chords and window-circle arcs, area = (sum of exterior turning
// angles) + coth(R) * (arc length) - 2 pi.  Angles are measured in the
// conformal Poincaré model, where the circle of hyperbolic radius R about the
// center is the Euclidean circle of radius tanh(R / 2).
inline double cell_area(const std::vector<cplx>& kp, const std::vector<char>& arc,
                        double R) {
  const int m = static_cast<int>(kp.size());
  if (m < 2) return 0.0;
  std::vector<cplx> pp(m);
  for (int i = 0; i < m; ++i) pp[i] = poincare_of(kp[i]);

  double turn_sum = 0.0, arc_len = 0.0;
  for (int i = 0; i < m; ++i) {
    const int prev = (i + m - 1) % m, next = (i + 1) % m;
    const double dir_in = arc[prev] ? std::arg(cplx{0.0, 1.0} * pp[i])
                                    : direction_of(pp[i], pp[prev]) + pi;
    const double dir_out = arc[i] ? std::arg(cplx{0.0, 1.0} * pp[i])
                                  : direction_of(pp[i], pp[next]);
    turn_sum += std::remainder(dir_out - dir_in, 2.0 * pi);
    if (arc[i]) {
      double dphi = std::arg(kp[next]) - std::arg(kp[i]);
      dphi -= 2.0 * pi * std::floor(dphi / (2.0 * pi));
      arc_len += std::sinh(R) * dphi;
    }
  }
  return turn_sum + (std::cosh(R) / std::sinh(R)) * arc_len - 2.0 * pi;
}

}  // namespace detail

// ── Dirichlet tessellation ──────────────────────────────────────────────────

// Dirichlet cells of an r0-separated site set in the hyperbolic R-disk.  Cell
// incidences come from the Delaunay triangulation of the snapped Poincaré
// coordinates (exact predicates, index-ordered symbolic perturbation); cell
// polygons are cut independently in the Klein model, where the bisector
// between sites i and j is the chord alpha_i k_i . x - alpha_j k_j . x =
// alpha_i - alpha_j of the Minkowski lifts alpha = 1 / sqrt(1 - |k|^2).
// Cells meeting the window circle are rim cells; their sites are the
// boundary vertices of the dual window.
inline htiling dirichlet_cells(const std::vector<hpoint>& sites, double R) {
  const int n = static_cast<int>(sites.size());
  require(n >= 1, errc::bad_params, "no sites");
  require(R > 0.0 && R <= 15.0, errc::bad_params, "window radius out of range");

  htiling t;
  t.R = R;
  t.sites = sites;
  t.window_area = ball_area(R);

  std::vector<detail::ipt> snapped(n);
  for (int i = 0; i < n; ++i) {
    require_in_disk(sites[i].z);
    require(hdist({0.0, 0.0}, sites[i].z) <= R + 1e-9, errc::bad_params,
            "site outside the R-window");
    snapped[i] = {detail::snap_coord(sites[i].z.real()),
                  detail::snap_coord(sites[i].z.imag()), i};
  }
  {
    auto sorted = snapped;
    std::sort(sorted.begin(), sorted.end(), [](const detail::ipt& a, const detail::ipt& b) {
      return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    for (int i = 0; i + 1 < n; ++i)
      require(sorted[i].x != sorted[i + 1].x || sorted[i].y != sorted[i + 1].y,
              errc::degenerate_sites, "sites coincide on the predicate grid");
  }

  if (n >= 3) t.corner_sites = detail::delaunay_triangles(snapped);

  // Dual edges: triangle sides, or the sorted chain when all sites are
  // collinear and no triangle exists.
  std::set<std::pair<int, int>> edge_set;
  for (const auto& f : t.corner_sites) {
    edge_set.emplace(f[0], f[1]);
    edge_set.emplace(f[1], f[2]);
    edge_set.emplace(f[0], f[2]);
  }
  if (n == 2) edge_set.emplace(0, 1);
  if (n >= 3 && t.corner_sites.empty()) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    long long dx = 0, dy = 0;
    for (int i = 1; i < n; ++i) {
      dx = std::max(dx, std::llabs(snapped[i].x - snapped[0].x));
      dy = std::max(dy, std::llabs(snapped[i].y - snapped[0].y));
    }
    const bool by_x = dx >= dy;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
      if (by_x) return snapped[i].x != snapped[j].x ? snapped[i].x < snapped[j].x
                                                    : snapped[i].y < snapped[j].y;
      return snapped[i].y != snapped[j].y ? snapped[i].y < snapped[j].y
                                          : snapped[i].x < snapped[j].x;
    });
    for (int i = 0; i + 1 < n; ++i)
      edge_set.emplace(std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1]));
  }

  t.dual = window(n);
  std::map<std::pair<int, int>, eid> edge_id;
  for (const auto& [u, v] : edge_set) edge_id[{u, v}] = t.dual.add_edge(u, v);
  for (int i = 0; i < n; ++i) t.dual.set_pos(i, as_vec2(sites[i].z));

  for (const auto& f : t.corner_sites) {
    cycle_edges cyc;
    cyc.edges = {edge_id.at({f[0], f[1]}), edge_id.at({f[0], f[2]}),
                 edge_id.at({f[1], f[2]})};
    std::sort(cyc.edges.begin(), cyc.edges.end());
    t.corner_basis.push_back(std::move(cyc));
  }

  // Cell polygons in the Klein model.
  std::vector<cplx> k(n);
  std::vector<double> alpha(n);
  for (int i = 0; i < n; ++i) {
    k[i] = klein_of(sites[i].z);
    alpha[i] = 1.0 / std::sqrt(1.0 - std::norm(k[i]));
  }
  const double krad = std::tanh(R);
  for (int i = 0; i < n; ++i) {
    std::vector<cplx> poly{{-2.0, -2.0}, {2.0, -2.0}, {2.0, 2.0}, {-2.0, 2.0}};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      detail::clip_halfplane(poly, alpha[i] * k[i] - alpha[j] * k[j], alpha[i] - alpha[j]);
    }
    require(!poly.empty(), errc::degenerate_sites, "empty Dirichlet cell");
    detail::circle_clip cc = detail::clip_to_circle(poly, krad);
    require(!cc.pts.empty(), errc::degenerate_sites, "cell vanished at the window rim");

    hcell cell;
    cell.rim = cc.clipped_any;
    for (cplx p : cc.pts) cell.corners.push_back(as_vec2(p));
    cell.arc_after = cc.arc_after;
    cell.area = detail::cell_area(cc.pts, cc.arc_after, R);
    if (cell.rim) t.dual.set_boundary(i, true);
    t.cells.push_back(std::move(cell));
  }
  return t;
}

// ── treeing extraction ──────────────────────────────────────────────────────

// Spanning tree of the Delaunay dual through the planar escape-forest
// machinery.  The corner 3-cycles are validated as a 2-basis of the dual
// first; the treeing itself re-derives faces from the straight-line Poincaré
// drawing, which refines the corner basis with the outer face and keeps the
// rim cells' "virtual outer" role.
inline treeing_result tiling_treeing(const htiling& t) {
  two_basis basis;
  basis.cycles = t.corner_basis;
  basis_report rep = validate_two_basis(t.dual, basis);
  require(rep.valid, errc::invalid_basis,
          "corner cycles are not a 2-basis of the dual: " + rep.reason);
  return planar_treeing(t.dual, rotation_from_positions(t.dual));
}

}  // namespace treeforge
