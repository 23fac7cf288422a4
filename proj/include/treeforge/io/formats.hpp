#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"
#include "treeforge/cx/cell_complex.hpp"
#include "treeforge/forest/parent_forest.hpp"
#include "treeforge/hyp/dirichlet.hpp"
#include "treeforge/hyp/geometry.hpp"
#include "treeforge/planar/two_basis.hpp"

namespace treeforge {

// Serialized objects keep their key order, so identical inputs give
// byte-identical files.
using ojson = nlohmann::ordered_json;

// ── hashing and number formatting ───────────────────────────────────────────

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Fixed 9-significant-digit float rendering; every coordinate in SVG output
// goes through here so reruns are byte-stable.
inline std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// ── window JSON ─────────────────────────────────────────────────────────────
//
// {"vertices":[{"id":i,"boundary":b,"pos":[x,y]?}...],
//  "edges":[{"id":e,"u":u,"v":v}...]}

inline ojson window_to_json(const window& w) {
  ojson j;
  j["vertices"] = ojson::array();
  for (vid v = 0; v < w.vertex_count(); ++v) {
    ojson jv;
    jv["id"] = v;
    jv["boundary"] = w.boundary(v);
    if (auto p = w.pos(v)) jv["pos"] = {p->x, p->y};
    j["vertices"].push_back(std::move(jv));
  }
  j["edges"] = ojson::array();
  for (const auto& ed : w.edges()) {
    ojson je;
    je["id"] = ed.id;
    je["u"] = ed.u;
    je["v"] = ed.v;
    j["edges"].push_back(std::move(je));
  }
  return j;
}

inline window window_from_json(const ojson& j) {
  require(j.is_object() && j.contains("vertices") && j.contains("edges"), errc::bad_params,
          "window JSON needs vertices and edges");
  const auto& jv = j.at("vertices");
  require(jv.is_array(), errc::bad_params, "vertices must be an array");
  int n = static_cast<int>(jv.size());

  std::vector<char> seen(n, 0);
  std::vector<bool> boundary(n, false);
  std::vector<std::optional<vec2>> pos(n);
  for (const auto& e : jv) {
    int id = e.at("id").get<int>();
    require(id >= 0 && id < n && !seen[id], errc::bad_params,
            "vertex ids must be dense and unique");
    seen[id] = 1;
    boundary[id] = e.value("boundary", false);
    if (e.contains("pos")) {
      const auto& p = e.at("pos");
      require(p.is_array() && p.size() == 2, errc::bad_params, "pos must be [x,y]");
      pos[id] = vec2{p[0].get<double>(), p[1].get<double>()};
    }
  }
  window w;
  for (int v = 0; v < n; ++v) w.add_vertex(boundary[v], pos[v]);
  for (const auto& e : j.at("edges")) {
    w.add_edge(e.at("u").get<int>(), e.at("v").get<int>(), e.at("id").get<eid>());
  }
  return w;
}

// ── basis JSON ──────────────────────────────────────────────────────────────
//
// {"cycles":[[edge ids]...]}

inline ojson basis_to_json(const two_basis& b) {
  ojson j;
  j["cycles"] = ojson::array();
  for (const auto& c : b.cycles) j["cycles"].push_back(c.edges);
  return j;
}

inline two_basis basis_from_json(const ojson& j) {
  require(j.is_object() && j.contains("cycles") && j.at("cycles").is_array(), errc::bad_params,
          "basis JSON needs a cycles array");
  two_basis b;
  for (const auto& c : j.at("cycles")) {
    cycle_edges cy;
    for (const auto& e : c) cy.edges.push_back(e.get<eid>());
    b.cycles.push_back(std::move(cy));
  }
  return b;
}

// ── forest JSON ─────────────────────────────────────────────────────────────
//
// {"parent":{"v":p,...},"via":{"v":e,...},"roots":[...],"layer":{"v":k,...}}
// The via map pins which parallel edge carries each step; readers fall back
// to the least edge joining the pair when it is absent.

inline ojson forest_to_json(const parent_forest& f) {
  ojson parent = ojson::object(), via = ojson::object(), layer = ojson::object();
  ojson roots = ojson::array();
  for (vid v = 0; v < f.size(); ++v) {
    if (!f.member(v)) continue;
    std::string key = std::to_string(v);
    if (f.has_parent(v)) {
      parent[key] = f.parent(v);
      via[key] = f.via(v);
    } else {
      roots.push_back(v);
    }
    if (f.layer(v) != kNone) layer[key] = f.layer(v);
  }
  ojson j;
  j["parent"] = std::move(parent);
  j["via"] = std::move(via);
  j["roots"] = std::move(roots);
  j["layer"] = std::move(layer);
  return j;
}

inline parent_forest forest_from_json(const ojson& j, const window& w) {
  require(j.is_object() && j.contains("parent") && j.contains("roots"), errc::bad_params,
          "forest JSON needs parent and roots");
  parent_forest f(w.vertex_count());
  ojson layer = j.value("layer", ojson::object());
  ojson via = j.value("via", ojson::object());
  auto layer_of = [&](const std::string& key) {
    return layer.contains(key) ? layer.at(key).get<int>() : kNone;
  };
  for (const auto& [key, jp] : j.at("parent").items()) {
    vid x = std::stoi(key);
    vid p = jp.get<vid>();
    require(x >= 0 && x < w.vertex_count() && p >= 0 && p < w.vertex_count(), errc::bad_params,
            "forest vertex out of range");
    eid e = kNone;
    if (via.contains(key)) {
      e = via.at(key).get<eid>();
    } else {
      for (const auto& inc : w.incident(x))
        if (inc.other == p) {
          e = inc.e;
          break;
        }
    }
    require(e != kNone, errc::bad_params,
            "no edge joins " + key + " and its parent " + std::to_string(p));
    f.set_parent(x, p, e, layer_of(key));
  }
  for (const auto& jr : j.at("roots")) {
    vid r = jr.get<vid>();
    require(r >= 0 && r < w.vertex_count(), errc::bad_params, "root out of range");
    f.declare_root(r, layer_of(std::to_string(r)));
  }
  return f;
}

// ── complex JSON ────────────────────────────────────────────────────────────
//
// {"dim":d,"cells":{"0":[{"faces":[]},...],"1":[{"faces":[u,v]},...],...}}

inline ojson complex_to_json(const cell_complex& c) {
  ojson cells = ojson::object();
  for (int k = 0; k <= c.dim; ++k) {
    ojson arr = ojson::array();
    for (int i = 0; i < c.cells(k); ++i) {
      ojson cell;
      cell["faces"] = c.faces[k][i];
      arr.push_back(std::move(cell));
    }
    cells[std::to_string(k)] = std::move(arr);
  }
  ojson j;
  j["dim"] = c.dim;
  j["cells"] = std::move(cells);
  return j;
}

inline cell_complex complex_from_json(const ojson& j) {
  require(j.is_object() && j.contains("dim") && j.contains("cells"), errc::bad_params,
          "complex JSON needs dim and cells");
  cell_complex c;
  c.dim = j.at("dim").get<int>();
  require(c.dim >= 0, errc::bad_params, "negative dimension");
  c.faces.resize(c.dim + 1);
  for (int k = 0; k <= c.dim; ++k) {
    std::string key = std::to_string(k);
    require(j.at("cells").contains(key), errc::bad_params, "cells missing dimension " + key);
    for (const auto& cell : j.at("cells").at(key)) {
      std::vector<int> fs;
      if (cell.is_object() && cell.contains("faces"))
        for (const auto& f : cell.at("faces")) fs.push_back(f.get<int>());
      c.faces[k].push_back(std::move(fs));
    }
  }
  check_complex(c);
  return c;
}

// ── OFF import ──────────────────────────────────────────────────────────────
//
// All-triangle files load as 2-complexes, all-quadruple files as solid
// tetrahedral 3-complexes.  Coordinates are parsed and dropped; the complex
// is combinatorial.

inline cell_complex complex_from_off(const std::string& text) {
  std::istringstream raw(text);
  std::string line, clean;
  while (std::getline(raw, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    clean += line;
    clean += '\n';
  }
  std::istringstream in(clean);
  std::string tag;
  require(static_cast<bool>(in >> tag) && tag == "OFF", errc::bad_params,
          "OFF file must start with the OFF tag");
  long long nv = 0, nf = 0, ne = 0;
  require(static_cast<bool>(in >> nv >> nf >> ne), errc::bad_params, "OFF header truncated");
  require(nv >= 0 && nf >= 0, errc::bad_params, "OFF header counts must be nonnegative");
  for (long long i = 0; i < 3 * nv; ++i) {
    double coord;
    require(static_cast<bool>(in >> coord), errc::bad_params, "OFF vertex list truncated");
  }
  std::vector<std::vector<int>> polys;
  for (long long i = 0; i < nf; ++i) {
    int k = 0;
    require(static_cast<bool>(in >> k) && k >= 3, errc::bad_params, "bad OFF face arity");
    std::vector<int> p(k);
    for (int& x : p)
      require(static_cast<bool>(in >> x) && x >= 0 && x < nv, errc::bad_params,
              "OFF face index out of range");
    polys.push_back(std::move(p));
  }
  bool all3 = true, all4 = true;
  for (const auto& p : polys) {
    all3 = all3 && p.size() == 3;
    all4 = all4 && p.size() == 4;
  }
  if (!polys.empty() && all3) {
    std::vector<std::array<int, 3>> tris;
    for (const auto& p : polys) tris.push_back({p[0], p[1], p[2]});
    return complex_from_triangles(static_cast<int>(nv), tris);
  }
  if (!polys.empty() && all4) {
    std::vector<std::array<int, 4>> tets;
    for (const auto& p : polys) tets.push_back({p[0], p[1], p[2], p[3]});
    return complex_from_tetrahedra(static_cast<int>(nv), tets);
  }
  fail(errc::bad_params, "OFF import handles all-triangle or all-tetrahedron files only");
}

// ── DOT export ──────────────────────────────────────────────────────────────

inline std::string window_to_dot(const window& w) {
  std::string out = "graph window {\n  node [shape=circle];\n";
  for (vid v = 0; v < w.vertex_count(); ++v) {
    out += "  " + std::to_string(v);
    if (w.boundary(v)) out += " [peripheries=2]";
    out += ";\n";
  }
  for (const auto& ed : w.edges())
    out += "  " + std::to_string(ed.u) + " -- " + std::to_string(ed.v) + " [label=" +
           std::to_string(ed.id) + "];\n";
  out += "}\n";
  return out;
}

inline std::string forest_to_dot(const window& w, const parent_forest& f) {
  std::string out = "digraph forest {\n  node [shape=circle];\n";
  for (vid v = 0; v < f.size(); ++v) {
    if (!f.member(v)) continue;
    out += "  " + std::to_string(v);
    if (!f.has_parent(v)) out += " [shape=doublecircle]";
    out += ";\n";
  }
  for (vid v = 0; v < f.size(); ++v)
    if (f.member(v) && f.has_parent(v))
      out += "  " + std::to_string(v) + " -> " + std::to_string(f.parent(v)) + " [label=" +
             std::to_string(f.via(v)) + "];\n";
  (void)w;
  out += "}\n";
  return out;
}

// ── SVG export ──────────────────────────────────────────────────────────────

namespace detail {

// Appends an SVG arc (or line when the three points are collinear enough)
// from Poincaré point a to b along their geodesic.  Coordinates are emitted
// y-flipped, so math-positive sweeps become flag 0.
inline void svg_geodesic_to(std::string& path, cplx a, cplx b) {
  double det = 2.0 * (a.real() * b.imag() - a.imag() * b.real());
  if (std::abs(det) < 1e-12) {
    path += " L " + fmt9(b.real()) + " " + fmt9(-b.imag());
    return;
  }
  double ra = (std::norm(a) + 1.0) / 2.0, rb = (std::norm(b) + 1.0) / 2.0;
  cplx c((ra * b.imag() - rb * a.imag()) / (det / 2.0),
         (rb * a.real() - ra * b.real()) / (det / 2.0));
  double r = std::sqrt(std::max(0.0, std::norm(c) - 1.0));
  double cross = (a.real() - c.real()) * (b.imag() - c.imag()) -
                 (a.imag() - c.imag()) * (b.real() - c.real());
  const char* sweep = cross > 0 ? "0" : "1";  // minor arc, orientation flipped with y
  path += " A " + fmt9(r) + " " + fmt9(r) + " 0 0 " + std::string(sweep) + " " +
          fmt9(b.real()) + " " + fmt9(-b.imag());
}

// Arc along the circle of radius rho about the origin, following the
// math-CCW direction from a to b.
inline void svg_rim_to(std::string& path, cplx a, cplx b, double rho) {
  double delta = std::arg(b) - std::arg(a);
  if (delta <= 0) delta += 2.0 * pi;
  const char* large = delta > pi ? "1" : "0";
  path += " A " + fmt9(rho) + " " + fmt9(rho) + " 0 " + std::string(large) + " 0 " +
          fmt9(b.real()) + " " + fmt9(-b.imag());
}

inline std::string svg_open(double x, double y, double wd, double ht) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt9(x) + " " + fmt9(y) + " " +
         fmt9(wd) + " " + fmt9(ht) + "\">\n";
}

}  // namespace detail

// Straight-line drawing of an embedded window.
inline std::string window_to_svg(const window& w) {
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  for (vid v = 0; v < w.vertex_count(); ++v) {
    auto p = w.pos(v);
    require(p.has_value(), errc::bad_params, "SVG export needs a position on every vertex");
    lo_x = std::min(lo_x, p->x);
    hi_x = std::max(hi_x, p->x);
    lo_y = std::min(lo_y, -p->y);
    hi_y = std::max(hi_y, -p->y);
  }
  require(w.vertex_count() > 0, errc::bad_params, "empty window");
  double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  double pad = 0.05 * span;
  std::string svg = detail::svg_open(lo_x - pad, lo_y - pad, hi_x - lo_x + 2 * pad,
                                     hi_y - lo_y + 2 * pad);
  double stroke = 0.004 * span, dot = 0.01 * span;
  for (const auto& ed : w.edges()) {
    auto pu = *w.pos(ed.u), pv = *w.pos(ed.v);
    svg += "<line x1=\"" + fmt9(pu.x) + "\" y1=\"" + fmt9(-pu.y) + "\" x2=\"" + fmt9(pv.x) +
           "\" y2=\"" + fmt9(-pv.y) + "\" stroke=\"#335\" stroke-width=\"" + fmt9(stroke) +
           "\"/>\n";
  }
  for (vid v = 0; v < w.vertex_count(); ++v) {
    auto p = *w.pos(v);
    svg += "<circle cx=\"" + fmt9(p.x) + "\" cy=\"" + fmt9(-p.y) + "\" r=\"" + fmt9(dot) +
           "\" fill=\"" + (w.boundary(v) ? "#c33" : "#333") + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

// Disk-model drawing of an embedded window whose positions are Poincaré
// coordinates: edges become geodesic arcs inside the unit circle.
inline std::string window_to_disk_svg(const window& w) {
  std::string svg = detail::svg_open(-1.05, -1.05, 2.1, 2.1);
  svg += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#999\" "
         "stroke-width=\"0.004\"/>\n";
  for (const auto& ed : w.edges()) {
    auto pu = w.pos(ed.u), pv = w.pos(ed.v);
    require(pu && pv, errc::bad_params, "SVG export needs a position on every vertex");
    cplx a(pu->x, pu->y), b(pv->x, pv->y);
    std::string path = "M " + fmt9(a.real()) + " " + fmt9(-a.imag());
    detail::svg_geodesic_to(path, a, b);
    svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"#335\" stroke-width=\"0.003\"/>\n";
  }
  for (vid v = 0; v < w.vertex_count(); ++v) {
    auto p = *w.pos(v);
    svg += "<circle cx=\"" + fmt9(p.x) + "\" cy=\"" + fmt9(-p.y) + "\" r=\"0.008\" fill=\"" +
           (w.boundary(v) ? "#c33" : "#333") + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

// Disk-model drawing of a Dirichlet tiling: cell borders follow geodesics,
// rim sides follow the window circle, sites are dots.
inline std::string tiling_to_svg(const htiling& t) {
  double rho = std::tanh(t.R / 2.0);  // Poincaré radius of the window circle
  std::string svg = detail::svg_open(-1.05, -1.05, 2.1, 2.1);
  svg += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#bbb\" "
         "stroke-width=\"0.004\"/>\n";
  svg += "<circle cx=\"0\" cy=\"0\" r=\"" + fmt9(rho) +
         "\" fill=\"none\" stroke=\"#b86\" stroke-width=\"0.003\"/>\n";
  for (const auto& cell : t.cells) {
    int m = static_cast<int>(cell.corners.size());
    if (m < 2) continue;
    std::vector<cplx> pp(m);
    for (int i = 0; i < m; ++i) {
      cplx k(cell.corners[i].x, cell.corners[i].y);
      pp[i] = poincare_of(k);
    }
    std::string path = "M " + fmt9(pp[0].real()) + " " + fmt9(-pp[0].imag());
    for (int i = 0; i < m; ++i) {
      cplx a = pp[i], b = pp[(i + 1) % m];
      if (cell.arc_after[i])
        detail::svg_rim_to(path, a, b, rho);
      else
        detail::svg_geodesic_to(path, a, b);
    }
    path += " Z";
    svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" +
           (cell.rim ? "#c86" : "#357") + "\" stroke-width=\"0.0025\"/>\n";
  }
  for (const auto& s : t.sites)
    svg += "<circle cx=\"" + fmt9(s.z.real()) + "\" cy=\"" + fmt9(-s.z.imag()) +
           "\" r=\"0.006\" fill=\"#222\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace treeforge
