#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"

namespace treeforge {

// ── paths / cycles / cliques ──────────────────────────────────────────────

// P_n with both endpoints boundary-flagged (a line truncation) unless told not to.
inline window gen_path(int n, bool flag_ends = true) {
  require(n >= 1, errc::bad_params, "path needs >= 1 vertex");
  window w(n);
  for (int i = 0; i + 1 < n; ++i) w.add_edge(i, i + 1);
  if (flag_ends) {
    w.set_boundary(0, true);
    w.set_boundary(n - 1, true);
  }
  for (int i = 0; i < n; ++i) w.set_pos(i, {static_cast<double>(i), 0.0});
  return w;
}

inline window gen_cycle(int n) {
  require(n >= 3, errc::bad_params, "cycle needs >= 3 vertices");
  window w(n);
  for (int i = 0; i < n; ++i) w.add_edge(i, (i + 1) % n);
  for (int i = 0; i < n; ++i) {
    double a = 2.0 * 3.14159265358979323846 * i / n;
    w.set_pos(i, {std::cos(a), std::sin(a)});
  }
  return w;
}

inline window gen_complete(int n) {
  window w(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w.add_edge(i, j);
  return w;
}

// ── grids ─────────────────────────────────────────────────────────────────

inline int grid_id(int r, int c, int cols) { return r * cols + c; }

// rows x cols grid; the outer ring is boundary-flagged by default.
inline window gen_grid(int rows, int cols, bool flag_rim = true) {
  require(rows >= 1 && cols >= 1, errc::bad_params, "grid needs positive dims");
  window w(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) w.add_edge(grid_id(r, c, cols), grid_id(r, c + 1, cols));
      if (r + 1 < rows) w.add_edge(grid_id(r, c, cols), grid_id(r + 1, c, cols));
    }
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (flag_rim && (r == 0 || c == 0 || r == rows - 1 || c == cols - 1))
        w.set_boundary(grid_id(r, c, cols), true);
      w.set_pos(grid_id(r, c, cols), {static_cast<double>(c), static_cast<double>(r)});
    }
  return w;
}

// Torus-identified grid: fully periodic, hence no boundary vertices.
inline window gen_torus(int rows, int cols) {
  require(rows >= 3 && cols >= 3, errc::bad_params, "torus needs dims >= 3");
  window w(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      w.add_edge(grid_id(r, c, cols), grid_id(r, (c + 1) % cols, cols));
      w.add_edge(grid_id(r, c, cols), grid_id((r + 1) % rows, c, cols));
    }
  return w;
}

// m x 2 ladder.  mode "ends" flags the four corner vertices; mode "right"
// flags only the right end column (a ray-like truncation, one-ended).
inline window gen_ladder(int m, const std::string& mode = "ends") {
  require(m >= 2, errc::bad_params, "ladder needs m >= 2");
  window w(2 * m);
  auto id = [](int i, int rail) { return 2 * i + rail; };
  for (int i = 0; i < m; ++i) {
    w.add_edge(id(i, 0), id(i, 1));  // rung
    if (i + 1 < m) {
      w.add_edge(id(i, 0), id(i + 1, 0));
      w.add_edge(id(i, 1), id(i + 1, 1));
    }
  }
  if (mode == "ends") {
    w.set_boundary(id(0, 0), true);
    w.set_boundary(id(0, 1), true);
    w.set_boundary(id(m - 1, 0), true);
    w.set_boundary(id(m - 1, 1), true);
  } else if (mode == "right") {
    w.set_boundary(id(m - 1, 0), true);
    w.set_boundary(id(m - 1, 1), true);
  } else {
    fail(errc::bad_params, "unknown ladder mode " + mode);
  }
  for (int i = 0; i < m; ++i) {
    w.set_pos(id(i, 0), {static_cast<double>(i), 0.0});
    w.set_pos(id(i, 1), {static_cast<double>(i), 1.0});
  }
  return w;
}

// ── trees ─────────────────────────────────────────────────────────────────

// Ball of radius `depth` in the n-regular tree; leaves at full depth are
// boundary-flagged (the tree continues there).
inline window gen_tree_ball(int degree, int depth) {
  require(degree >= 2 && depth >= 0, errc::bad_params, "bad tree ball params");
  window w;
  w.add_vertex(false);
  struct frontier { vid v; int d; };
  std::vector<frontier> cur = {{0, 0}};
  while (!cur.empty()) {
    std::vector<frontier> next;
    for (const frontier& f : cur) {
      if (f.d == depth) {
        if (depth > 0) w.set_boundary(f.v, true);
        continue;
      }
      int kids = (f.d == 0) ? degree : degree - 1;
      for (int k = 0; k < kids; ++k) {
        vid c = w.add_vertex(false);
        w.add_edge(f.v, c);
        next.push_back({c, f.d + 1});
      }
    }
    cur = std::move(next);
  }
  return w;
}

// ── seeded random graphs ──────────────────────────────────────────────────

// Random n-regular simple graph by the pairing model with restarts.
inline window gen_random_regular(int n_vertices, int degree, std::uint64_t seed) {
  require(static_cast<long long>(n_vertices) * degree % 2 == 0, errc::bad_params, "odd degree sum");
  require(degree >= 1 && n_vertices > degree, errc::bad_params, "bad regular params");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n_vertices) * degree);
    for (int v = 0; v < n_vertices; ++v)
      for (int k = 0; k < degree; ++k) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::map<std::pair<int, int>, char> used;
    std::vector<std::pair<int, int>> pairs;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int a = stubs[i], b = stubs[i + 1];
      if (a == b) { ok = false; break; }
      auto key = std::minmax(a, b);
      if (used.count(key)) { ok = false; break; }
      used[key] = 1;
      pairs.emplace_back(a, b);
    }
    if (!ok) continue;
    window w(n_vertices);
    for (auto [a, b] : pairs) w.add_edge(a, b);
    return w;
  }
  fail(errc::bad_params, "pairing model failed to produce a simple graph");
}

// Uniform points in a disk with minimum pairwise separation; raw material for
// random planar windows.
inline std::vector<vec2> random_disk_points(int count, double radius, double min_sep, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<vec2> pts;
  int guard = 0;
  while (static_cast<int>(pts.size()) < count && guard < 100000) {
    ++guard;
    double r = radius * std::sqrt(uni(rng));
    double a = 2.0 * 3.14159265358979323846 * uni(rng);
    vec2 p{r * std::cos(a), r * std::sin(a)};
    bool ok = true;
    for (const vec2& q : pts) {
      double dx = p.x - q.x, dy = p.y - q.y;
      if (dx * dx + dy * dy < min_sep * min_sep) ok = false;
    }
    if (ok) pts.push_back(p);
  }
  require(static_cast<int>(pts.size()) == count, errc::bad_params, "could not place points");
  return pts;
}

}  // namespace treeforge
