#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"
#include "treeforge/hyp/geometry.hpp"

namespace treeforge {

// Finitely generated group of disk isometries, given by its generator list.
// Generators should come in inverse pairs so that bounded-word orbits are
// symmetric about the identity.
struct fuchsian_group {
  std::vector<mobius> gens;
};

// ── built-in groups ─────────────────────────────────────────────────────────

// Side-pairing translations of the regular octagon with vertex angle pi / 4
// (the genus-2 surface group).  The octagon's inradius rho solves
// cosh(rho) = cot(pi / 8); the eight translations have length 2 rho along
// directions k pi / 4, and generator k + 4 is the inverse of generator k.
inline fuchsian_group genus2_octagon_group() {
  const double rho = std::acosh(1.0 / std::tan(pi / 8.0));
  fuchsian_group g;
  for (int k = 0; k < 8; ++k)
    g.gens.push_back(translation_along(k * pi / 4.0, 2.0 * rho));
  return g;
}

// Rotation group of the {p, q} tiling: order-p rotation about a face center
// (the disk center) and order-q rotation about one of that face's vertices.
// The orbit of the center is exactly the set of face centers.
inline fuchsian_group pq_rotation_group(int p, int q) {
  require(p >= 3 && q >= 3, errc::bad_params, "need p, q >= 3");
  require((p - 2) * (q - 2) > 4, errc::not_hyperbolic,
          "{" + std::to_string(p) + "," + std::to_string(q) + "} is not hyperbolic");
  const double dv = std::acosh(1.0 / (std::tan(pi / p) * std::tan(pi / q)));
  const mobius to_vertex = translation_to({std::tanh(dv / 2.0), 0.0});
  const mobius a = rotation(2.0 * pi / p);
  const mobius b = compose(to_vertex, compose(rotation(2.0 * pi / q), inverse(to_vertex)));
  return {{a, inverse(a), b, inverse(b)}};
}

// ── site sampling ───────────────────────────────────────────────────────────

// Orbit of the disk center under words of length <= max_word_len, deduplicated
// at hdist < 1e-7.  Distinct group elements often project to the same point
// (stabilizers, relations), so expansion prunes by point, not by word.  The
// result must be r0-separated; a violation means the word budget outran the
// group's injectivity scale.
inline std::vector<hpoint> fuchsian_sites(const fuchsian_group& g, int max_word_len,
                                          double r0) {
  require(max_word_len >= 0, errc::bad_params, "negative word length");
  require(r0 > 0.0, errc::bad_params, "need r0 > 0");
  require(!g.gens.empty(), errc::bad_params, "group has no generators");

  // Orbit BFS on points: left-multiplying a word by a generator moves its
  // point by that generator alone, so pruning repeated points loses nothing.
  std::vector<hpoint> sites{{cplx{0.0, 0.0}}};
  std::deque<std::pair<cplx, int>> frontier{{cplx{0.0, 0.0}, 0}};
  auto known = [&](cplx z) {
    for (const hpoint& s : sites)
      if (hdist(s.z, z) < 1e-7) return true;
    return false;
  };
  while (!frontier.empty()) {
    auto [at, len] = frontier.front();
    frontier.pop_front();
    if (len == max_word_len) continue;
    for (const mobius& gen : g.gens) {
      const cplx z = gen.apply(at);
      require_in_disk(z);
      if (known(z)) continue;
      sites.push_back({z});
      frontier.emplace_back(z, len + 1);
    }
  }
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      require(hdist(sites[i], sites[j]) > r0, errc::bad_params,
              "orbit points closer than the separation radius r0");
  return sites;
}

// Poisson point process of intensity lambda on the hyperbolic R-disk, thinned
// to a hard-core process: arrivals are kept only when farther than r0 from
// every point kept before them.  The radial inverse CDF is
// r = 2 arsinh(sqrt(u) sinh(R / 2)), the area-uniform law of the disk.
inline std::vector<hpoint> poisson_sites(double R, double lambda, double r0,
                                         std::uint64_t seed) {
  require(r0 > 0.0 && R > r0, errc::bad_params, "need R > r0 > 0");
  require(R <= 15.0, errc::bad_params, "window radius beyond precision budget");
  require(lambda >= 0.0 && std::isfinite(lambda), errc::bad_params, "bad intensity");

  std::mt19937_64 rng(seed);
  std::poisson_distribution<int> count(lambda * ball_area(R));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(rng);

  std::vector<hpoint> kept;
  for (int i = 0; i < n; ++i) {
    const double r = 2.0 * std::asinh(std::sqrt(unit(rng)) * std::sinh(R / 2.0));
    const double theta = 2.0 * pi * unit(rng);
    const cplx z = std::polar(std::tanh(r / 2.0), theta);
    bool clear = true;
    for (const hpoint& s : kept)
      if (hdist(s.z, z) <= r0) {
        clear = false;
        break;
      }
    if (clear) kept.push_back({z});
  }
  return kept;
}

// ── {p, q} tiling ball ──────────────────────────────────────────────────────

// Vertex graph of the regular {p, q} tiling out to the given number of BFS
// layers around a root vertex.  Growth is geometric: each vertex carries a
// frame (a Möbius transform placing it with its q edge directions), children
// get the parent frame advanced one edge and turned around, and revisits are
// detected by position.  The outermost layer is boundary-flagged; edges
// between two outermost vertices are not generated, which only affects
// boundary degrees.
inline window gen_pq_tiling(int p, int q, int layers) {
  require(p >= 3 && q >= 3, errc::bad_params, "need p, q >= 3");
  require((p - 2) * (q - 2) > 4, errc::not_hyperbolic,
          "{" + std::to_string(p) + "," + std::to_string(q) + "} is not hyperbolic");
  require(layers >= 0, errc::bad_params, "negative layer count");

  const double s = 2.0 * std::acosh(std::cos(pi / p) / std::sin(pi / q));
  std::vector<cplx> pts{{0.0, 0.0}};
  std::vector<int> depth{0};
  std::deque<std::pair<mobius, int>> frames{{mobius{}, 0}};
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;

  while (!frames.empty()) {
    auto [frame, v] = frames.front();
    frames.pop_front();
    if (depth[v] == layers) continue;
    for (int k = 0; k < q; ++k) {
      const mobius step =
          normalized(compose(frame, compose(rotation(2.0 * pi * k / q), axis_translation(s))));
      const cplx z = step.apply({0.0, 0.0});
      require_in_disk(z);
      int cv = -1;
      for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        if (hdist(pts[i], z) < 1e-7) {
          cv = i;
          break;
        }
      if (cv < 0) {
        cv = static_cast<int>(pts.size());
        require(cv < 30000, errc::bad_params, "tiling ball exceeds the vertex budget");
        pts.push_back(z);
        depth.push_back(depth[v] + 1);
        frames.emplace_back(compose(step, rotation(pi)), cv);
      }
      const std::pair<int, int> key{std::min(v, cv), std::max(v, cv)};
      if (seen.insert(key).second) edges.push_back(key);
    }
  }

  window w(static_cast<int>(pts.size()));
  for (int i = 0; i < w.vertex_count(); ++i) {
    w.set_pos(i, as_vec2(pts[i]));
    if (depth[i] == layers) w.set_boundary(i, true);
  }
  for (auto [u, v] : edges) w.add_edge(u, v);
  return w;
}

}  // namespace treeforge
