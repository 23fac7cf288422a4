#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"
#include "treeforge/forest/parent_forest.hpp"

namespace treeforge {

// Finiteness proxy for induced components of a witness set: a component counts
// as finite when it avoids the window boundary (nothing truncated), when it is
// small (size <= cap), or either.
enum class finiteness_mode { boundary, cap, either_of };

struct iso_params {
  finiteness_mode mode = finiteness_mode::either_of;
  int cap = 0;               // 0: ceil(sqrt(|V|))
  bool edge_variant = false; // ratio counts boundary edges instead of vertices
};

struct iso_certificate {
  std::vector<vid> a;        // witness set, ascending
  std::vector<vid> boundary; // vertices outside a adjacent to a, ascending
  long long num = 0;         // exact reduced ratio num/den = |boundary| / |a|
  long long den = 1;
  double ratio = 0.0;
  bool finite_components = true;
  std::string method;        // "exhaustive" or "greedy"
  bool edge_variant = false;
};

namespace detail {

inline int effective_cap(const window& w, const iso_params& p) {
  if (p.cap > 0) return p.cap;
  return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(std::max(1, w.vertex_count())))));
}

// Measures the witness: vertex boundary (or edge boundary) over cardinality.
inline std::pair<long long, long long> measure(const window& w, const std::vector<char>& in_a,
                                               bool edge_variant) {
  long long size = 0, cut = 0;
  std::vector<char> outside_hit(w.vertex_count(), 0);
  for (vid v = 0; v < w.vertex_count(); ++v) {
    if (!in_a[v]) continue;
    ++size;
    for (const auto& inc : w.incident(v))
      if (!in_a[inc.other]) {
        if (edge_variant)
          ++cut;
        else
          outside_hit[inc.other] = 1;
      }
  }
  if (!edge_variant)
    for (vid v = 0; v < w.vertex_count(); ++v) cut += outside_hit[v];
  return {cut, size};
}

// true when b1/a1 < b2/a2 (a1, a2 > 0)
inline bool ratio_less(long long b1, long long a1, long long b2, long long a2) {
  return b1 * a2 < b2 * a1;
}

inline iso_certificate finish_certificate(const window& w, const std::vector<char>& in_a,
                                          const iso_params& p, const std::string& method) {
  iso_certificate cert;
  cert.method = method;
  cert.edge_variant = p.edge_variant;
  for (vid v = 0; v < w.vertex_count(); ++v)
    if (in_a[v]) cert.a.push_back(v);
  std::vector<char> hit(w.vertex_count(), 0);
  for (vid v : cert.a)
    for (const auto& inc : w.incident(v))
      if (!in_a[inc.other]) hit[inc.other] = 1;
  for (vid v = 0; v < w.vertex_count(); ++v)
    if (hit[v]) cert.boundary.push_back(v);
  auto [cut, size] = measure(w, in_a, p.edge_variant);
  if (size == 0) {
    cert.num = 0;
    cert.den = 1;
    cert.ratio = std::numeric_limits<double>::infinity();
    cert.finite_components = false;
    return cert;
  }
  long long g = std::gcd(cut == 0 ? size : cut, size);
  cert.num = cut / (g == 0 ? 1 : g);
  cert.den = size / (g == 0 ? 1 : g);
  cert.ratio = static_cast<double>(cut) / static_cast<double>(size);
  return cert;
}

}  // namespace detail

// ── exhaustive constant ──────────────────────────────────────────────────────

// Exact isoperimetric constant: the minimum of |∂A| / |A| over every nonempty
// proper vertex set whose induced components are all finite under the chosen
// proxy.  The complement stands in for the infinite outside, so the full
// window is never a witness (except the degenerate one-vertex window).
// Exhaustive over all subsets, so the window is capped at 22 vertices.
inline iso_certificate iso_constant_exact(const window& w, iso_params p = {}) {
  const int n = w.vertex_count();
  require(n >= 1, errc::bad_params, "empty window");
  require(n <= 22, errc::too_large, "exhaustive search is capped at 22 vertices");
  const int cap = detail::effective_cap(w, p);

  std::vector<std::uint32_t> nbr(n, 0);
  std::uint32_t boundary_mask = 0;
  for (vid v = 0; v < n; ++v) {
    if (w.boundary(v)) boundary_mask |= (1u << v);
    for (const auto& inc : w.incident(v)) nbr[v] |= (1u << inc.other);
  }

  // every subset is admissible when no vertex is boundary-flagged (boundary
  // clause) or the cap cannot bind
  bool all_admissible =
      (p.mode != finiteness_mode::cap && boundary_mask == 0) ||
      (p.mode != finiteness_mode::boundary && cap >= n);

  auto admissible = [&](std::uint32_t s) {
    if (all_admissible) return true;
    std::uint32_t left = s;
    while (left) {
      std::uint32_t comp = left & (~left + 1);  // seed bit
      while (true) {
        std::uint32_t grown = comp;
        std::uint32_t scan = comp;
        while (scan) {
          int v = std::countr_zero(scan);
          scan &= scan - 1;
          grown |= nbr[v] & s;
        }
        if (grown == comp) break;
        comp = grown;
      }
      bool fin_boundary = (comp & boundary_mask) == 0;
      bool fin_cap = std::popcount(comp) <= cap;
      bool fin = p.mode == finiteness_mode::boundary  ? fin_boundary
                 : p.mode == finiteness_mode::cap     ? fin_cap
                                                      : (fin_boundary || fin_cap);
      if (!fin) return false;
      left &= ~comp;
    }
    return true;
  };

  long long best_cut = -1, best_size = 1;
  std::uint32_t best_mask = 0;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    if (n >= 2 && s == full) continue;  // proper subsets only
    if (!admissible(s)) continue;
    long long size = std::popcount(s);
    long long cut;
    if (p.edge_variant) {
      cut = 0;
      std::uint32_t scan = s;
      while (scan) {
        int v = std::countr_zero(scan);
        scan &= scan - 1;
        for (const auto& inc : w.incident(v))
          if (!(s & (1u << inc.other))) ++cut;
      }
    } else {
      std::uint32_t halo = 0;
      std::uint32_t scan = s;
      while (scan) {
        int v = std::countr_zero(scan);
        scan &= scan - 1;
        halo |= nbr[v];
      }
      cut = std::popcount(halo & ~s);
    }
    if (best_cut < 0 || detail::ratio_less(cut, size, best_cut, best_size)) {
      best_cut = cut;
      best_size = size;
      best_mask = s;
    }
  }
  require(best_cut >= 0, errc::bad_params, "no admissible witness under this mode");

  std::vector<char> in_a(n, 0);
  for (int v = 0; v < n; ++v)
    if (best_mask & (1u << v)) in_a[v] = 1;
  return detail::finish_certificate(w, in_a, p, "exhaustive");
}

// ── greedy upper bound ───────────────────────────────────────────────────────

namespace detail {

// Hill-climbs a witness set under a fixed admissibility regime: adds and
// removals that strictly shrink the ratio, least vertex id on ties (adds
// first).  interior_only keeps boundary vertices out (boundary clause);
// otherwise the set size stays within cap (cap clause).  Candidate moves are
// scored through incremental counters, so a pass costs O(E log) overall.
inline void improve(const window& w, std::vector<char>& in_a, bool interior_only, int cap,
                    bool edge_variant) {
  const int n = w.vertex_count();
  std::vector<int> cnt(n, 0);  // edges from each vertex into the current set
  long long size = 0, cut = 0;
  for (vid v = 0; v < n; ++v) {
    if (in_a[v]) ++size;
    for (const auto& inc : w.incident(v))
      if (in_a[inc.other]) ++cnt[v];
  }
  for (vid v = 0; v < n; ++v)
    if (!in_a[v]) cut += edge_variant ? cnt[v] : (cnt[v] > 0 ? 1 : 0);

  for (int pass = 0; pass < 4 * n + 8; ++pass) {
    long long bc = cut, bs = size;
    vid flip = kNone;
    auto consider = [&](long long c2, long long s2, vid u) {
      if (s2 > 0 && ratio_less(c2, s2, bc, bs)) {
        bc = c2;
        bs = s2;
        flip = u;
      }
    };

    std::set<vid> frontier;
    for (vid v = 0; v < n; ++v)
      if (!in_a[v] && cnt[v] > 0) frontier.insert(v);
    for (vid u : frontier) {
      if (n >= 2 && size + 1 >= n) continue;  // never grow into the full window
      if (interior_only && w.boundary(u)) continue;
      if (!interior_only && size + 1 > cap) continue;
      long long c2;
      if (edge_variant) {
        c2 = cut + static_cast<long long>(w.incident(u).size()) - 2 * cnt[u];
      } else {
        c2 = cut - 1;  // u stops being boundary
        std::set<vid> seen;
        for (const auto& inc : w.incident(u))
          if (!in_a[inc.other] && cnt[inc.other] == 0 && seen.insert(inc.other).second)
            ++c2;  // fresh boundary vertex
      }
      consider(c2, size + 1, u);
    }
    for (vid v = 0; v < n; ++v) {
      if (!in_a[v]) continue;
      long long c2;
      if (edge_variant) {
        c2 = cut + 2 * cnt[v] - static_cast<long long>(w.incident(v).size());
      } else {
        c2 = cut + (cnt[v] > 0 ? 1 : 0);  // v joins the boundary
        std::map<vid, int> mult;
        for (const auto& inc : w.incident(v))
          if (!in_a[inc.other]) ++mult[inc.other];
        for (auto [x, m] : mult)
          if (cnt[x] == m) --c2;  // x only saw the set through v
      }
      consider(c2, size - 1, v);
    }

    if (flip == kNone) break;
    if (in_a[flip]) {
      in_a[flip] = 0;
      for (const auto& inc : w.incident(flip)) --cnt[inc.other];
    } else {
      in_a[flip] = 1;
      for (const auto& inc : w.incident(flip)) ++cnt[inc.other];
    }
    cut = bc;
    size = bs;
  }
}

}  // namespace detail

// Scalable upper bound on the isoperimetric constant: local search from a few
// deterministic and seeded starting sets, never leaving the admissible regime.
// With both clauses available the full interior of each component is among the
// starting sets, so block-like witnesses are always found on grids.
inline iso_certificate iso_constant_greedy(const window& w, int restarts, std::uint64_t seed,
                                           iso_params p = {}) {
  const int n = w.vertex_count();
  require(n >= 1, errc::bad_params, "empty window");
  require(restarts >= 1, errc::bad_params, "need at least one restart");
  const int cap = detail::effective_cap(w, p);
  std::mt19937_64 rng(seed);

  bool try_interior = p.mode != finiteness_mode::cap && !w.interior_vertices().empty();
  bool try_capped = p.mode != finiteness_mode::boundary;

  std::vector<std::vector<char>> starts;
  std::size_t interior_starts = 0;
  std::vector<vid> interior = w.interior_vertices();
  if (try_interior) {
    std::vector<char> full(n, 0);
    for (vid v : interior) full[v] = 1;
    if (static_cast<int>(interior.size()) == n && n >= 2)
      full[interior.back()] = 0;  // keep the witness proper on boundary-free windows
    starts.push_back(full);  // the whole interior: block witnesses live here
    for (int r = 0; r < restarts; ++r) {
      vid s = interior[r == 0 ? 0 : rng() % interior.size()];
      std::vector<char> one(n, 0);
      one[s] = 1;
      starts.push_back(one);
    }
    interior_starts = starts.size();
  }
  if (try_capped)
    for (int r = 0; r < restarts; ++r) {
      vid s = static_cast<vid>(r == 0 ? 0 : rng() % n);
      std::vector<char> one(n, 0);
      one[s] = 1;
      starts.push_back(one);
    }
  require(!starts.empty(), errc::bad_params, "no admissible witness under this mode");

  iso_certificate best;
  bool have = false;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    bool interior_only = i < interior_starts;
    std::vector<char> in_a = starts[i];
    detail::improve(w, in_a, interior_only, cap, p.edge_variant);
    iso_certificate cert = detail::finish_certificate(w, in_a, p, "greedy");
    if (cert.a.empty()) continue;
    if (!have || detail::ratio_less(cert.num, cert.den, best.num, best.den)) {
      best = cert;
      have = true;
    }
  }
  require(have, errc::bad_params, "greedy search found no admissible witness");
  return best;
}

// ── hyperfinite cover ────────────────────────────────────────────────────────

struct cover_result {
  bool success = false;
  std::vector<vid> a;                    // union of chunks, ascending
  std::vector<std::vector<vid>> chunks;  // pairwise non-adjacent
  std::vector<vid> boundary;             // ∂A
  double boundary_ratio = 0.0;           // |∂A| / |A|
  double coverage = 0.0;                 // |A| / |V|
  std::string reason;                    // why it failed, when it did
};

// Greedy certificate that the window is eps-hyperfinite: carve pairwise
// non-adjacent chunks with finite induced components until the free zone is
// exhausted, then check that the union covers a (1-eps) fraction with
// boundary at most eps of its size.  Chunks are best-ratio BFS prefixes grown
// from the least free vertex, so the whole run is canonical.
inline cover_result hyperfinite_cover(const window& w, double eps, iso_params p = {}) {
  require(eps > 0.0 && eps < 1.0, errc::bad_params, "eps must lie in (0,1)");
  const int n = w.vertex_count();
  require(n >= 1, errc::bad_params, "empty window");
  const int cap = detail::effective_cap(w, p);
  const bool interior_only = p.mode != finiteness_mode::cap;

  cover_result out;
  std::vector<char> in_a(n, 0), free_zone(n, 0);
  for (vid v = 0; v < n; ++v) free_zone[v] = interior_only ? !w.boundary(v) : 1;

  while (true) {
    vid seed = kNone;
    for (vid v = 0; v < n; ++v)
      if (free_zone[v]) {
        seed = v;
        break;
      }
    if (seed == kNone) break;

    // deterministic BFS order over the free zone: least (distance, id) first
    std::vector<int> dist(n, -1);
    std::vector<vid> order;
    std::priority_queue<std::pair<int, vid>, std::vector<std::pair<int, vid>>, std::greater<>> pq;
    dist[seed] = 0;
    pq.push({0, seed});
    std::vector<char> popped(n, 0);
    while (!pq.empty()) {
      auto [dv, v] = pq.top();
      pq.pop();
      if (popped[v]) continue;
      popped[v] = 1;
      order.push_back(v);
      if (!interior_only && static_cast<int>(order.size()) >= cap) break;
      for (const auto& inc : w.incident(v))
        if (free_zone[inc.other] && dist[inc.other] < 0) {
          dist[inc.other] = dv + 1;
          pq.push({dv + 1, inc.other});
        }
    }

    // best-ratio prefix of the exploration order
    std::vector<char> in_c(n, 0), hit(n, 0);
    long long cut = 0, size = 0, best_cut = -1, best_size = 1;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      vid v = order[i];
      in_c[v] = 1;
      ++size;
      if (hit[v]) {
        hit[v] = 0;
        --cut;
      }
      for (const auto& inc : w.incident(v))
        if (!in_c[inc.other] && !hit[inc.other]) {
          hit[inc.other] = 1;
          ++cut;
        }
      if (best_cut < 0 || detail::ratio_less(cut, size, best_cut, best_size)) {
        best_cut = cut;
        best_size = size;
        best_len = i + 1;
      }
    }

    std::vector<vid> chunk(order.begin(), order.begin() + best_len);
    for (vid v : chunk) {
      in_a[v] = 1;
      free_zone[v] = 0;
    }
    for (vid v : chunk)
      for (const auto& inc : w.incident(v)) free_zone[inc.other] = 0;  // halo keeps chunks apart
    std::sort(chunk.begin(), chunk.end());
    out.chunks.push_back(std::move(chunk));
  }

  long long total = 0;
  std::vector<char> hit(n, 0);
  for (vid v = 0; v < n; ++v) {
    if (!in_a[v]) continue;
    ++total;
    out.a.push_back(v);
    for (const auto& inc : w.incident(v))
      if (!in_a[inc.other]) hit[inc.other] = 1;
  }
  for (vid v = 0; v < n; ++v)
    if (hit[v]) out.boundary.push_back(v);

  out.coverage = static_cast<double>(total) / n;
  out.boundary_ratio = total == 0 ? std::numeric_limits<double>::infinity()
                                  : static_cast<double>(out.boundary.size()) / total;
  bool covers = out.coverage >= 1.0 - eps;
  bool thin = out.boundary_ratio <= eps;
  out.success = covers && thin;
  if (!out.success) {
    out.reason = !covers ? "cover stalled at " + std::to_string(out.coverage) + " of the window"
                         : "cumulative boundary ratio " + std::to_string(out.boundary_ratio) +
                               " exceeds eps";
  }
  return out;
}

// ── small complete section ───────────────────────────────────────────────────

struct section_result {
  std::vector<vid> a;           // the section: core plus connector paths
  std::vector<vid> core;        // last pruning set
  std::vector<vid> connectors;  // vertices added for the cross endpoints
  std::vector<int> prune_sizes; // |A_1|, |A_2|, ... (A_1 = forest support)
  int rounds = 0;               // n: index of the final pruning set
  int longest_path = 0;         // longest connector path to the core, in edges
  int stranded_endpoints = 0;   // cross endpoints whose whole tree was pruned away
};

// Pruning construction of a small set meeting every tree of the forest: strip
// vertices of induced tree-degree <= 1 until fewer than eps|V|/2 remain, then
// wire each cross-edge endpoint to its nearest core vertex through the unique
// forest path.  When an endpoint's whole tree was pruned away there is no such
// path; the endpoint joins on its own and the cross edge itself is the join
// witness.  The budget |A| < eps|V| is enforced, as is cross coverage of
// every tree (BudgetExceeded).
inline section_result small_section(const window& w, const parent_forest& t,
                                    const std::vector<eid>& cross, double eps) {
  require(eps > 0.0 && eps < 1.0, errc::bad_params, "eps must lie in (0,1)");
  forest_check chk = validate_forest(w, t, /*require_spanning=*/true);
  require(chk.ok, errc::precondition_violated, "forest invalid: " + chk.reason);
  const int n = w.vertex_count();

  std::vector<std::vector<vid>> kids(n);
  for (vid v = 0; v < n; ++v)
    if (t.member(v) && t.has_parent(v)) kids[t.parent(v)].push_back(v);

  auto tree_root = [&](vid v) {
    int guard = n + 1;
    while (t.has_parent(v) && guard-- > 0) v = t.parent(v);
    require(guard > 0, errc::precondition_violated, "orbit does not terminate");
    return v;
  };

  std::set<eid> in_t;
  for (eid e : t.edge_set()) in_t.insert(e);
  for (eid e : cross) {
    require(w.has_edge_id(e), errc::bad_params, "unknown cross edge " + std::to_string(e));
    require(!in_t.count(e), errc::bad_params,
            "cross edge " + std::to_string(e) + " lies in the forest");
  }

  // every tree must be touched by a cross edge
  std::set<vid> hit_roots, all_roots;
  for (vid v = 0; v < n; ++v)
    if (t.member(v)) all_roots.insert(tree_root(v));
  for (eid e : cross) {
    const auto& ed = w.edge(e);
    for (vid x : {ed.u, ed.v})
      if (t.member(x)) hit_roots.insert(tree_root(x));
  }
  for (vid r : all_roots)
    require(hit_roots.count(r), errc::budget_exceeded,
            "cross edges miss the tree rooted at " + std::to_string(r));

  // pruning sequence: keep induced tree-degree >= 2
  section_result out;
  std::vector<char> in_core(n, 0);
  int core_size = 0;
  for (vid v = 0; v < n; ++v)
    if (t.member(v)) {
      in_core[v] = 1;
      ++core_size;
    }
  out.prune_sizes.push_back(core_size);
  out.rounds = 1;
  while (core_size >= eps * n / 2.0 && core_size > 0) {
    std::vector<char> next(n, 0);
    int next_size = 0;
    for (vid v = 0; v < n; ++v) {
      if (!in_core[v]) continue;
      int deg = 0;
      if (t.has_parent(v) && in_core[t.parent(v)]) ++deg;
      for (vid c : kids[v])
        if (in_core[c]) ++deg;
      if (deg >= 2) {
        next[v] = 1;
        ++next_size;
      }
    }
    in_core = std::move(next);
    core_size = next_size;
    out.prune_sizes.push_back(core_size);
    ++out.rounds;
  }

  // nearest core vertex through the forest, per tree (roots as fallback)
  std::vector<int> core_dist(n, -1);
  std::vector<vid> toward(n, kNone);
  std::deque<vid> q;
  for (vid v = 0; v < n; ++v)
    if (in_core[v]) {
      core_dist[v] = 0;
      q.push_back(v);
    }
  while (!q.empty()) {
    vid v = q.front();
    q.pop_front();
    std::vector<vid> around = kids[v];
    if (t.member(v) && t.has_parent(v)) around.push_back(t.parent(v));
    for (vid u : around)
      if (core_dist[u] < 0) {
        core_dist[u] = core_dist[v] + 1;
        toward[u] = v;
        q.push_back(u);
      }
  }

  std::vector<char> in_a = in_core;
  std::vector<char> is_connector(n, 0);
  for (eid e : cross) {
    const auto& ed = w.edge(e);
    for (vid x : {ed.u, ed.v}) {
      if (!t.member(x)) continue;
      if (core_dist[x] >= 0) {
        int steps = 0;
        vid at = x;
        while (!in_core[at]) {
          if (!in_a[at]) is_connector[at] = 1;
          in_a[at] = 1;
          at = toward[at];
          ++steps;
        }
        out.longest_path = std::max(out.longest_path, steps);
      } else {
        if (!in_a[x]) is_connector[x] = 1;  // tree without core: the endpoint alone
        in_a[x] = 1;
        ++out.stranded_endpoints;
      }
    }
  }

  for (vid v = 0; v < n; ++v) {
    if (in_core[v]) out.core.push_back(v);
    if (is_connector[v]) out.connectors.push_back(v);
    if (in_a[v]) out.a.push_back(v);
  }

  require(static_cast<double>(out.a.size()) < eps * n, errc::budget_exceeded,
          "section holds " + std::to_string(out.a.size()) + " vertices, budget " +
              std::to_string(eps * n));
  return out;
}

}  // namespace treeforge
