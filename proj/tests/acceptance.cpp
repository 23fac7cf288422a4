// Acceptance gate: twelve end-to-end checks across the whole library, one
// verdict line each, exit 0 iff every check passes.  Each check re-derives its
// expected facts through an independent path (DSU, mask elimination, integer
// geometry, brute force) rather than trusting the code under test.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "treeforge/core/ends.hpp"
#include "treeforge/core/errors.hpp"
#include "treeforge/core/gf2.hpp"
#include "treeforge/core/window.hpp"
#include "treeforge/cx/cell_complex.hpp"
#include "treeforge/cx/complex_dual.hpp"
#include "treeforge/cx/forest_ops.hpp"
#include "treeforge/cx/homology.hpp"
#include "treeforge/forest/extend.hpp"
#include "treeforge/forest/layered.hpp"
#include "treeforge/forest/parent_forest.hpp"
#include "treeforge/forest/random_forest.hpp"
#include "treeforge/gen/generators.hpp"
#include "treeforge/hyp/dirichlet.hpp"
#include "treeforge/hyp/geometry.hpp"
#include "treeforge/hyp/sites.hpp"
#include "treeforge/iso/isoperimetry.hpp"
#include "treeforge/planar/blocks.hpp"
#include "treeforge/planar/dual.hpp"
#include "treeforge/planar/embedding.hpp"
#include "treeforge/planar/treeing.hpp"
#include "treeforge/planar/two_basis.hpp"

using namespace treeforge;

namespace {

// ── verdict plumbing ────────────────────────────────────────────────────────

struct gate {
  bool ok = true;
  std::string detail;                // success-path counters for the verdict line
  std::vector<std::string> faults;   // first few failure descriptions
  void req(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (faults.size() < 8) faults.push_back(what);
  }
};

struct timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

int g_failures = 0;

void run_check(int no, const char* title, const std::function<void(gate&)>& body) {
  gate g;
  timer t;
  try {
    body(g);
  } catch (const std::exception& e) {
    g.req(false, std::string("unexpected exception: ") + e.what());
  }
  std::string line = g.ok ? "[PASS]" : "[FAIL]";
  char head[64];
  std::snprintf(head, sizeof head, " %2d  %-26s  ", no, title);
  line += head;
  if (!g.detail.empty()) line += g.detail + "  ";
  char tail[32];
  std::snprintf(tail, sizeof tail, "(%.2f s)", t.s());
  line += tail;
  std::printf("%s\n", line.c_str());
  for (const auto& f : g.faults) std::printf("          - %s\n", f.c_str());
  if (!g.ok) ++g_failures;
}

// ── independent oracles ─────────────────────────────────────────────────────

struct dsu {
  std::vector<int> up;
  explicit dsu(int n) : up(n) {
    for (int i = 0; i < n; ++i) up[i] = i;
  }
  int find(int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[a] = b;
    return true;
  }
};

// GF(2) rank by highest-bit pivoting over edge-id masks; independent of the
// library's edge_space representation.
int mask_rank(const std::vector<std::uint64_t>& rows) {
  std::array<std::uint64_t, 64> piv{};
  int rank = 0;
  for (std::uint64_t row : rows) {
    std::uint64_t x = row;
    while (x) {
      int b = 63 - std::countl_zero(x);
      if (!piv[b]) {
        piv[b] = x;
        ++rank;
        break;
      }
      x ^= piv[b];
    }
  }
  return rank;
}

// ── integer straight-line drawings ──────────────────────────────────────────

struct ipt {
  long long x, y;
};

long long cross3(const ipt& o, const ipt& a, const ipt& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Collinearity assumed; bounding-box membership.
bool on_seg(const ipt& a, const ipt& b, const ipt& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Any shared point other than a single common endpoint disqualifies the pair.
bool segs_conflict(ipt a, ipt b, ipt c, ipt d) {
  auto same = [](const ipt& p, const ipt& q) { return p.x == q.x && p.y == q.y; };
  const bool ac = same(a, c), ad = same(a, d), bc = same(b, c), bd = same(b, d);
  if (ac + ad + bc + bd >= 2) return true;  // identical segment
  if (ac || ad || bc || bd) {
    // rotate so the shared endpoint is a == c; overlap iff collinear same-way
    if (ad) std::swap(c, d);
    if (bc) std::swap(a, b);
    if (bd) {
      std::swap(a, b);
      std::swap(c, d);
    }
    return cross3(a, b, d) == 0 && (b.x - a.x) * (d.x - a.x) + (b.y - a.y) * (d.y - a.y) > 0;
  }
  const long long d1 = cross3(c, d, a), d2 = cross3(c, d, b);
  const long long d3 = cross3(a, b, c), d4 = cross3(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_seg(c, d, a)) return true;
  if (d2 == 0 && on_seg(c, d, b)) return true;
  if (d3 == 0 && on_seg(a, b, c)) return true;
  if (d4 == 0 && on_seg(a, b, d)) return true;
  return false;
}

// Random connected window with a straight-line plane drawing on distinct
// integer points: shuffled vertex pairs are kept when the new segment avoids
// every accepted segment and every other vertex.  Returns nothing when the
// draw comes out disconnected; callers redraw.
std::optional<window> random_embedded(std::mt19937& rng, int lo_v, int hi_v, int max_e,
                                      double lo_dens, double hi_dens) {
  const int n = std::uniform_int_distribution<int>(lo_v, hi_v)(rng);
  std::uniform_int_distribution<long long> co(0, 24);
  std::set<std::pair<long long, long long>> used;
  std::vector<ipt> pts;
  for (int guard = 0; static_cast<int>(pts.size()) < n && guard < 1000; ++guard) {
    ipt p{co(rng), co(rng)};
    if (used.insert({p.x, p.y}).second) pts.push_back(p);
  }
  if (static_cast<int>(pts.size()) < n) return std::nullopt;

  std::vector<std::pair<int, int>> cand;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) cand.push_back({u, v});
  std::shuffle(cand.begin(), cand.end(), rng);
  std::bernoulli_distribution take(std::uniform_real_distribution<double>(lo_dens, hi_dens)(rng));

  std::vector<std::pair<int, int>> acc;
  for (auto [u, v] : cand) {
    if (static_cast<int>(acc.size()) >= max_e) break;
    if (!take(rng)) continue;
    bool bad = false;
    for (int p = 0; p < n && !bad; ++p)
      if (p != u && p != v && cross3(pts[u], pts[v], pts[p]) == 0 && on_seg(pts[u], pts[v], pts[p]))
        bad = true;
    for (std::size_t i = 0; i < acc.size() && !bad; ++i)
      if (segs_conflict(pts[acc[i].first], pts[acc[i].second], pts[u], pts[v])) bad = true;
    if (!bad) acc.push_back({u, v});
  }

  dsu comp(n);
  int parts = n;
  for (auto [u, v] : acc)
    if (comp.join(u, v)) --parts;
  if (parts != 1) return std::nullopt;

  window w(n);
  for (int i = 0; i < n; ++i)
    w.set_pos(i, {static_cast<double>(pts[i].x), static_cast<double>(pts[i].y)});
  for (auto [u, v] : acc) w.add_edge(u, v);
  return w;
}

// ── meshes ──────────────────────────────────────────────────────────────────

// k x k squares split along one diagonal: (k+1)^2 vertices, 2k^2 triangles.
cell_complex square_mesh(int k) {
  auto id = [k](int r, int c) { return r * (k + 1) + c; };
  std::vector<std::array<int, 3>> tris;
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      tris.push_back({id(r, c), id(r, c + 1), id(r + 1, c + 1)});
      tris.push_back({id(r, c), id(r + 1, c + 1), id(r + 1, c)});
    }
  return complex_from_triangles((k + 1) * (k + 1), tris);
}

// Kuhn subdivision of the n^3 cube grid: 6 tetrahedra per cube.
cell_complex kuhn_ball(int n) {
  const int m = n + 1;
  auto id = [m](int x, int y, int z) { return (x * m + y) * m + z; };
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::array<int, 4>> tets;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (const auto& pm : perms) {
          int at[3] = {x, y, z};
          std::array<int, 4> t{};
          t[0] = id(at[0], at[1], at[2]);
          for (int s = 0; s < 3; ++s) {
            ++at[pm[s]];
            t[s + 1] = id(at[0], at[1], at[2]);
          }
          tets.push_back(t);
        }
  return complex_from_tetrahedra(m * m * m, tets);
}

// ── small utilities ─────────────────────────────────────────────────────────

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool spanning_tree_by_dsu(const window& w) {
  if (w.edge_count() != w.vertex_count() - 1) return false;
  dsu d(w.vertex_count());
  for (const auto& ed : w.edges())
    if (!d.join(ed.u, ed.v)) return false;
  return true;
}

std::string fmt(double v, int prec = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

// ── criterion 1: spanning-tree duality, exhaustively ────────────────────────

void c1_duality(gate& g) {
  timer t;
  std::mt19937 rng(20240817);
  int graphs = 0;
  long long subsets = 0, tree_pairs = 0, statement_checks = 0;

  while (graphs < 200 && g.ok) {
    auto maybe = random_embedded(rng, 3, 8, 13, 0.35, 1.0);
    if (!maybe) continue;
    const window w = *maybe;
    const treeing_result tr = planar_treeing(w, rotation_from_positions(w));
    const window& dg = tr.dual.g;
    const int n = w.vertex_count(), m = w.edge_count(), D = dg.vertex_count();

    std::vector<eid> dids;
    std::vector<std::pair<vid, vid>> dends;
    for (const auto& ed : dg.edges()) {
      dids.push_back(ed.id);
      dends.push_back({ed.u, ed.v});
    }
    const int M = static_cast<int>(dids.size());
    g.req(M <= 13, "dual edge count exceeds the enumeration cap");
    // both popcount targets coincide: dual tree size == edges leaving primal tree size
    g.req(D - 1 == m - (n - 1), "Euler mismatch between dual order and primal corank");
    if (!g.ok) break;

    std::map<eid, int> bit_of;
    for (int i = 0; i < M; ++i) bit_of[dids[i]] = i;
    struct pe {
      vid u, v;
      eid id;
    };
    std::vector<pe> pedges;
    for (const auto& ed : w.edges()) pedges.push_back({ed.u, ed.v, ed.id});

    const int target = D - 1;
    long long pairs_here = 0;
    for (std::uint32_t mask = 0; mask < (1u << M) && g.ok; ++mask) {
      ++subsets;
      bool lhs = false, rhs = false;
      if (std::popcount(mask) == target) {
        dsu du(D);
        lhs = true;
        for (int i = 0; i < M && lhs; ++i)
          if (mask >> i & 1) lhs = du.join(dends[i].first, dends[i].second);
        dsu pu(n);
        rhs = true;
        for (const auto& e : pedges) {
          auto it = bit_of.find(e.id);
          const bool removed = it != bit_of.end() && (mask >> it->second & 1);
          if (!removed && !pu.join(e.u, e.v)) {
            rhs = false;
            break;
          }
        }
      }
      g.req(lhs == rhs, "equivalence broken: dual-tree=" + std::to_string(lhs) +
                            " primal-tree=" + std::to_string(rhs) + " graph=" +
                            std::to_string(graphs) + " mask=" + std::to_string(mask));

      if (lhs || mask % 97 == 0) {
        std::vector<eid> sub;
        for (int i = 0; i < M; ++i)
          if (mask >> i & 1) sub.push_back(dids[i]);
        if (lhs) {
          ++pairs_here;
          const window h = ominus_star(w, tr.dual, sub);
          g.req(h.vertex_count() == n && spanning_tree_by_dsu(h),
                "carve of a dual spanning tree is not a primal spanning tree");
        }
        const duality_report rep = duality_check(w, tr.dual, sub);
        ++statement_checks;
        g.req(rep.prop1_agree && rep.prop3_agree, "duality statement self-check disagrees");
        if (std::popcount(mask) == target)
          g.req(rep.sub_one_ended_spanning == lhs, "escape-form verdict disagrees with DSU");
      }
    }
    tree_pairs += pairs_here;

    // independent side: enumerate primal spanning trees directly
    long long direct = 0;
    for (std::uint32_t pm = 0; pm < (1u << m); ++pm) {
      if (std::popcount(pm) != n - 1) continue;
      dsu pu(n);
      bool okp = true;
      int idx = 0;
      for (const auto& e : pedges) {
        if (pm >> idx & 1 && !pu.join(e.u, e.v)) {
          okp = false;
          break;
        }
        ++idx;
      }
      if (okp) ++direct;
    }
    g.req(direct == pairs_here, "primal spanning-tree count " + std::to_string(direct) +
                                    " != matched dual trees " + std::to_string(pairs_here));
    ++graphs;
  }

  g.req(t.s() < 10.0, "over the 10 s budget");
  g.detail = std::to_string(graphs) + " graphs, " + std::to_string(subsets) + " subsets, " +
             std::to_string(tree_pairs) + " tree pairs, " + std::to_string(statement_checks) +
             " statement checks";
}

// ── criterion 2: double dual identity ───────────────────────────────────────

window make_k4() {
  window w(4);
  w.set_pos(0, {0.0, 0.0});
  w.set_pos(1, {4.0, 0.0});
  w.set_pos(2, {2.0, 3.0});
  w.set_pos(3, {2.0, 1.0});
  w.add_edge(0, 1);
  w.add_edge(1, 2);
  w.add_edge(0, 2);
  w.add_edge(0, 3);
  w.add_edge(1, 3);
  w.add_edge(2, 3);
  return w;
}

window make_q3() {
  window w(8);
  const double outer[4][2] = {{0, 0}, {12, 0}, {12, 12}, {0, 12}};
  const double inner[4][2] = {{4, 4}, {8, 4}, {8, 8}, {4, 8}};
  for (int i = 0; i < 4; ++i) {
    w.set_pos(i, {outer[i][0], outer[i][1]});
    w.set_pos(4 + i, {inner[i][0], inner[i][1]});
  }
  for (int i = 0; i < 4; ++i) {
    w.add_edge(i, (i + 1) % 4);
    w.add_edge(4 + i, 4 + (i + 1) % 4);
    w.add_edge(i, 4 + i);
  }
  return w;
}

void c2_double_dual(gate& g) {
  timer t;
  auto certify = [&](const window& w, const std::string& name) {
    const facial_basis fb = facial_cycles(w, rotation_from_positions(w));
    const double_dual_result dd = double_dual(w, fb.basis);
    g.req(dd.isomorphic, name + ": no isomorphism certificate");
  };
  certify(make_k4(), "K4");
  certify(make_q3(), "Q3");

  std::mt19937 rng(424242);
  int accepted = 0, draws = 0;
  while (accepted < 50 && g.ok && draws < 50000) {
    ++draws;
    auto maybe = random_embedded(rng, 4, 12, 30, 0.6, 1.0);
    if (!maybe) continue;
    const window& w = *maybe;
    const auto blocks = biconnected_blocks(w);
    if (blocks.size() != 1 || static_cast<int>(blocks[0].size()) != w.edge_count()) continue;
    certify(w, "random#" + std::to_string(accepted));
    ++accepted;
  }
  g.req(accepted == 50, "only " + std::to_string(accepted) + " 2-connected instances found");
  g.req(t.s() < 5.0, "over the 5 s budget");
  g.detail = "K4, Q3, " + std::to_string(accepted) + " random 2-connected (" +
             std::to_string(draws) + " draws)";
}

// ── criterion 3: cycle-basis validation vs a rank oracle ────────────────────

bool oracle_simple_cycle(const window& w, const std::vector<eid>& es) {
  if (es.size() < 2) return false;
  for (eid e : es)
    if (!w.has_edge_id(e)) return false;
  if (std::set<eid>(es.begin(), es.end()).size() != es.size()) return false;
  std::map<vid, std::vector<vid>> adj;
  for (eid e : es) {
    const auto& ed = w.edge(e);
    adj[ed.u].push_back(ed.v);
    adj[ed.v].push_back(ed.u);
  }
  for (const auto& [v, nb] : adj)
    if (nb.size() != 2) return false;
  std::set<vid> seen{adj.begin()->first};
  std::vector<vid> stack{adj.begin()->first};
  while (!stack.empty()) {
    vid v = stack.back();
    stack.pop_back();
    for (vid u : adj[v])
      if (seen.insert(u).second) stack.push_back(u);
  }
  return seen.size() == adj.size();
}

void c3_basis_oracle(gate& g) {
  timer t;
  std::mt19937 rng(5150);
  int collections = 0, valid_seen = 0, invalid_seen = 0;

  auto random_cycle = [&](const window& w) -> std::optional<std::vector<eid>> {
    const int n = w.vertex_count();
    if (w.edge_count() == 0) return std::nullopt;
    vid start = std::uniform_int_distribution<int>(0, n - 1)(rng);
    std::vector<int> at_pos(n, -1);
    at_pos[start] = 0;
    std::vector<vid> path{start};
    std::vector<eid> via;
    for (int step = 0; step < 4 * n + 8; ++step) {
      const auto& inc = w.incident(path.back());
      if (inc.empty()) return std::nullopt;
      int k = std::uniform_int_distribution<int>(0, static_cast<int>(inc.size()) - 1)(rng);
      for (int dodge = 0; dodge < 6 && !via.empty() && inc[k].e == via.back() && inc.size() > 1;
           ++dodge)
        k = std::uniform_int_distribution<int>(0, static_cast<int>(inc.size()) - 1)(rng);
      const vid nxt = inc[k].other;
      if (at_pos[nxt] >= 0) {
        std::vector<eid> cyc(via.begin() + at_pos[nxt], via.end());
        cyc.push_back(inc[k].e);
        std::sort(cyc.begin(), cyc.end());
        return cyc;
      }
      at_pos[nxt] = static_cast<int>(path.size());
      path.push_back(nxt);
      via.push_back(inc[k].e);
    }
    return std::nullopt;
  };

  while (collections < 500 && g.ok) {
    const int n = std::uniform_int_distribution<int>(2, 10)(rng);
    const int m_goal = std::uniform_int_distribution<int>(0, 14)(rng);
    window w(n);
    for (int i = 0; i < m_goal; ++i) {
      if (w.edge_count() > 0 && rng() % 100 < 15) {
        const auto& ed = w.edge(static_cast<eid>(rng() % w.edge_count()));
        w.add_edge(ed.u, ed.v);  // parallel strand
        continue;
      }
      const int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u != v) w.add_edge(std::min(u, v), std::max(u, v));
    }

    two_basis b;
    const int k = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int j = 0; j < k; ++j) {
      auto cyc = random_cycle(w);
      if (!cyc) continue;
      std::vector<eid> edges = *cyc;
      const int r = static_cast<int>(rng() % 100);
      if (r < 55) {
        // keep the honest extraction
      } else if (r < 65 && !edges.empty()) {
        edges.erase(edges.begin() + rng() % edges.size());
      } else if (r < 75 && !edges.empty()) {
        edges.push_back(edges[rng() % edges.size()]);
      } else if (r < 85) {
        edges.push_back(static_cast<eid>(rng() % (w.edge_count() + 3)));
      } else if (r < 92 && !edges.empty()) {
        edges[rng() % edges.size()] = static_cast<eid>(rng() % std::max(1, w.edge_count()));
      } else {
        std::sort(edges.begin(), edges.end());
        b.cycles.push_back({edges});  // deliberate repeat: multiplicity pressure
      }
      std::sort(edges.begin(), edges.end());
      b.cycles.push_back({std::move(edges)});
    }

    // oracle verdict, independently staged like the contract reads
    bool simple_ok = true;
    for (const auto& c : b.cycles)
      if (!oracle_simple_cycle(w, c.edges)) simple_ok = false;
    bool mult_ok = true;
    std::map<eid, int> mult;
    for (const auto& c : b.cycles)
      for (eid e : c.edges)
        if (++mult[e] > 2) mult_ok = false;
    int my_rank = -1, my_expected = -1;
    if (simple_ok && mult_ok) {
      std::vector<std::uint64_t> rows;
      for (const auto& c : b.cycles) {
        std::uint64_t row = 0;
        for (eid e : c.edges) row |= 1ull << e;
        rows.push_back(row);
      }
      my_rank = mask_rank(rows);
      dsu comp(n);
      int parts = n;
      for (const auto& ed : w.edges())
        if (comp.join(ed.u, ed.v)) --parts;
      my_expected = w.edge_count() - n + parts;
    }
    const bool oracle = simple_ok && mult_ok && my_rank == my_expected;

    const basis_report rep = validate_two_basis(w, b);
    g.req(rep.valid == oracle, "verdict disagreement at collection " + std::to_string(collections) +
                                   ": library=" + std::to_string(rep.valid) +
                                   " oracle=" + std::to_string(oracle));
    if (simple_ok && mult_ok) {
      g.req(rep.rank == my_rank, "rank disagreement: library " + std::to_string(rep.rank) +
                                     " vs oracle " + std::to_string(my_rank));
      g.req(rep.expected_rank == my_expected,
            "corank disagreement: library " + std::to_string(rep.expected_rank) + " vs oracle " +
                std::to_string(my_expected));
    }
    (oracle ? valid_seen : invalid_seen) += 1;
    ++collections;
  }

  g.req(valid_seen > 50 && invalid_seen > 50, "verdict mix too lopsided to be meaningful");
  g.req(t.s() < 5.0, "over the 5 s budget");
  g.detail = std::to_string(collections) + " collections (" + std::to_string(valid_seen) +
             " valid / " + std::to_string(invalid_seen) + " invalid), 0 disagreements";
}

// ── criterion 4: layered escape forests with doubling radii ─────────────────

void c4_layered(gate& g, const window& w, const std::string& name, double budget_s,
                std::string& note) {
  timer t;
  const layered_nets_t nets = layered_nets(w);
  const int depth = static_cast<int>(nets.nets.size());
  for (int k = 0; k < depth; ++k)
    g.req(nets.radii[k] == (1 << (k + 1)),
          name + ": net radius " + std::to_string(nets.radii[k]) + " at level " +
              std::to_string(k + 1) + " is not 2^" + std::to_string(k + 1));

  const parent_forest f = layered_subforest(w, nets);
  const forest_check chk = validate_forest(w, f, /*require_spanning=*/true);
  g.req(chk.ok, name + ": forest invariants failed: " + chk.reason);

  const int n = w.vertex_count();
  std::vector<char> fed_same(n, 0);  // v receives a same-tag step from some child
  for (vid v = 0; v < n; ++v) {
    if (!f.member(v) || !f.has_parent(v)) continue;
    const vid p = f.parent(v);
    if (f.member(p) && f.has_parent(p) && f.layer(p) == f.layer(v)) fed_same[p] = 1;
  }
  int longest_final = 0;
  for (vid v = 0; v < n; ++v) {
    if (!f.member(v) || !f.has_parent(v) || fed_same[v]) continue;
    const int tag = f.layer(v);
    g.req(tag >= 0 && tag <= depth, name + ": layer tag out of range");
    int len = 0;
    vid u = v;
    while (f.member(u) && f.has_parent(u) && f.layer(u) == tag) {
      ++len;
      u = f.parent(u);
    }
    if (tag < depth)
      g.req(len <= 2 * nets.radii[tag], name + ": layer-" + std::to_string(tag) + " run of " +
                                            std::to_string(len) + " exceeds " +
                                            std::to_string(2 * nets.radii[tag]));
    else
      longest_final = std::max(longest_final, len);
  }
  g.req(t.s() < budget_s, name + ": over the " + fmt(budget_s, 0) + " s budget");
  note = name + " |V|=" + std::to_string(n) + " levels=" + std::to_string(depth);
}

void c4_layered_all(gate& g) {
  std::string a, b;
  c4_layered(g, gen_grid(64, 64), "grid64", 5.0, a);
  c4_layered(g, gen_pq_tiling(4, 5, 7), "{4,5}-ball7", 5.0, b);
  g.detail = a + "; " + b;
}

// ── criterion 5: two-ended path obstruction ─────────────────────────────────

void c5_obstruction(gate& g) {
  int refused = 0, cases = 0;
  for (int m = 7; m <= 51; ++m) {
    ++cases;
    const window w = gen_path(m);
    const ends_report rep = classify_ends(w, m / 2);
    g.req(rep.label == end_class::two,
          "P" + std::to_string(m) + " classified " + end_class_name(rep.label));
    bool refusal = false;
    try {
      one_ended_forest(w);
    } catch (const error& e) {
      refusal = e.code() == errc::two_ended_obstruction;
    }
    g.req(refusal, "P" + std::to_string(m) + ": pipeline did not refuse");
    if (refusal) ++refused;
  }
  g.detail = std::to_string(refused) + "/" + std::to_string(cases) + " paths refused";
}

// ── criterion 6: exact isoperimetric ratios on K_n and C_n ──────────────────

void c6_exact_iso(gate& g) {
  for (int n = 3; n <= 12 && g.ok; ++n) {
    for (int family = 0; family < 2; ++family) {
      const window w = family == 0 ? gen_complete(n) : gen_cycle(n);
      const std::string name = (family == 0 ? "K" : "C") + std::to_string(n);
      const iso_certificate cert = iso_constant_exact(w);
      g.req(cert.num == 1 && cert.den == n - 1,
            name + ": got " + std::to_string(cert.num) + "/" + std::to_string(cert.den));

      // brute force over every proper nonempty vertex set
      std::vector<std::uint32_t> nbr(n, 0);
      for (vid v = 0; v < n; ++v)
        for (const auto& inc : w.incident(v)) nbr[v] |= 1u << inc.other;
      long long bn = -1, bd = 1;
      for (std::uint32_t s = 1; s < (1u << n) - 1u; ++s) {
        std::uint32_t halo = 0, scan = s;
        while (scan) {
          const int v = std::countr_zero(scan);
          scan &= scan - 1;
          halo |= nbr[v] & ~s;
        }
        const long long cut = std::popcount(halo), size = std::popcount(s);
        if (bn < 0 || cut * bd < bn * size) {
          bn = cut;
          bd = size;
        }
      }
      g.req(cert.num * bd == bn * cert.den, name + ": brute force got " + std::to_string(bn) + "/" +
                                                std::to_string(bd));
    }
  }
  g.detail = "K_n and C_n = 1/(n-1) for n = 3..12, brute-forced";
}

// ── criterion 7: hyperfinite cover on the torus, refusal on an expander ─────

void c7_cover(gate& g) {
  timer t;
  const window torus = gen_torus(64, 64);
  const int N = torus.vertex_count();
  const cover_result cv = hyperfinite_cover(torus, 0.1);
  g.req(cv.success, "torus cover failed: " + cv.reason);
  g.req(10 * static_cast<long long>(cv.a.size()) >= 9 * static_cast<long long>(N),
        "torus coverage below 0.9");

  std::vector<int> chunk_of(N, -1);
  long long chunk_total = 0;
  bool overlap = false;
  for (std::size_t i = 0; i < cv.chunks.size(); ++i)
    for (vid v : cv.chunks[i]) {
      if (chunk_of[v] != -1) overlap = true;
      chunk_of[v] = static_cast<int>(i);
      ++chunk_total;
    }
  g.req(!overlap, "chunks overlap");
  std::vector<char> in_a(N, 0);
  for (vid v : cv.a) in_a[v] = 1;
  bool union_ok = chunk_total == static_cast<long long>(cv.a.size());
  for (vid v = 0; v < N && union_ok; ++v)
    if ((chunk_of[v] >= 0) != (in_a[v] != 0)) union_ok = false;
  g.req(union_ok, "A is not the disjoint chunk union");

  for (const auto& ed : torus.edges())
    if (chunk_of[ed.u] >= 0 && chunk_of[ed.v] >= 0 && chunk_of[ed.u] != chunk_of[ed.v]) {
      g.req(false, "edge joins two distinct chunks");
      break;
    }

  // finiteness per the default either-of proxy: boundary-free or within cap
  const int cap = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(N))));
  dsu comp(N);
  for (const auto& ed : torus.edges())
    if (in_a[ed.u] && in_a[ed.v]) comp.join(ed.u, ed.v);
  std::map<int, std::pair<int, bool>> comps;  // root -> (size, touches boundary)
  for (vid v = 0; v < N; ++v)
    if (in_a[v]) {
      auto& e = comps[comp.find(v)];
      ++e.first;
      if (torus.boundary(v)) e.second = true;
    }
  for (const auto& [root, e] : comps)
    g.req(!e.second || e.first <= cap, "an induced component is not finite-flagged");

  std::set<vid> bd;
  for (const auto& ed : torus.edges()) {
    if (in_a[ed.u] && !in_a[ed.v]) bd.insert(ed.v);
    if (in_a[ed.v] && !in_a[ed.u]) bd.insert(ed.u);
  }
  g.req(bd == std::set<vid>(cv.boundary.begin(), cv.boundary.end()),
        "reported boundary mismatches the recount");
  g.req(10 * static_cast<long long>(bd.size()) <= static_cast<long long>(cv.a.size()),
        "boundary exceeds eps * |A|");

  // expander side: refusal, consistent with the greedy isoperimetric bound
  const window exp = gen_random_regular(2000, 3, 11);
  iso_params capped;
  capped.mode = finiteness_mode::cap;
  const double eps = 0.05;
  const cover_result cv2 = hyperfinite_cover(exp, eps, capped);
  g.req(!cv2.success, "expander cover unexpectedly succeeded");
  g.req(!cv2.reason.empty(), "failure carries no reason");
  const iso_certificate h = iso_constant_greedy(exp, 30, 11, capped);
  g.req(h.ratio > eps / (1.0 - eps),
        "greedy ratio " + fmt(h.ratio, 4) + " not above the cover threshold " +
            fmt(eps / (1.0 - eps), 4));

  g.req(t.s() < 30.0, "over the 30 s budget");
  g.detail = "torus chunks=" + std::to_string(cv.chunks.size()) + " coverage=" +
             fmt(cv.coverage) + "; expander refused, greedy ratio " + fmt(h.ratio, 3);
}

// ── criterion 8: small section through a layered forest ─────────────────────

void c8_section(gate& g) {
  const window w = gen_grid(33, 33);
  const int n = w.vertex_count();
  const parent_forest f = layered_subforest(w, layered_nets(w));
  g.req(validate_forest(w, f, true).ok, "layered forest invalid");

  std::vector<int> root(n, -1);
  std::function<int(vid)> find_root = [&](vid v) -> int {
    std::vector<vid> chain;
    while (root[v] < 0 && f.member(v) && f.has_parent(v)) {
      chain.push_back(v);
      v = f.parent(v);
    }
    const int r = root[v] >= 0 ? root[v] : v;
    root[v] = r;
    for (vid u : chain) root[u] = r;
    return r;
  };

  const std::vector<eid> vias = f.edge_set();
  const std::set<eid> via_set(vias.begin(), vias.end());
  std::map<int, eid> least_cross;  // tree root -> least incident non-forest edge
  for (const auto& ed : w.edges()) {
    if (via_set.count(ed.id)) continue;
    for (vid end : {ed.u, ed.v}) {
      if (!f.member(end)) continue;
      const int r = find_root(end);
      auto it = least_cross.find(r);
      if (it == least_cross.end() || ed.id < it->second) least_cross[r] = ed.id;
    }
  }
  std::set<eid> cross_set;
  for (const auto& [r, e] : least_cross) cross_set.insert(e);
  std::vector<eid> cross(cross_set.begin(), cross_set.end());
  g.req(!cross.empty(), "no cross edges found");

  const section_result res = small_section(w, f, cross, 0.2);
  g.req(5 * static_cast<long long>(res.a.size()) < n,
        "|A| = " + std::to_string(res.a.size()) + " is not below 0.2 * " + std::to_string(n));
  for (std::size_t i = 1; i < res.prune_sizes.size(); ++i)
    g.req(res.prune_sizes[i] < res.prune_sizes[i - 1], "pruning sequence is not strictly nested");
  g.req(res.rounds == static_cast<int>(res.prune_sizes.size()), "round count mismatch");
  g.req(res.longest_path <= res.rounds - 1,
        "connector path " + std::to_string(res.longest_path) + " exceeds rounds-1");
  g.detail = "trees=" + std::to_string(least_cross.size()) + " |A|=" +
             std::to_string(res.a.size()) + "/" + std::to_string(n) + " rounds=" +
             std::to_string(res.rounds) + " longest path=" + std::to_string(res.longest_path);
}

// ── criterion 9: hyperbolic Poisson pipeline ────────────────────────────────

void c9_hyperbolic(gate& g) {
  timer t;
  const double R = 4.0;
  const auto sites = poisson_sites(R, 6.0, 0.05, 7);
  const int n = static_cast<int>(sites.size());
  g.req(n >= 700 && n <= 1400, "site count " + std::to_string(n) + " far from 10^3");

  const htiling tl = dirichlet_cells(sites, R);
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    const cplx k = klein_of(tl.sites[i].z);
    const hcell& cell = tl.cells[i];
    const int m = static_cast<int>(cell.corners.size());
    bool ok = m >= 2;
    for (int s = 0; s < m && ok; ++s) {
      const vec2 a = cell.corners[s], b = cell.corners[(s + 1) % m];
      if (cell.arc_after[s]) {
        ok = std::abs(k) < std::tanh(R);  // window-rim side in Klein coordinates
      } else {
        ok = (b.x - a.x) * (k.imag() - a.y) - (b.y - a.y) * (k.real() - a.x) > 1e-12;
      }
    }
    if (ok) ++inside;
  }
  g.req(inside == n, std::to_string(n - inside) + " sites not strictly inside their cells");

  two_basis corner;
  corner.cycles = tl.corner_basis;
  const basis_report rep = validate_two_basis(tl.dual, corner);
  g.req(rep.valid, "corner cycles fail 2-basis validation: " + rep.reason);

  const treeing_result tr = tiling_treeing(tl);
  g.req(tr.tree.vertex_count() == n && spanning_tree_by_dsu(tr.tree),
        "treeing is not a spanning tree of the cell adjacency");

  // the rim-free part stays an exact forest: edges = vertices - components
  const auto interior = tl.dual.interior_vertices();
  std::vector<char> keep(n, 0);
  for (vid v : interior) keep[v] = 1;
  int e_int = 0;
  for (const auto& ed : tr.tree.edges())
    if (keep[ed.u] && keep[ed.v]) ++e_int;
  const window wi = tr.tree.induced_same_ids(keep);
  int comps = 0;
  for (const auto& comp : wi.components())
    if (keep[comp.front()]) ++comps;
  g.req(e_int == static_cast<int>(interior.size()) - comps && cycle_space_rank(wi) == 0,
        "interior part of the tree is not an exact forest");

  g.req(t.s() < 30.0, "over the 30 s budget");
  g.detail = std::to_string(n) + " sites, tree edges=" + std::to_string(tr.tree.edge_count()) +
             ", interior " + std::to_string(e_int) + "=" + std::to_string(interior.size()) + "-" +
             std::to_string(comps);
}

// ── criterion 10: carved complexes are contractible and collapse ────────────

void c10_collapse(gate& g) {
  timer t;
  long long collapses = 0;
  auto run_mesh = [&](const cell_complex& c, const std::string& name) {
    const complex_dual d = build_complex_dual(c);
    const int dd = c.dim, T = c.cells(dd);
    for (std::uint64_t seed = 1; seed <= 5 && g.ok; ++seed) {
      const parent_forest f = random_weight_forest(d.g, seed);
      g.req(validate_forest(d.g, f, true).ok, name + ": dual forest not spanning");

      const cell_complex carved = ominus_star_complex(c, f);
      const std::vector<int> betti = homology_gf2(carved);
      for (std::size_t i = 0; i < betti.size(); ++i)
        g.req(betti[i] == 0, name + " seed " + std::to_string(seed) + ": reduced betti_" +
                                 std::to_string(i) + " = " + std::to_string(betti[i]));

      std::vector<std::vector<int>> seeds = {{0}, {T / 2}, {T - 1}};
      std::vector<int> all(T);
      for (int i = 0; i < T; ++i) all[i] = i;
      seeds.push_back(all);
      for (const auto& tops : seeds) {
        cell_set s(dd + 1);
        s[dd] = tops;
        const cell_set k = back_orbit_saturate(c, f, s);
        const collapse_result res = collapse_retract(c, f, k);
        ++collapses;
        g.req(res.steps.size() == k[dd].size() && res.remainder[dd].empty(),
              name + ": collapse removed " + std::to_string(res.steps.size()) + " of " +
                  std::to_string(k[dd].size()) + " top cells");
      }
    }
  };
  const cell_complex disk = square_mesh(22);
  run_mesh(disk, "disk");
  const cell_complex ball = kuhn_ball(9);
  run_mesh(ball, "ball");
  g.req(t.s() < 60.0, "over the 60 s budget");
  g.detail = "disk " + std::to_string(disk.cells(2)) + " tris + ball " +
             std::to_string(ball.cells(3)) + " tets, 5 forests each, " +
             std::to_string(collapses) + " full collapses";
}

// ── criterion 11: fixed-price anchor on random regular graphs ───────────────

void c11_fixed_price(gate& g) {
  std::string parts;
  for (int deg = 3; deg <= 5; ++deg) {
    const window w = gen_random_regular(10000, deg, 42);
    const double cost = treeing_cost_stat(w);
    g.req(cost == deg / 2.0, "degree " + std::to_string(deg) + ": edge/vertex ratio " +
                                 fmt(cost, 6) + " != " + fmt(deg / 2.0, 1));

    // a radius-3 ball is tree-like iff its induced subgraph is a tree
    const int n = w.vertex_count();
    std::vector<int> dist(n, -1);
    std::vector<vid> ball;
    int good = 0;
    for (vid v = 0; v < n; ++v) {
      ball.clear();
      ball.push_back(v);
      dist[v] = 0;
      for (std::size_t at = 0; at < ball.size(); ++at) {
        const vid u = ball[at];
        if (dist[u] == 3) continue;
        for (const auto& inc : w.incident(u))
          if (dist[inc.other] < 0) {
            dist[inc.other] = dist[u] + 1;
            ball.push_back(inc.other);
          }
      }
      long long inside = 0;
      for (vid u : ball)
        for (const auto& inc : w.incident(u))
          if (dist[inc.other] >= 0 &&
              (dist[inc.other] > dist[u] || (dist[inc.other] == dist[u] && inc.other > u)))
            ++inside;
      if (inside == static_cast<long long>(ball.size()) - 1) ++good;
      for (vid u : ball) dist[u] = -1;
    }
    const double frac = good / static_cast<double>(n);
    g.req(frac >= 0.95, "degree " + std::to_string(deg) + ": tree-like balls " +
                            std::to_string(good) + "/" + std::to_string(n) + " = " +
                            fmt(100.0 * frac) + "% (need >= 95%)");
    if (!parts.empty()) parts += ", ";
    parts += "deg" + std::to_string(deg) + " " + fmt(100.0 * frac, 1) + "%";
  }
  g.detail = "cost n/2 exact; tree-like " + parts;
}

// ── criterion 12: byte-identical reruns through the CLI ─────────────────────

void c12_determinism(gate& g) {
  namespace fs = std::filesystem;
  const std::string cli = TREEFORGE_CLI_PATH;
  const fs::path dir = fs::temp_directory_path() / "treeforge_acceptance";
  fs::create_directories(dir);
  auto at = [&](const char* f) { return (dir / f).string(); };

  struct pipeline {
    std::string name;
    std::vector<std::string> cmds;
    std::vector<std::string> artifacts;
  };
  std::vector<pipeline> pipes;
  pipes.push_back({"grid+forest",
                   {cli + " gen --kind grid --rows 17 --cols 17 --out " + at("g.json") +
                        " --report " + at("g_rep.json"),
                    cli + " forest --mode layered --in " + at("g.json") + " --out " + at("f.json") +
                        " --report " + at("f_rep.json")},
                   {at("g.json"), at("g_rep.json"), at("f.json"), at("f_rep.json")}});
  pipes.push_back({"poisson tile+svg",
                   {cli + " tile --poisson 6 3 --r0 0.05 --seed 9 --svg " + at("t.svg") +
                        " --out " + at("t.json") + " --report " + at("t_rep.json")},
                   {at("t.svg"), at("t.json"), at("t_rep.json")}});
  pipes.push_back({"seeded greedy iso",
                   {cli + " gen --kind regular --n 500 --degree 3 --seed 5 --out " + at("reg.json"),
                    cli + " iso --greedy --restarts 5 --seed 3 --mode cap --in " + at("reg.json") +
                        " --report " + at("i_rep.json")},
                   {at("reg.json"), at("i_rep.json")}});
  pipes.push_back({"tiling treeing verify",
                   {cli + " tile --pq 4 5 --layers 4 --out " + at("pq.json") + " --report " +
                        at("pq_rep.json"),
                    cli + " treeing --verify --in " + at("pq.json") + " --report " +
                        at("v_rep.json")},
                   {at("pq.json"), at("pq_rep.json"), at("v_rep.json")}});

  int artifacts = 0;
  for (const auto& p : pipes) {
    std::map<std::string, std::string> first;
    for (int round = 0; round < 2 && g.ok; ++round) {
      for (const auto& a : p.artifacts) fs::remove(a);
      for (const auto& cmd : p.cmds) {
        const int rc = std::system((cmd + " > /dev/null 2> /dev/null").c_str());
        g.req(rc == 0, p.name + ": command exited " + std::to_string(rc));
      }
      for (const auto& a : p.artifacts) {
        const std::string bytes = slurp(a);
        g.req(!bytes.empty(), p.name + ": empty artifact " + a);
        if (round == 0) {
          first[a] = bytes;
        } else {
          g.req(first[a] == bytes, p.name + ": rerun changed " + fs::path(a).filename().string());
          ++artifacts;
        }
      }
    }
  }
  g.detail = std::to_string(pipes.size()) + " pipelines, " + std::to_string(artifacts) +
             " artifacts byte-stable";
}

}  // namespace

int main() {
  std::printf("treeforge acceptance gate\n");
  run_check(1, "spanning-tree duality", c1_duality);
  run_check(2, "double dual identity", c2_double_dual);
  run_check(3, "2-basis vs rank oracle", c3_basis_oracle);
  run_check(4, "layered escape forests", c4_layered_all);
  run_check(5, "two-ended refusal", c5_obstruction);
  run_check(6, "exact iso ratios", c6_exact_iso);
  run_check(7, "hyperfinite cover", c7_cover);
  run_check(8, "small section", c8_section);
  run_check(9, "hyperbolic pipeline", c9_hyperbolic);
  run_check(10, "complex collapse", c10_collapse);
  run_check(11, "fixed-price anchor", c11_fixed_price);
  run_check(12, "rerun determinism", c12_determinism);
  std::printf("%d of 12 criteria pass\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
