#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "treeforge/core/errors.hpp"

namespace treeforge {

using vid = int;  // vertex id, dense 0..n-1
using eid = int;  // edge id, stable but not necessarily dense

constexpr int kNone = -1;

struct vec2 {
  double x = 0.0, y = 0.0;
};

// A finite observation window of a (possibly infinite) graph.  Vertices carry a
// boundary flag meaning "the graph continues past this vertex"; edges have
// stable ids so subgraphs keep their identity under edge removal.  Multi-edges
// are allowed, self-loops are not.
class window {
 public:
  struct vertex_data {
    bool boundary = false;
    std::optional<vec2> pos;
  };
  struct edge_data {
    eid id = kNone;
    vid u = kNone, v = kNone;
  };
  struct incidence {
    eid e;
    vid other;
  };

  window() = default;
  explicit window(int n) : verts_(n), adj_(n) {}

  int vertex_count() const { return static_cast<int>(verts_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  vid add_vertex(bool boundary = false, std::optional<vec2> pos = std::nullopt) {
    verts_.push_back({boundary, pos});
    adj_.push_back({});
    return vertex_count() - 1;
  }

  // Adds an edge with an explicit id (must be fresh) or the next unused one.
  eid add_edge(vid u, vid v, eid id = kNone) {
    require(u >= 0 && u < vertex_count() && v >= 0 && v < vertex_count(), errc::bad_params,
            "edge endpoint out of range");
    require(u != v, errc::bad_params, "self-loops are not allowed");
    if (id == kNone) id = next_eid_;
    require(edge_index(id) == kNone, errc::bad_params, "duplicate edge id");
    next_eid_ = std::max(next_eid_, id + 1);
    if (id >= static_cast<int>(eindex_.size())) eindex_.resize(id + 1, kNone);
    eindex_[id] = edge_count();
    edges_.push_back({id, u, v});
    adj_[u].push_back({id, v});
    adj_[v].push_back({id, u});
    dirty_ = true;
    return id;
  }

  bool boundary(vid v) const { return verts_[v].boundary; }
  void set_boundary(vid v, bool b) { verts_[v].boundary = b; }
  const std::optional<vec2>& pos(vid v) const { return verts_[v].pos; }
  void set_pos(vid v, vec2 p) { verts_[v].pos = p; }

  bool has_edge_id(eid e) const { return edge_index(e) != kNone; }
  const edge_data& edge(eid e) const {
    int i = edge_index(e);
    require(i != kNone, errc::bad_params, "unknown edge id " + std::to_string(e));
    return edges_[i];
  }
  // Edges in insertion order; ids ascend when auto-assigned.
  const std::vector<edge_data>& edges() const { return edges_; }

  // Incidences sorted by edge id: deterministic iteration everywhere.
  const std::vector<incidence>& incident(vid v) const {
    sort_adj();
    return adj_[v];
  }
  int degree(vid v) const { return static_cast<int>(adj_[v].size()); }

  vid other_end(eid e, vid v) const {
    const edge_data& ed = edge(e);
    return ed.u == v ? ed.v : ed.u;
  }

  std::vector<vid> boundary_vertices() const {
    std::vector<vid> out;
    for (vid v = 0; v < vertex_count(); ++v)
      if (boundary(v)) out.push_back(v);
    return out;
  }
  std::vector<vid> interior_vertices() const {
    std::vector<vid> out;
    for (vid v = 0; v < vertex_count(); ++v)
      if (!boundary(v)) out.push_back(v);
    return out;
  }

  // Component label per vertex; labels are 0..c-1 in order of least member id.
  std::vector<int> component_labels() const {
    std::vector<int> label(vertex_count(), kNone);
    int next = 0;
    for (vid s = 0; s < vertex_count(); ++s) {
      if (label[s] != kNone) continue;
      label[s] = next;
      std::queue<vid> q;
      q.push(s);
      while (!q.empty()) {
        vid v = q.front();
        q.pop();
        for (const incidence& inc : incident(v))
          if (label[inc.other] == kNone) {
            label[inc.other] = next;
            q.push(inc.other);
          }
      }
      ++next;
    }
    return label;
  }

  // Vertex sets per component, each ascending, ordered by least member id.
  std::vector<std::vector<vid>> components() const {
    std::vector<int> label = component_labels();
    int c = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
    std::vector<std::vector<vid>> out(c);
    for (vid v = 0; v < vertex_count(); ++v) out[label[v]].push_back(v);
    return out;
  }

  int component_count() const {
    std::vector<int> label = component_labels();
    return label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  }

  // BFS distances from a source set; unreachable = -1.
  std::vector<int> bfs_distances(const std::vector<vid>& sources) const {
    std::vector<int> dist(vertex_count(), kNone);
    std::queue<vid> q;
    for (vid s : sources)
      if (dist[s] == kNone) {
        dist[s] = 0;
        q.push(s);
      }
    while (!q.empty()) {
      vid v = q.front();
      q.pop();
      for (const incidence& inc : incident(v))
        if (dist[inc.other] == kNone) {
          dist[inc.other] = dist[v] + 1;
          q.push(inc.other);
        }
    }
    return dist;
  }
  std::vector<int> bfs_distances(vid source) const { return bfs_distances(std::vector<vid>{source}); }

  // Max finite BFS distance from v (eccentricity within v's component).
  int eccentricity(vid v) const {
    std::vector<int> d = bfs_distances(v);
    int m = 0;
    for (int x : d) m = std::max(m, x);
    return m;
  }

  // Copy without the given edges (vertex set unchanged, ids stable).
  window remove_edges(const std::vector<eid>& victims) const {
    std::vector<char> kill(eindex_.size(), 0);
    for (eid e : victims) {
      require(has_edge_id(e), errc::unknown_dual_edge, "edge id " + std::to_string(e) + " not in window");
      kill[e] = 1;
    }
    window out;
    out.verts_ = verts_;
    out.adj_.resize(verts_.size());
    for (const edge_data& ed : edges_)
      if (!kill[ed.id]) out.add_edge(ed.u, ed.v, ed.id);
    return out;
  }

  // Subgraph induced on `keep` with the SAME dense vertex ids (vertices outside
  // keep become isolated).  Used where identity maps matter more than
  // compactness.
  window induced_same_ids(const std::vector<char>& keep) const {
    window out;
    out.verts_ = verts_;
    out.adj_.resize(verts_.size());
    for (const edge_data& ed : edges_)
      if (keep[ed.u] && keep[ed.v]) out.add_edge(ed.u, ed.v, ed.id);
    return out;
  }

 private:
  int edge_index(eid e) const {
    if (e < 0 || e >= static_cast<int>(eindex_.size())) return kNone;
    return eindex_[e];
  }
  void sort_adj() const {
    if (!dirty_) return;
    for (auto& lst : adj_)
      std::sort(lst.begin(), lst.end(), [](const incidence& a, const incidence& b) { return a.e < b.e; });
    dirty_ = false;
  }

  std::vector<vertex_data> verts_;
  std::vector<edge_data> edges_;
  std::vector<int> eindex_;
  mutable std::vector<std::vector<incidence>> adj_;
  mutable bool dirty_ = false;
  eid next_eid_ = 0;
};

}  // namespace treeforge
