#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"
#include "treeforge/planar/two_basis.hpp"

namespace treeforge {

// Combinatorial embedding: for each vertex the cyclic order of incident edges.
struct rotation_system {
  std::vector<std::vector<eid>> order;  // order[v] = incident edge ids, cyclic
};

// Rotation from vertex positions: counterclockwise angular order.  Parallel
// edges tie on angle; the tie is broken ascending by id at the lower-id
// endpoint and descending at the other, which makes each parallel pair bound
// its own 2-gon face.
inline rotation_system rotation_from_positions(const window& w) {
  rotation_system rot;
  rot.order.resize(w.vertex_count());
  for (vid v = 0; v < w.vertex_count(); ++v) {
    require(w.pos(v).has_value(), errc::bad_params,
            "vertex " + std::to_string(v) + " has no position");
  }
  for (vid v = 0; v < w.vertex_count(); ++v) {
    struct slot {
      double angle;
      vid other;
      eid e;
      bool flip;
    };
    std::vector<slot> slots;
    for (const auto& inc : w.incident(v)) {
      const vec2 a = *w.pos(v), b = *w.pos(inc.other);
      slots.push_back({std::atan2(b.y - a.y, b.x - a.x), inc.other, inc.e, v > inc.other});
    }
    std::sort(slots.begin(), slots.end(), [](const slot& p, const slot& q) {
      if (p.angle != q.angle) return p.angle < q.angle;
      if (p.other != q.other) return p.other < q.other;
      return p.flip ? p.e > q.e : p.e < q.e;
    });
    for (const slot& s : slots) rot.order[v].push_back(s.e);
  }
  return rot;
}

// One face of an embedding: the directed darts (edge, tail) of its boundary
// walk, plus the edge set.  A dart (e, v) leaves v along e.
struct face_walk {
  std::vector<std::pair<eid, vid>> darts;
  std::vector<eid> edges;   // ascending, deduplicated
  bool simple = false;      // simple closed cycle (no repeated vertex, no repeated edge)
};

// Traces all faces of the rotation system: every dart is used exactly once.
// Successor rule: arriving at v along e, leave along the cyclic predecessor of
// e in order[v] (the first edge clockwise from the arrival direction).  With
// counterclockwise rotations, bounded faces come out with positive signed area
// and the unbounded face negative.
inline std::vector<face_walk> trace_faces(const window& w, const rotation_system& rot) {
  require(static_cast<int>(rot.order.size()) == w.vertex_count(), errc::bad_params,
          "rotation system size mismatch");
  std::map<eid, int> pos_at_u, pos_at_v;  // position of e within order[endpoint]
  for (vid v = 0; v < w.vertex_count(); ++v) {
    require(static_cast<int>(rot.order[v].size()) == w.degree(v), errc::bad_params,
            "rotation at vertex " + std::to_string(v) + " misses incidences");
    for (int i = 0; i < static_cast<int>(rot.order[v].size()); ++i) {
      eid e = rot.order[v][i];
      const auto& ed = w.edge(e);
      require(ed.u == v || ed.v == v, errc::bad_params, "rotation lists foreign edge");
      (ed.u == v ? pos_at_u : pos_at_v)[e] = i;
    }
  }

  auto successor = [&](eid e, vid at) -> eid {
    const auto& ord = rot.order[at];
    int i = (w.edge(e).u == at ? pos_at_u : pos_at_v).at(e);
    return ord[(i + ord.size() - 1) % ord.size()];
  };

  std::set<std::pair<eid, vid>> seen;  // darts already traced
  std::vector<face_walk> faces;
  for (const auto& ed : w.edges()) {
    for (vid tail : {ed.u, ed.v}) {
      if (seen.count({ed.id, tail})) continue;
      face_walk f;
      eid e = ed.id;
      vid at = tail;
      do {
        seen.insert({e, at});
        f.darts.push_back({e, at});
        vid head = w.other_end(e, at);
        e = successor(e, head);
        at = head;
      } while (!(e == ed.id && at == tail));
      std::set<vid> vs;
      std::set<eid> es;
      f.simple = true;
      for (auto [fe, fv] : f.darts) {
        if (!vs.insert(fv).second || !es.insert(fe).second) f.simple = false;
      }
      f.edges.assign(es.begin(), es.end());
      faces.push_back(std::move(f));
    }
  }
  return faces;
}

// Twice the signed area of the face polygon (positions required).
inline double face_signed_area2(const window& w, const face_walk& f) {
  double a = 0.0;
  for (auto [e, tail] : f.darts) {
    vid head = w.other_end(e, tail);
    const vec2 p = *w.pos(tail), q = *w.pos(head);
    a += p.x * q.y - q.x * p.y;
  }
  return a;
}

// Facial cycles of an embedded window plus which face is the unbounded one.
// All cycles (outer included) are listed in `basis`; callers picking the
// finite faces drop `outer_index`.
struct facial_basis {
  two_basis basis;
  std::vector<face_walk> faces;  // parallel to basis.cycles
  int outer_index = kNone;
};

// Requires every face walk to be a simple cycle — i.e. the (component of the)
// window is 2-connected with >= 2 edges.  Planarity of the rotation is checked
// through Euler's formula; anything else is some higher-genus rotation.
inline facial_basis facial_cycles(const window& w, const rotation_system& rot) {
  facial_basis out;
  if (w.edge_count() == 0) return out;

  // Isolated vertices are tolerated; the edges must all live in one component.
  std::vector<int> label = w.component_labels();
  int edged = label[w.edges().front().u];
  int edged_vertices = 0;
  for (vid v = 0; v < w.vertex_count(); ++v)
    if (label[v] == edged && w.degree(v) > 0) ++edged_vertices;
  for (const auto& ed : w.edges())
    require(label[ed.u] == edged, errc::precondition_violated,
            "facial_cycles expects the edges in a single component");

  std::vector<face_walk> faces = trace_faces(w, rot);
  int euler_faces = w.edge_count() - edged_vertices + 2;
  require(static_cast<int>(faces.size()) == euler_faces, errc::non_planar_rotation,
          "rotation traces " + std::to_string(faces.size()) + " faces, planarity needs " +
              std::to_string(euler_faces));
  for (auto& f : faces) {
    require(f.simple, errc::precondition_violated,
            "a face walk repeats a vertex; decompose into blocks first");
    out.basis.cycles.push_back({f.edges});
    out.faces.push_back(std::move(f));
  }

  bool all_pos = true;
  for (vid v = 0; v < w.vertex_count(); ++v)
    if (w.degree(v) > 0 && !w.pos(v)) all_pos = false;
  if (all_pos) {
    double worst = 0.0;
    for (std::size_t i = 0; i < out.faces.size(); ++i) {
      double a = face_signed_area2(w, out.faces[i]);
      if (a < worst) {
        worst = a;
        out.outer_index = static_cast<int>(i);
      }
    }
  }
  if (out.outer_index == kNone) {
    // No geometry: take the longest walk, least first-edge id on ties.
    std::size_t best = 0;
    for (std::size_t i = 1; i < out.faces.size(); ++i) {
      if (out.faces[i].darts.size() > out.faces[best].darts.size() ||
          (out.faces[i].darts.size() == out.faces[best].darts.size() &&
           out.faces[i].edges < out.faces[best].edges))
        best = i;
    }
    out.outer_index = static_cast<int>(best);
  }
  return out;
}

}  // namespace treeforge
