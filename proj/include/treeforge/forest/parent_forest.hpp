#pragma once

#include <string>
#include <vector>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"

namespace treeforge {

// Partial parent map on a window's vertices.  A vertex is a member if it has a
// parent or was declared a root; forward orbits follow parents and must end in
// roots.  Layer tags n(x) are optional bookkeeping from layered constructions.
class parent_forest {
 public:
  parent_forest() = default;
  explicit parent_forest(int n) : parent_(n, kNone), via_(n, kNone), layer_(n, kNone), member_(n, 0) {}

  int size() const { return static_cast<int>(parent_.size()); }

  void set_parent(vid x, vid p, eid via, int layer_tag = kNone) {
    parent_[x] = p;
    via_[x] = via;
    layer_[x] = layer_tag;
    member_[x] = 1;
    member_[p] = 1;
  }
  void declare_root(vid x, int layer_tag = kNone) {
    member_[x] = 1;
    if (layer_tag != kNone) layer_[x] = layer_tag;
  }
  void clear_parent(vid x) {  // x stays a member (becomes a root)
    parent_[x] = kNone;
    via_[x] = kNone;
  }

  bool member(vid x) const { return member_[x]; }
  bool has_parent(vid x) const { return parent_[x] != kNone; }
  vid parent(vid x) const { return parent_[x]; }
  eid via(vid x) const { return via_[x]; }
  int layer(vid x) const { return layer_[x]; }
  void set_layer(vid x, int tag) { layer_[x] = tag; }

  std::vector<vid> roots() const {
    std::vector<vid> out;
    for (vid v = 0; v < size(); ++v)
      if (member_[v] && parent_[v] == kNone) out.push_back(v);
    return out;
  }
  std::vector<eid> edge_set() const {
    std::vector<eid> out;
    for (vid v = 0; v < size(); ++v)
      if (via_[v] != kNone) out.push_back(via_[v]);
    return out;
  }
  int member_count() const {
    int c = 0;
    for (char m : member_) c += m;
    return c;
  }

 private:
  std::vector<vid> parent_;
  std::vector<eid> via_;
  std::vector<int> layer_;
  std::vector<char> member_;
};

struct forest_check {
  bool ok = true;
  std::string reason;
};

inline forest_check forest_fail(const std::string& r) { return {false, r}; }

// Invariant suite shared by every forest-producing operation:
//   (a) each parent step uses a real window edge;
//   (b) no directed cycles (forward orbits terminate);
//   (c) in components that reach the window boundary, roots sit on the boundary;
//   (d) optionally, every interior vertex of those components is covered
//       (spanning; boundary stubs no orbit passes through may stay outside);
//   (e) layer tags, where present, never decrease along an orbit.
inline forest_check validate_forest(const window& w, const parent_forest& f, bool require_spanning) {
  if (f.size() != w.vertex_count()) return forest_fail("forest sized for a different window");

  for (vid v = 0; v < f.size(); ++v) {
    if (!f.has_parent(v)) continue;
    if (f.via(v) == kNone || !w.has_edge_id(f.via(v))) return forest_fail("parent step without a window edge");
    const auto& ed = w.edge(f.via(v));
    if (std::minmax(ed.u, ed.v) != std::minmax(v, f.parent(v)))
      return forest_fail("edge " + std::to_string(f.via(v)) + " does not join " + std::to_string(v) +
                         " and its parent");
  }

  // Acyclicity by orbit-walking with tricolor marks.
  std::vector<char> state(f.size(), 0);  // 0 fresh, 1 in progress, 2 done
  for (vid s = 0; s < f.size(); ++s) {
    if (state[s]) continue;
    std::vector<vid> trail;
    vid at = s;
    while (at != kNone && state[at] == 0) {
      state[at] = 1;
      trail.push_back(at);
      at = f.parent(at);
    }
    if (at != kNone && state[at] == 1)
      return forest_fail("directed cycle through vertex " + std::to_string(at));
    for (vid v : trail) state[v] = 2;
  }

  std::vector<int> label = w.component_labels();
  int comps = w.component_count();
  std::vector<char> reaches(comps, 0);
  for (vid v = 0; v < w.vertex_count(); ++v)
    if (w.boundary(v)) reaches[label[v]] = 1;

  for (vid v = 0; v < f.size(); ++v) {
    if (!reaches[label[v]]) continue;
    if (f.member(v) && !f.has_parent(v) && !w.boundary(v))
      return forest_fail("root " + std::to_string(v) + " is interior in a boundary-reaching component");
    if (require_spanning && !f.member(v) && !w.boundary(v))
      return forest_fail("vertex " + std::to_string(v) + " is uncovered in a boundary-reaching component");
  }

  for (vid v = 0; v < f.size(); ++v)
    if (f.has_parent(v) && f.layer(v) != kNone && f.layer(f.parent(v)) != kNone &&
        f.layer(f.parent(v)) < f.layer(v))
      return forest_fail("layer tag decreases from " + std::to_string(v) + " to its parent");

  return {};
}

}  // namespace treeforge
