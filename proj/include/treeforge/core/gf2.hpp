#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "treeforge/core/window.hpp"

namespace treeforge {

// Dense GF(2) row vector over 64-bit words.
class gf2_vec {
 public:
  gf2_vec() = default;
  explicit gf2_vec(int bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

  void set(int i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void operator^=(const gf2_vec& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  }
  bool zero() const {
    for (std::uint64_t x : w_) if (x) return false;
    return true;
  }
  int lowest() const {  // index of least set bit, or -1
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<int>(i * 64) + __builtin_ctzll(w_[i]);
    return -1;
  }
  int bits() const { return bits_; }

 private:
  int bits_ = 0;
  std::vector<std::uint64_t> w_;
};

// Rank of a collection of GF(2) vectors by elimination on least set bit.
inline int gf2_rank(std::vector<gf2_vec> rows) {
  std::map<int, int> pivot;  // bit -> row index holding that pivot
  int rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (;;) {
      int low = rows[i].lowest();
      if (low < 0) break;
      auto it = pivot.find(low);
      if (it == pivot.end()) {
        pivot.emplace(low, static_cast<int>(i));
        ++rank;
        break;
      }
      rows[i] ^= rows[it->second];
    }
  }
  return rank;
}

// A cycle given by its edge-id set.  `validate_cycle` checks it is a single
// simple closed walk in w: every touched vertex has cycle-degree exactly 2 and
// the edges form one connected closed loop.
struct cycle_edges {
  std::vector<eid> edges;  // ascending edge ids
};

inline bool validate_cycle(const window& w, const cycle_edges& c, std::string* why = nullptr) {
  if (c.edges.size() < 2) {
    if (why) *why = "fewer than 2 edges";
    return false;
  }
  std::map<vid, std::vector<eid>> touch;
  for (eid e : c.edges) {
    if (!w.has_edge_id(e)) {
      if (why) *why = "edge " + std::to_string(e) + " not in window";
      return false;
    }
    const auto& ed = w.edge(e);
    touch[ed.u].push_back(e);
    touch[ed.v].push_back(e);
  }
  for (const auto& [v, es] : touch)
    if (es.size() != 2) {
      if (why) *why = "vertex " + std::to_string(v) + " has cycle-degree " + std::to_string(es.size());
      return false;
    }
  // Walk the loop from the least edge; must consume every edge.
  eid start = c.edges.front();
  vid at = w.edge(start).v;
  eid via = start;
  std::size_t used = 1;
  while (true) {
    const auto& es = touch[at];
    eid nxt = (es[0] == via) ? es[1] : es[0];
    if (nxt == start) break;
    via = nxt;
    at = w.other_end(nxt, at);
    ++used;
    if (used > c.edges.size()) break;
  }
  if (used != c.edges.size()) {
    if (why) *why = "edges do not form a single closed loop";
    return false;
  }
  return true;
}

// Maps edge ids to dense column indices for GF(2) work over a fixed window.
class edge_space {
 public:
  explicit edge_space(const window& w) {
    cols_ = 0;
    for (const auto& ed : w.edges()) index_[ed.id] = cols_++;
  }
  int columns() const { return cols_; }
  int col(eid e) const {
    auto it = index_.find(e);
    require(it != index_.end(), errc::bad_params, "edge id outside edge space");
    return it->second;
  }
  gf2_vec vec(const std::vector<eid>& edges) const {
    gf2_vec v(cols_);
    for (eid e : edges) v.set(col(e));
    return v;
  }

 private:
  std::map<eid, int> index_;
  int cols_ = 0;
};

// dim of the GF(2) cycle space: |E| - |V| + #components.
inline int cycle_space_rank(const window& w) {
  return w.edge_count() - w.vertex_count() + w.component_count();
}

}  // namespace treeforge
