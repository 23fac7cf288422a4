#pragma once

#include <map>
#include <string>
#include <vector>

#include "treeforge/core/gf2.hpp"
#include "treeforge/core/window.hpp"

namespace treeforge {

// A candidate 2-basis: simple cycles, each edge in at most two of them,
// jointly generating the GF(2) cycle space of the window.
struct two_basis {
  std::vector<cycle_edges> cycles;
};

struct basis_report {
  bool valid = false;
  std::string reason;
  int bad_cycle = kNone;        // index of a non-simple entry, if any
  eid overloaded_edge = kNone;  // least edge id lying in > 2 cycles, if any
  int rank = 0;
  int expected_rank = 0;
};

inline basis_report validate_two_basis(const window& w, const two_basis& b) {
  basis_report rep;
  rep.expected_rank = cycle_space_rank(w);

  for (std::size_t i = 0; i < b.cycles.size(); ++i) {
    std::string why;
    if (!validate_cycle(w, b.cycles[i], &why)) {
      rep.bad_cycle = static_cast<int>(i);
      rep.reason = "cycle " + std::to_string(i) + " is not a simple cycle: " + why;
      return rep;
    }
  }

  std::map<eid, int> mult;
  for (const auto& c : b.cycles)
    for (eid e : c.edges) ++mult[e];
  for (const auto& [e, m] : mult)
    if (m > 2) {
      rep.overloaded_edge = e;
      rep.reason = "edge " + std::to_string(e) + " lies in " + std::to_string(m) + " cycles";
      return rep;
    }

  edge_space es(w);
  std::vector<gf2_vec> rows;
  rows.reserve(b.cycles.size());
  for (const auto& c : b.cycles) rows.push_back(es.vec(c.edges));
  rep.rank = gf2_rank(rows);
  if (rep.rank != rep.expected_rank) {
    rep.reason = "basis spans rank " + std::to_string(rep.rank) + " of " +
                 std::to_string(rep.expected_rank);
    return rep;
  }
  rep.valid = true;
  return rep;
}

}  // namespace treeforge
