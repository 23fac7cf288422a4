#pragma once

#include <stdexcept>
#include <string>

namespace treeforge {

// Hard precondition failures surface as exceptions; soft verdicts
// (validation reports, failure certificates) are ordinary return values.
enum class errc {
  bad_params,
  center_on_boundary,
  degree_bound_violated,
  non_planar_rotation,
  invalid_basis,
  unknown_dual_edge,
  precondition_violated,
  cyclic_input,
  condition4_violated,
  no_escape,
  a_misses_component,
  not_one_ended,
  not_line_forest,
  two_ended_obstruction,
  too_large,
  budget_exceeded,
  degenerate_sites,
  not_hyperbolic,
  malformed_complex,
  forest_not_spanning,
  not_saturated,
  stuck_no_free_pair,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::bad_params:            return "BadParams";
    case errc::center_on_boundary:    return "CenterOnBoundary";
    case errc::degree_bound_violated: return "DegreeBoundViolated";
    case errc::non_planar_rotation:   return "NonPlanarRotation";
    case errc::invalid_basis:         return "InvalidBasis";
    case errc::unknown_dual_edge:     return "UnknownDualEdge";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::cyclic_input:          return "CyclicInput";
    case errc::condition4_violated:   return "Condition4Violated";
    case errc::no_escape:             return "NoEscape";
    case errc::a_misses_component:    return "AMissesComponent";
    case errc::not_one_ended:         return "NotOneEnded";
    case errc::not_line_forest:       return "NotLineForest";
    case errc::two_ended_obstruction: return "TwoEndedObstruction";
    case errc::too_large:             return "TooLarge";
    case errc::budget_exceeded:       return "BudgetExceeded";
    case errc::degenerate_sites:      return "DegenerateSites";
    case errc::not_hyperbolic:        return "NotHyperbolic";
    case errc::malformed_complex:     return "MalformedComplex";
    case errc::forest_not_spanning:   return "ForestNotSpanning";
    case errc::not_saturated:         return "NotSaturated";
    case errc::stuck_no_free_pair:    return "StuckNoFreePair";
  }
  return "?";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace treeforge
