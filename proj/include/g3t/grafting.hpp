#pragma once
//
// Grafting: an invalid forward-to-reverse edge (v_s, v_t) is replaced by the
// best two-edge detour v_s -> v' -> v_t through a common RGG neighbour.

#include <optional>
#include <span>
#include <vector>

#include "g3t/planner_state.hpp"

namespace g3t {

struct EdgePair {
    VertexId via = kNoVertex;
    VertexId source = kNoVertex;
    VertexId target = kNoVertex;
    double key_cost = 0.0;    ///< ||v_s - v'|| + ||v' - v_t||
    double key_effort = 0.0;  ///< lazy-check points on both legs
};

/// Strict weak order by (key_cost, key_effort, via).
[[nodiscard]] bool edge_pair_less(const EdgePair& a, const EdgePair& b) noexcept;

/// Lexicographic minimum; throws EmptyQueue on empty input.
[[nodiscard]] EdgePair best_edge_pair(std::span<const EdgePair> candidates);

/// Every common neighbour of (s, t) within r as an edge pair, in key order.
[[nodiscard]] std::vector<EdgePair> edge_pairs(PlannerState& state, VertexId s, VertexId t, double r);

/// Tries candidates in key order: lazy check on both legs, then exact checks.
/// The first fully valid pair is inserted into the forward tree and returned.
/// Returns empty when no candidate survives or the check budget runs out.
/// Never touches the reverse tree.
std::optional<EdgePair> graft(PlannerState& state, VertexId s, VertexId t, double r);

}  // namespace g3t
